"""Global constants for starcoef"""
import os

# Series arithmetic
DEFAULT_ORDER = 24
MAX_ORDER = 40
COEFF_GUARD = 1e14

# Tolerances
DEFAULT_REL_TOL = 1e-8
DEFAULT_ABS_FLOOR = 1e-12
INTERVAL_SNAP = 1e-12
ATOM_TOL = 1e-14

# Starlikeness certificate
MARGIN_RADII = (0.3, 0.6, 0.9)
MARGIN_MAX_RADIUS = 0.99
MARGIN_POINTS_PER_CIRCLE = 64

# Sampler: number of Herglotz atoms is drawn uniformly from this range
MIN_ATOMS = 1
MAX_ATOMS = 6

# Limits of the Monte Carlo bound checks
LEMMA2_N_MAX = 8
SAMPLE_N_MAX = 12

# Extremal search
SEARCH_INITIAL_STEP = 0.5
SEARCH_MIN_STEP = 1e-4
SEARCH_STALL_LIMIT = 40

DATA_DIR = "/usr/share/starcoef"
SUITES_INI = 'starcoef.ini'

DATA_FILE_SEARCH_PATH = [os.path.abspath(os.path.dirname(__file__) + "/../data")]
DATA_FILE_SEARCH_PATH.append(DATA_DIR)
try:
    try:
        import importlib_resources
    except ImportError:
        import importlib.resources as importlib_resources
    DATA_FILE_SEARCH_PATH.append(str(importlib_resources.files("starcoef.data")))
except (ImportError, AttributeError):
    pass

TABLE_COLUMNS = ['n', 'alpha', 'k', 'regime', 'bound', 'sharp', 'extremal']
JUMP_COLUMNS = ['n', 'alpha', 'left_regime', 'right_regime', 'jump']
LOEWNER_COLUMNS = ['n', 'bound']
REPORT_COLUMNS = ['suite', 'name', 'n', 'alpha', 'observed', 'bound', 'ratio', 'pass']
FLOAT_FORMAT = '%.17g'

TABLES = ['jumps', 'klz', 'lemma2', 'loewner', 'thm1', 'thm2', 'thm3']
SUITES = ['bounds', 'jabotinsky', 'lemma1', 'roundtrip', 'sharpness']
TASKS = ['search', 'sharp', 'table', 'verify']
FORMATS = ['csv', 'json']
SEARCH_TARGETS = ['thm1', 'thm3']

DEFAULT_RUNOPTS = {
    'order': DEFAULT_ORDER,
    'rel_tol': DEFAULT_REL_TOL,
    'abs_floor': DEFAULT_ABS_FLOOR,
    'seed': 0,
    'alpha_step': 0.01,
    'n_max': 12,
    'format': 'csv',
    'out': '-',
    'n': None,
    'alpha': None,
    'budget': 2000,
    'target': 'thm1',
    'suites_ini': None,
}
