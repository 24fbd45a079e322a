import atexit
import os
import shutil
import subprocess
import sys
import tempfile

import numpy as np
from hypothesis import strategies as st

from starcoef import constants as C

from typing import List

TOP_DIR = os.path.abspath(os.path.dirname(__file__) + "/../..")
SUITES_INI = os.path.join(TOP_DIR, "data", C.SUITES_INI)


def go_to_temp_dir():
    working_dir = tempfile.mkdtemp(prefix="starcoef-test-")
    atexit.register(shutil.rmtree, working_dir, ignore_errors=True, onerror=None)
    os.chdir(working_dir)
    return working_dir


def run_starcoef(cmd_args):
    # type: (List[str]) -> subprocess.CompletedProcess
    """Run the command-line driver in a subprocess; stdout and stderr are
    captured as text"""
    env = dict(os.environ)
    env['PYTHONPATH'] = os.pathsep.join(filter(None, [TOP_DIR, env.get('PYTHONPATH')]))
    return subprocess.run([sys.executable, "-m", "starcoef.main"] + cmd_args,
                          stdout=subprocess.PIPE, stderr=subprocess.PIPE,
                          universal_newlines=True, env=env, check=False)


def revert_by_substitution(coeffs, N):
    """Coefficients of the inverse of z + a_2 z^2 + ... found by solving
    f(g(w)) = w one degree at a time"""
    a = np.zeros(N + 1, dtype=complex)
    a[:min(len(coeffs), N + 1)] = coeffs[:N + 1]
    g = np.zeros(N + 1, dtype=complex)
    g[1] = 1.0
    for n in range(2, N + 1):
        total = 0j
        power = g.copy()
        for k in range(2, n + 1):
            power = np.convolve(power, g)[:N + 1]
            total += a[k] * power[n]
        g[n] = -total
    return g


def rel_close(observed, expected, rel, floor=0.0):
    return abs(observed - expected) <= rel * abs(expected) + floor


def max_rel_diff(observed, expected):
    observed = np.asarray(observed)
    expected = np.asarray(expected)
    scale = max(1.0, float(np.max(np.abs(expected))))
    return float(np.max(np.abs(observed - expected))) / scale


alphas = st.floats(min_value=0.0, max_value=0.999, allow_nan=False, allow_infinity=False)

small_coeffs = st.lists(st.floats(min_value=-0.25, max_value=0.25, allow_nan=False,
                                  allow_infinity=False),
                        min_size=1, max_size=8)
