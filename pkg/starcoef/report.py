"""Run configuration, bound tables and CSV/JSON rendering"""
import csv
import io
import json
import logging
import sys
from typing import Dict, List, Tuple

from . import constants
from . import bounds
from .error import ConfigErrors, UsageError
from .utils import alpha_grid, atomic_unslurp, finite_or_none, format_float
from .verifier import Tolerance
from .version import __version__

log = logging.getLogger(__name__)

SEARCH_COLUMNS = ['target', 'n', 'alpha', 'regime', 'bound', 'best_ratio', 'baseline_ratio',
                  'evaluations', 'atoms']


class RunConfig(object):
    """The options of one command, defaults from constants.DEFAULT_RUNOPTS"""
    def __init__(self, **overrides):
        opts = constants.DEFAULT_RUNOPTS.copy()
        for key, value in overrides.items():
            if key not in opts:
                raise KeyError("unknown run option %r" % key)
            if value is not None:
                opts[key] = value
        self.order = opts['order']
        self.rel_tol = opts['rel_tol']
        self.abs_floor = opts['abs_floor']
        self.seed = opts['seed']
        self.alpha_step = opts['alpha_step']
        self.n_max = opts['n_max']
        self.format = opts['format']
        self.out = opts['out']
        self.n = opts['n']
        self.alpha = opts['alpha']
        self.budget = opts['budget']
        self.target = opts['target']
        self.suites_ini = opts['suites_ini']

    @property
    def tolerance(self) -> Tolerance:
        return Tolerance(self.rel_tol, self.abs_floor)

    def validate(self, task=None):
        """Raise ConfigErrors listing every violated constraint"""
        errors = []
        if not 0 < self.alpha_step <= 0.25:
            errors.append("alpha step must satisfy 0 < step <= 0.25, got %r" % self.alpha_step)
        if not 2 <= self.n_max <= 20:
            errors.append("n_max must satisfy 2 <= n_max <= 20, got %r" % self.n_max)
        if not 4 <= self.order <= constants.MAX_ORDER:
            errors.append("order must satisfy 4 <= order <= %d, got %r"
                          % (constants.MAX_ORDER, self.order))
        if not self.rel_tol > 0:
            errors.append("tolerance must be positive, got %r" % self.rel_tol)
        if not self.abs_floor >= 0:
            errors.append("absolute floor must be nonnegative, got %r" % self.abs_floor)
        if self.format not in constants.FORMATS:
            errors.append("format must be one of %s, got %r"
                          % (", ".join(constants.FORMATS), self.format))
        if task == 'search':
            if self.budget < 1:
                errors.append("budget must be at least 1, got %r" % self.budget)
            if self.target not in constants.SEARCH_TARGETS:
                errors.append("search target must be one of %s, got %r"
                              % (", ".join(constants.SEARCH_TARGETS), self.target))
        if task in ('search', 'sharp'):
            if self.n is None:
                errors.append("--n is required for %s" % task)
            if self.alpha is None:
                errors.append("--alpha is required for %s" % task)
        if errors:
            raise ConfigErrors("Run options", errors)

    def echo(self) -> Dict:
        return {
            'order': self.order,
            'rel_tol': self.rel_tol,
            'abs_floor': self.abs_floor,
            'seed': self.seed,
            'alpha_step': self.alpha_step,
            'n_max': self.n_max,
        }


#
# Tables
#


def _bound_row(n, alpha, result):
    return [n, alpha, result.interval_k, str(result.regime), result.value, str(result.sharp),
            str(result.extremal) if result.extremal else ""]


def get_table(partial) -> str:
    """The table whose name starts with `partial`"""
    matching = [x for x in constants.TABLES if x.startswith(partial)]
    if partial in constants.TABLES:
        return partial
    if len(matching) > 1:
        raise UsageError("Ambiguous table. Matching tables are: " + ", ".join(matching))
    elif not matching:
        raise UsageError("No table named %r. Valid tables are: %s"
                         % (partial, ", ".join(constants.TABLES)))
    return matching[0]


def jump_rows(config) -> Tuple[List[str], List[list]]:
    """The thm1 formula change at each interior interval boundary, n <= n_max"""
    rows = []
    for n in range(2, config.n_max + 1):
        for jump in bounds.regime_jumps(n):
            rows.append([n, jump.alpha, str(jump.left_regime), str(jump.right_regime), jump.jump])
    return list(constants.JUMP_COLUMNS), rows


def table_rows(which, config) -> Tuple[List[str], List[list]]:
    """Columns and rows of a bound table over n and the alpha grid"""
    if which == 'jumps':
        return jump_rows(config)
    if which == 'loewner':
        return list(constants.LOEWNER_COLUMNS), [[n, bounds.loewner_result(n).value]
                                                 for n in range(2, config.n_max + 1)]
    alphas = alpha_grid(config.alpha_step)
    columns = list(constants.TABLE_COLUMNS)
    rows = []
    if which == 'thm1':
        for n in range(2, config.n_max + 1):
            for alpha in alphas:
                rows.append(_bound_row(n, alpha, bounds.thm1_bound(n, alpha)))
    elif which == 'thm2':
        for m in range(0, config.n_max + 1):
            for alpha in alphas:
                rows.append(_bound_row(m, alpha, bounds.thm2_bound(m, alpha)))
    elif which == 'thm3':
        for n in range(0, config.n_max + 1):
            for alpha in alphas:
                rows.append(_bound_row(n, alpha, bounds.thm3_bound(n, alpha)))
    elif which == 'lemma2':
        columns.append('g')
        for n in range(1, config.n_max + 1):
            for alpha in alphas:
                for g in range(1, n + 2):
                    rows.append(_bound_row(n, alpha, bounds.lemma2_bound(n, g, alpha)) + [g])
    elif which == 'klz':
        for alpha in alphas:
            a2, a3 = bounds.klz_bound_results(alpha)
            rows.append(_bound_row(2, alpha, a2))
            rows.append(_bound_row(3, alpha, a3))
    else:
        raise UsageError("No table named %r" % which)
    log.debug("table %s: %d rows", which, len(rows))
    return columns, rows


def table_extra(which, config) -> Dict:
    """Extra JSON keys for a table: thm1 carries its regime jumps"""
    if which != 'thm1':
        return {}
    columns, rows = jump_rows(config)
    return {'jumps': [{col: _json_cell(v) for col, v in zip(columns, row)} for row in rows]}


def report_rows(report) -> Tuple[List[str], List[list]]:
    rows = []
    for c in report.checks:
        rows.append([c.suite, c.name, c.n, c.alpha, c.observed, c.bound, c.ratio, c.passed])
    return list(constants.REPORT_COLUMNS), rows


def search_rows(result, target, n, alpha, regime) -> Tuple[List[str], List[list]]:
    atoms = ";".join("%s:%s:%s" % (format_float(x.real), format_float(x.imag), format_float(lam))
                     for x, lam in result.best_spec.atoms)
    row = [target, n, alpha, str(regime), result.bound, result.best_ratio,
           result.baseline_ratio, result.evaluations, atoms]
    return list(SEARCH_COLUMNS), [row]


#
# Rendering
#


def _csv_cell(value):
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format_float(value)
    if value is None:
        return ""
    return str(value)


def _json_cell(value):
    if isinstance(value, float):
        return finite_or_none(value)
    return value


def render_csv(columns, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_csv_cell(v) for v in row])
    return buf.getvalue()


def render_json(columns, rows, config_echo, extra=None) -> str:
    doc = {
        'starcoef': __version__,
        'config': {k: _json_cell(v) for k, v in config_echo.items()},
        'rows': [{col: _json_cell(v) for col, v in zip(columns, row)} for row in rows],
    }
    if extra:
        doc.update(extra)
    return json.dumps(doc, indent=2, allow_nan=False) + "\n"


def render(columns, rows, config, extra=None) -> str:
    if config.format == 'json':
        return render_json(columns, rows, config.echo(), extra)
    return render_csv(columns, rows)


def write_output(text, out):
    """Write to stdout for '-', otherwise atomically to the named file"""
    if out == '-':
        sys.stdout.write(text)
        sys.stdout.flush()
    else:
        atomic_unslurp(out, text)
        log.info("Wrote %s", out)
