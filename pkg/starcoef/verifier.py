"""Checks of the coefficient bounds and identities on concrete functions.

Each check produces a `Check` row (observed value, bound, ratio, pass);
rows are collected into a `VerificationReport`. A bound row passes when
observed <= bound * (1 + rel_tol) + abs_floor; a sharpness row passes when
|observed - bound| <= rel_tol * bound + abs_floor.
"""
import logging
import math
from typing import Dict, List, NamedTuple, Optional, Tuple

import numpy as np

from . import constants
from .bounds import (lemma1_check, lemma1_scale, lemma2_bound,
                     thm1_bound, thm2_bound, thm3_bound)
from .error import ConfigErrors, Error, OrderExhausted, PrecisionErosion, WrongRegime
from .series import (PowerSeries, compose, inverse_power_coeffs, neg_power_coeffs,
                     powers_of_inverse, revert)
from .utils import IniConfiguration, check_alpha
from .zoo import (KoebeAlpha, KoebeAlphaN, StarlikeSpec, koebe_alpha, koebe_alpha_n,
                  random_atoms, sample_starlike, sigma_inverse_coeffs, theorem2_extremal,
                  to_sigma)

log = logging.getLogger(__name__)


class Tolerance(NamedTuple):
    rel_tol: float = constants.DEFAULT_REL_TOL
    abs_floor: float = constants.DEFAULT_ABS_FLOOR

    def within_bound(self, observed, bound) -> bool:
        """observed <= bound (1 + rel_tol) + abs_floor; NaN never passes"""
        return bool(observed <= bound * (1 + self.rel_tol) + self.abs_floor)

    def matches(self, observed, expected) -> bool:
        return bool(abs(observed - expected) <= self.rel_tol * abs(expected) + self.abs_floor)


class Check(object):
    __slots__ = ('suite', 'name', 'n', 'alpha', 'observed', 'bound', 'ratio', 'passed', 'seed')

    def __init__(self, suite, name, n, alpha, observed, bound, passed, seed=None):
        self.suite = suite
        self.name = name
        self.n = n
        self.alpha = alpha
        self.observed = float(observed)
        self.bound = float(bound)
        if self.bound > 0:
            self.ratio = self.observed / self.bound
        else:
            self.ratio = None
        self.passed = bool(passed)
        self.seed = seed

    def sort_key(self):
        return (self.name, self.n, self.alpha, -1 if self.seed is None else self.seed)

    def __repr__(self):
        return "Check(%r, %r, n=%r, alpha=%r, observed=%r, bound=%r, passed=%r)" % (
            self.suite, self.name, self.n, self.alpha, self.observed, self.bound, self.passed)


class VerificationReport(object):
    """A list of check rows plus the configuration they were produced with"""
    def __init__(self, checks=None, seed=None, order=None, tolerance=None):
        # type: (Optional[List[Check]], Optional[int], Optional[int], Optional[Tolerance]) -> None
        self.checks = list(checks or [])
        self.seed = seed
        self.order = order
        self.tolerance = tolerance or Tolerance()

    def __len__(self):
        return len(self.checks)

    def __iter__(self):
        return iter(self.checks)

    def add(self, check):
        self.checks.append(check)

    def extend(self, checks):
        self.checks.extend(checks)

    @property
    def failures(self) -> List[Check]:
        return [c for c in self.checks if not c.passed]

    @property
    def passed(self) -> bool:
        return not self.failures

    @property
    def max_relative_excess(self) -> float:
        """Largest (observed - bound)/bound over all rows, or 0.0 when no row
        exceeds its bound. Rows with an undefined observed value count as
        infinite excess."""
        excess = 0.0
        for c in self.checks:
            if math.isnan(c.observed):
                return float("inf")
            if c.ratio is not None:
                excess = max(excess, c.ratio - 1.0)
        return excess

    def merge(self, other):
        """A new report with the rows of both, sorted on (name, n, alpha, seed)"""
        merged = VerificationReport(self.checks + other.checks, self.seed, self.order,
                                    self.tolerance)
        merged.checks.sort(key=Check.sort_key)
        return merged

    def config_echo(self) -> Dict:
        return {
            'order': self.order,
            'seed': self.seed,
            'rel_tol': self.tolerance.rel_tol,
            'abs_floor': self.tolerance.abs_floor,
        }


def _bound_check(suite, name, n, alpha, observed, bound, tol, seed=None):
    return Check(suite, name, n, alpha, observed, bound, tol.within_bound(observed, bound), seed)


def _sharp_check(suite, name, n, alpha, observed, bound, tol, seed=None):
    return Check(suite, name, n, alpha, observed, bound, tol.matches(observed, bound), seed)


def _eroded_check(suite, name, n, alpha, err, seed=None):
    log.warning("%s: %s", name, err)
    return Check(suite, name, n, alpha, float("nan"), 0.0, False, seed)


def _relative_residual(residual, reference) -> float:
    scale = max(1.0, float(np.max(np.abs(reference))))
    return float(np.max(np.abs(residual))) / scale


#
# Identities
#


def verify_jabotinsky(f, p_set, N, tol=Tolerance(), alpha=None, seed=None) -> VerificationReport:
    """Compare (p/n) a_{-p}^{(-n)} against the coefficients of (f^-1)^p
    obtained by powering the reverted series, for every p in p_set and
    n <= N. One row per p, observed is the largest deviation relative to the
    largest coefficient."""
    needed = N - min(p_set) + 1
    if needed > f.order:
        raise OrderExhausted(needed, f.order)
    report = VerificationReport(seed=seed, order=f.order, tolerance=tol)
    for p in p_set:
        name = "jabotinsky p=%+d" % p
        try:
            via_identity = inverse_power_coeffs(f, p, N).unit.coeffs
            direct = powers_of_inverse(f, p, N).unit.coeffs
        except PrecisionErosion as err:
            report.add(_eroded_check("jabotinsky", name, N, alpha, err, seed))
            continue
        observed = _relative_residual(via_identity - direct, direct)
        report.add(_bound_check("jabotinsky", name, N, alpha, observed, tol.rel_tol, tol, seed))
    return report


def verify_roundtrip(f, N, tol=Tolerance(), alpha=None, seed=None) -> VerificationReport:
    """compose(f, revert(f, N)) and compose(revert(f, N), f) against w"""
    if N > f.order:
        raise OrderExhausted(N, f.order)
    report = VerificationReport(seed=seed, order=N, tolerance=tol)
    forward = f.series.truncate(N)
    try:
        inverse = revert(f, N)
        identity = PowerSeries.monomial(1, N).coeffs
        scale = np.concatenate([forward.coeffs, inverse.coeffs])
        for name, outer, inner in [("roundtrip f(finv)", forward, inverse),
                                   ("roundtrip finv(f)", inverse, forward)]:
            residual = compose(outer, inner).coeffs - identity
            observed = _relative_residual(residual, scale)
            report.add(_bound_check("roundtrip", name, N, alpha, observed, tol.rel_tol, tol, seed))
    except PrecisionErosion as err:
        report.add(_eroded_check("roundtrip", "roundtrip", N, alpha, err, seed))
    return report


def verify_lemma1(grid, tol=Tolerance()) -> VerificationReport:
    """Both sides of lemma1_check on every (n, alpha, g) of the grid;
    observed is |lhs - rhs| relative to the magnitude sum of the left terms"""
    report = VerificationReport(tolerance=tol)
    for n, alpha, g in grid:
        lhs, rhs = lemma1_check(n, alpha, g)
        scale = lemma1_scale(n, alpha, g)
        diff = abs(lhs - rhs)
        observed = diff / scale if scale > 0 else diff
        report.add(_bound_check("lemma1", "lemma1 g=%d" % g, n, alpha, observed, tol.rel_tol, tol))
    return report


#
# Bound compliance
#


def bound_checks_for_function(f, alpha, tol=Tolerance(), seed=None, suite="bounds") -> List[Check]:
    """Every bound row for one function: lemma2 for n <= 8, thm1 and thm3
    for n <= 12, thm2 for every available b_m"""
    checks = []
    N = f.order
    for n in range(1, constants.LEMMA2_N_MAX + 1):
        unit = neg_power_coeffs(f, n).unit
        for g in range(1, N):
            bound = lemma2_bound(n, g, alpha)
            checks.append(_bound_check(suite, "lemma2 g=%d" % g, n, alpha, abs(unit[g]),
                                       bound.value, tol, seed))
    n_top = min(N, constants.SAMPLE_N_MAX)
    inverse = revert(f, n_top)
    for n in range(2, n_top + 1):
        checks.append(_bound_check(suite, "thm1", n, alpha, abs(inverse[n]),
                                   thm1_bound(n, alpha).value, tol, seed))
    sigma = to_sigma(f)
    for m in range(sigma.order + 1):
        checks.append(_bound_check(suite, "thm2", m, alpha, abs(sigma[m]),
                                   thm2_bound(m, alpha).value, tol, seed))
    n_top = min(N - 2, constants.SAMPLE_N_MAX)
    sigma_inverse = sigma_inverse_coeffs(f, n_top)
    for n in range(n_top + 1):
        checks.append(_bound_check(suite, "thm3", n, alpha, abs(sigma_inverse[n]),
                                   thm3_bound(n, alpha).value, tol, seed))
    return checks


def verify_bounds_sample(alpha, count, N, seed, tol=Tolerance()) -> VerificationReport:
    """Check every bound on `count` random starlike functions drawn with
    seeds seed..seed+count-1. Every row is kept, tagged with its seed."""
    check_alpha(alpha)
    report = VerificationReport(seed=seed, order=N, tolerance=tol)
    for i in range(count):
        spec = sample_starlike(alpha, seed + i, N)
        try:
            checks = bound_checks_for_function(spec.realize(), alpha, tol, spec.seed)
        except PrecisionErosion as err:
            report.add(_eroded_check("bounds", "bounds sample", 0, alpha, err, spec.seed))
            continue
        report.extend(checks)
    log.debug("bounds alpha=%g: %d functions, %d rows, %d failures",
              alpha, count, len(report), len(report.failures))
    return report


#
# Sharpness
#


def target_coefficient(target, f, n, g=None) -> float:
    """|A_n| (thm1), |B_n| (thm3) or |a_{-n+g}^{(-n)}| (lemma2) of f"""
    if target == 'thm1':
        return abs(revert(f, n)[n])
    elif target == 'thm3':
        return abs(sigma_inverse_coeffs(f, n)[n])
    elif target == 'lemma2':
        return abs(neg_power_coeffs(f, n, g).unit[g])
    raise ValueError("unknown target %r" % target)


def target_bound(target, n, alpha, g=None):
    if target == 'thm1':
        return thm1_bound(n, alpha)
    elif target == 'thm3':
        return thm3_bound(n, alpha)
    elif target == 'lemma2':
        return lemma2_bound(n, g, alpha)
    raise ValueError("unknown target %r" % target)


def _working_order(N, n):
    return max(N, n + 2)


def candidate_ratios(target, n, alpha, N, g=None) -> List[Tuple[object, float, float]]:
    """(extremal, observed, ratio) for K_alpha and K_{alpha,j}, j = 2..n,
    sorted from the best ratio down"""
    bound = target_bound(target, n, alpha, g)
    order = _working_order(N, max(n, g or 0))
    candidates = [KoebeAlpha()] + [KoebeAlphaN(j) for j in range(2, n + 1)]
    results = []
    for extremal in candidates:
        observed = target_coefficient(target, extremal.build(alpha, order), n, g)
        results.append((extremal, observed, observed / bound.value if bound.value > 0 else 0.0))
    results.sort(key=lambda r: -r[2])
    return results


def _sharpness_rows(target, n, alpha, N, tol, g=None) -> Check:
    label = target if g is None else "%s g=%d" % (target, g)
    bound = target_bound(target, n, alpha, g)
    if bound.is_sharp:
        f = bound.extremal.build(alpha, _working_order(N, max(n, g or 0)))
        observed = target_coefficient(target, f, n, g)
        return _sharp_check("sharpness", "%s sharp %s" % (label, bound.extremal), n, alpha,
                            observed, bound.value, tol)
    extremal, observed, _ = candidate_ratios(target, n, alpha, N, g)[0]
    return _bound_check("sharpness", "%s open %s" % (label, extremal), n, alpha,
                        observed, bound.value, tol)


def verify_sharpness(n, alpha, N, tol=Tolerance()) -> VerificationReport:
    """Evaluate the named extremal functions at (n, alpha) and compare their
    coefficients against the bounds.

    Sharp regimes must be attained to within tolerance. Open regimes record
    the best of the candidate functions, which only has to respect the bound.
    """
    check_alpha(alpha)
    report = VerificationReport(order=N, tolerance=tol)
    try:
        if n >= 2:
            report.add(_sharpness_rows('thm1', n, alpha, N, tol))
        if n >= 1:
            for g in range(1, n + 2):
                report.add(_sharpness_rows('lemma2', n, alpha, N, tol, g))
        m_bound = thm2_bound(n, alpha)
        g_series = theorem2_extremal(n, alpha, max(N, n))
        report.add(_sharp_check("sharpness", "thm2 sharp %s" % m_bound.extremal, n, alpha,
                                abs(g_series[n]), m_bound.value, tol))
        report.add(_sharpness_rows('thm3', n, alpha, N, tol))
    except PrecisionErosion as err:
        report.add(_eroded_check("sharpness", "sharpness", n, alpha, err))
    return report


#
# Extremal search
#


def project_simplex(v) -> np.ndarray:
    """Euclidean projection of v onto {w : w >= 0, sum w = 1}"""
    v = np.asarray(v, dtype=float)
    u = np.sort(v)[::-1]
    css = np.cumsum(u)
    idx = np.arange(1, v.size + 1)
    rho = np.nonzero(u * idx > css - 1)[0][-1]
    theta = (css[rho] - 1) / (rho + 1.0)
    w = np.maximum(v - theta, 0.0)
    return w / w.sum()


class SearchResult(NamedTuple):
    best_ratio: float
    best_spec: StarlikeSpec
    bound: float
    evaluations: int
    baseline_ratio: float
    discarded: int = 0

    @property
    def found_candidate(self) -> bool:
        return self.discarded < self.evaluations


def search_extremal(n, alpha, budget, seed, N, target='thm1') -> SearchResult:
    """Random-restart hill climb over atom angles and weights maximizing
    |coefficient|/bound in an open regime.

    One coordinate is perturbed per step; weights are projected back onto
    the simplex. The step shrinks after each rejected move and a fresh
    random draw is started after SEARCH_STALL_LIMIT rejections in a row.
    `budget` is the number of objective evaluations.
    """
    check_alpha(alpha)
    if budget < 1:
        raise ConfigErrors("search", ["budget must be at least 1, got %r" % budget])
    bound = target_bound(target, n, alpha)
    if bound.is_sharp:
        raise WrongRegime(target, n, alpha, bound.regime)
    order = _working_order(N, n)
    rng = np.random.default_rng(seed)
    evaluations = 0
    discarded = 0
    best_ratio, best_spec = float("-inf"), None

    def objective(angles, weights):
        nonlocal evaluations, discarded
        evaluations += 1
        atoms = [(complex(np.exp(1j * t)), float(w)) for t, w in zip(angles, weights)]
        spec = StarlikeSpec(alpha, atoms, order, seed)
        try:
            ratio = target_coefficient(target, spec.realize(), n) / bound.value
        except PrecisionErosion as err:
            log.debug("search: discarding candidate: %s", err)
            discarded += 1
            ratio = -1.0
        return ratio, spec

    while evaluations < budget:
        atoms = random_atoms(rng)
        angles = np.angle([x for x, _ in atoms])
        weights = np.array([lam for _, lam in atoms])
        current, spec = objective(angles, weights)
        if current > best_ratio:
            best_ratio, best_spec = current, spec
        step = constants.SEARCH_INITIAL_STEP
        stall = 0
        while (evaluations < budget and step >= constants.SEARCH_MIN_STEP
               and stall < constants.SEARCH_STALL_LIMIT):
            trial_angles, trial_weights = angles.copy(), weights.copy()
            coord = int(rng.integers(2 * len(angles)))
            delta = step * (1.0 if rng.random() < 0.5 else -1.0)
            if coord < len(angles):
                trial_angles[coord] += delta
            else:
                trial_weights[coord - len(angles)] += delta
                trial_weights = project_simplex(trial_weights)
            ratio, spec = objective(trial_angles, trial_weights)
            if ratio > current:
                angles, weights, current = trial_angles, trial_weights, ratio
                stall = 0
                step = min(step * 1.25, constants.SEARCH_INITIAL_STEP)
                if current > best_ratio:
                    best_ratio, best_spec = current, spec
            else:
                stall += 1
                step *= 0.8

    baseline = candidate_ratios(target, n, alpha, N)
    baseline_ratio = [r for e, _, r in baseline if isinstance(e, KoebeAlpha)][0]
    log.info("search %s n=%d alpha=%g: best ratio %.12g after %d evaluations (K_alpha %.12g)",
             target, n, alpha, best_ratio, evaluations, baseline_ratio)
    if discarded == evaluations:
        log.warning("search %s n=%d alpha=%g: none of the %d candidates could be evaluated",
                    target, n, alpha, evaluations)
    return SearchResult(best_ratio, best_spec, bound.value, evaluations, baseline_ratio,
                        discarded)


#
# Suites
#


SUITE_KEYS = {
    'bounds': ['alphas', 'count'],
    'jabotinsky': ['alphas', 'count', 'powers', 'n_max'],
    'lemma1': ['n', 'alphas', 'g'],
    'roundtrip': ['alphas', 'count', 'order'],
    'sharpness': ['n', 'alphas'],
}


class SuiteSettings(object):
    """The grid of one verification suite"""
    def __init__(self, name, alphas, count=0, ns=None, gs=None, powers=None, n_max=0, order=0):
        self.name = name
        self.alphas = alphas
        self.count = count
        self.ns = ns or []
        self.gs = gs or []
        self.powers = powers or []
        self.n_max = n_max
        self.order = order


class SuiteConfiguration(IniConfiguration):
    def __init__(self, inifiles):
        super().__init__(inifiles)
        suite_sections = [sec for sec in self.cp.sections() if sec.startswith('suite ')]
        self.suites = self.parse_suites(suite_sections)
        missing = [name for name in constants.SUITES if name not in self.suites]
        if missing:
            raise ConfigErrors("Suites", ["no section for suite %r" % name for name in missing])

    def parse_suites(self, suite_sections):
        # type: (List[str]) -> Dict[str, SuiteSettings]
        """Parse the 'suite X' sections of the config file

        A section called "suite X" configures the verification suite "X".
        Depending on the suite, the attributes are:
        - alphas: list of orders alpha to run on (all suites)
        - count: number of random functions per alpha (bounds), or in total
          (jabotinsky, roundtrip)
        - n, g: integer lists or ranges 'a..b' (lemma1, sharpness)
        - powers: nonzero integers p (jabotinsky)
        - n_max: highest coefficient index compared (jabotinsky)
        - order: truncation order of the functions (roundtrip)
        Sections for unknown suites are ignored.
        """
        suites = {}
        for sec in suite_sections:
            name = sec.split(maxsplit=1)[1]
            if name not in SUITE_KEYS:
                log.debug("ignoring section %r", sec)
                continue
            keys = SUITE_KEYS[name]
            errors = []
            alphas = self.config_get_numbers(sec, 'alphas', errors)
            for alpha in alphas:
                if not 0 <= alpha < 1:
                    errors.append("alpha %r outside [0, 1)" % alpha)
            settings = SuiteSettings(name, alphas)
            if 'count' in keys:
                settings.count = self.config_get_int(sec, 'count', errors)
            if 'n' in keys:
                settings.ns = self.config_get_numbers(sec, 'n', errors, convert=int)
            if 'g' in keys:
                settings.gs = self.config_get_numbers(sec, 'g', errors, convert=int)
            if 'powers' in keys:
                settings.powers = self.config_get_numbers(sec, 'powers', errors, convert=int)
                if 0 in settings.powers:
                    errors.append("'powers' must not contain 0")
            if 'n_max' in keys:
                settings.n_max = self.config_get_int(sec, 'n_max', errors)
            if 'order' in keys:
                settings.order = self.config_get_int(sec, 'order', errors)
            if errors:
                raise ConfigErrors("Section %r" % sec, errors)
            suites[name] = settings
        return suites


def _sampled_alpha(settings, i):
    return settings.alphas[i % len(settings.alphas)]


def run_suite(name, settings, order, seed, tol=Tolerance()) -> VerificationReport:
    """Run one named suite on the grid in `settings`"""
    log.info("Running suite %s", name)
    report = VerificationReport(seed=seed, order=order, tolerance=tol)
    if name == 'bounds':
        for i, alpha in enumerate(settings.alphas):
            report.extend(verify_bounds_sample(alpha, settings.count, order,
                                               seed + i * settings.count, tol))
    elif name == 'sharpness':
        for n in settings.ns:
            for alpha in settings.alphas:
                report.extend(verify_sharpness(n, alpha, order, tol))
    elif name == 'lemma1':
        grid = [(n, alpha, g) for n in settings.ns for alpha in settings.alphas for g in settings.gs]
        report.extend(verify_lemma1(grid, tol))
    elif name == 'jabotinsky':
        f_order = settings.n_max - min(settings.powers) + 1
        for i in range(settings.count):
            alpha = _sampled_alpha(settings, i)
            spec = sample_starlike(alpha, seed + i, f_order)
            try:
                f = spec.realize()
            except PrecisionErosion as err:
                report.add(_eroded_check(name, "jabotinsky", settings.n_max, alpha, err, spec.seed))
                continue
            report.extend(verify_jabotinsky(f, settings.powers, settings.n_max, tol,
                                            alpha, spec.seed))
    elif name == 'roundtrip':
        N = settings.order
        for alpha in settings.alphas:
            for f in (koebe_alpha(alpha, N), koebe_alpha_n(alpha, 2, N)):
                report.extend(verify_roundtrip(f, N, tol, alpha))
        for i in range(settings.count):
            alpha = _sampled_alpha(settings, i)
            spec = sample_starlike(alpha, seed + i, N)
            try:
                f = spec.realize()
            except PrecisionErosion as err:
                report.add(_eroded_check(name, "roundtrip", N, alpha, err, spec.seed))
                continue
            report.extend(verify_roundtrip(f, N, tol, alpha, spec.seed))
    else:
        raise Error("unknown suite %r" % name)
    log.info("Suite %s: %d checks, %d failed", name, len(report), len(report.failures))
    return report


def run_suites(names, suite_config, order, seed, tol=Tolerance()) -> VerificationReport:
    report = VerificationReport(seed=seed, order=order, tolerance=tol)
    for name in names:
        report.extend(run_suite(name, suite_config.suites[name], order, seed, tol).checks)
    return report
