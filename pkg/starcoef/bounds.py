"""Closed-form coefficient bounds for starlike functions of order alpha and
their inverses.

Every gamma quotient Gamma(c+1)/(Gamma(m+1) Gamma(c+1-m)) is evaluated as the
telescoping product prod_{j<m} (c - j)/(j + 1), which has no poles and no
cancellation for the arguments that occur here.

The order alpha selects a formula through the half-open intervals
I_k(n) = [k/n, (k+1)/n).
"""
import enum
import logging
import math
from typing import List, NamedTuple, Optional, Tuple

from . import constants
from .error import BadIndex
from .utils import check_alpha
from .zoo import Extremal, KoebeAlpha, KoebeAlphaN, SigmaExtremal

log = logging.getLogger(__name__)


class Regime(str, enum.Enum):
    """Which formula produced a bound"""
    L2_4 = "L2-4"
    L2_5 = "L2-5"
    L2_6 = "L2-6"
    T1A = "T1a"
    T1B = "T1b"
    T1C = "T1c"
    T2 = "T2"
    T3A = "T3a"
    T3B = "T3b"
    T3C = "T3c"
    KLZ_7 = "KLZ-7"
    KLZ_8 = "KLZ-8"
    KLZ_9 = "KLZ-9"
    LOEWNER = "Loewner"

    def __str__(self):
        return self.value


class Sharpness(str, enum.Enum):
    SHARP_KNOWN = "SharpKnown"
    OPEN = "Open"

    def __str__(self):
        return self.value


OPEN_REGIMES = frozenset([Regime.L2_5, Regime.T1B, Regime.T3B])


class BoundResult(object):
    """A bound value together with the formula and extremal that go with it"""
    __slots__ = ('value', 'regime', 'interval_k', 'sharp', 'extremal')

    def __init__(self, value, regime, interval_k, sharp, extremal=None):
        # type: (float, Regime, int, Sharpness, Optional[Extremal]) -> None
        if not value >= 0:
            raise BadIndex("bound value", value, "value >= 0")
        if sharp is Sharpness.SHARP_KNOWN and extremal is None:
            raise ValueError("a sharp bound needs an extremal function")
        self.value = value
        self.regime = regime
        self.interval_k = interval_k
        self.sharp = sharp
        self.extremal = extremal

    @property
    def is_sharp(self) -> bool:
        return self.sharp is Sharpness.SHARP_KNOWN

    def __repr__(self):
        return "BoundResult(%r, %s, k=%d, %s, %s)" % (
            self.value, self.regime, self.interval_k, self.sharp, self.extremal)


class RegimeJump(NamedTuple):
    alpha: float
    left_regime: Regime
    right_regime: Regime
    jump: float


def interval_index(alpha, n) -> int:
    """k such that alpha lies in [k/n, (k+1)/n).

    n*alpha within INTERVAL_SNAP of an integer is snapped onto it, so that
    roundoff at a boundary k/n never selects the lower interval.
    """
    check_alpha(alpha)
    if n < 1:
        raise BadIndex("n", n, "n >= 1")
    x = n * alpha
    nearest = round(x)
    if abs(x - nearest) <= constants.INTERVAL_SNAP:
        k = int(nearest)
    else:
        k = int(math.floor(x))
    return min(k, n - 1)


def gamma_ratio_product(c, m) -> float:
    """prod_{j=0}^{m-1} (c - j)/(j + 1), the generalized binomial C(c, m)"""
    if m < 0:
        raise BadIndex("m", m, "m >= 0")
    result = 1.0
    for j in range(m):
        result *= (c - j) / (j + 1)
    return result


def lemma2_bound(n, g, alpha) -> BoundResult:
    """Bound on |a_{-n+g}^{(-n)}|, the coefficients of 1/f(z)^n"""
    check_alpha(alpha)
    if n < 1:
        raise BadIndex("n", n, "n >= 1")
    if g < 1:
        raise BadIndex("g", g, "g >= 1")
    k = interval_index(alpha, n)
    c = 2 * n * (1 - alpha)
    if k == n - 1:
        return BoundResult(c / g, Regime.L2_6, k, Sharpness.SHARP_KNOWN, KoebeAlphaN(g))
    elif g <= n - k:
        return BoundResult(gamma_ratio_product(c, g), Regime.L2_4, k, Sharpness.SHARP_KNOWN,
                           KoebeAlpha())
    else:
        return BoundResult(((n - k) / g) * gamma_ratio_product(c, n - k), Regime.L2_5, k,
                           Sharpness.OPEN)


def lemma1_terms(n, alpha, g) -> List[float]:
    t = n * (1 - alpha)
    terms = [4 * t * t]
    for m in range(1, g):
        terms.append(4 * t * (t - m) * gamma_ratio_product(2 * t, m) ** 2)
    return terms


def lemma1_check(n, alpha, g) -> Tuple[float, float]:
    """Both sides of the identity

        4t [t + sum_{m=1}^{g-1} (t - m) C(2t, m)^2] = (prod_{j=0}^{g-1} (2t - j))^2 / ((g-1)!)^2

    with t = n(1 - alpha). The left side is summed term by term, the right
    side formed from the squared product."""
    check_alpha(alpha)
    if n < 1:
        raise BadIndex("n", n, "n >= 1")
    if g < 1:
        raise BadIndex("g", g, "g >= 1")
    lhs = math.fsum(lemma1_terms(n, alpha, g))
    c = 2 * n * (1 - alpha)
    root = c
    for j in range(1, g):
        root *= (c - j) / j
    return lhs, root * root


def lemma1_scale(n, alpha, g) -> float:
    """Sum of the magnitudes of the left-hand terms of lemma1_check, the
    scale the two sides are compared on"""
    return math.fsum(abs(term) for term in lemma1_terms(n, alpha, g))


def _thm1_for_interval(n, alpha, k) -> BoundResult:
    c = 2 * n * (1 - alpha)
    if k == n - 1:
        return BoundResult(2 * (1 - alpha) / (n - 1), Regime.T1C, k, Sharpness.SHARP_KNOWN,
                           KoebeAlphaN(n - 1))
    elif k <= 1:
        return BoundResult(gamma_ratio_product(c, n - 1) / n, Regime.T1A, k,
                           Sharpness.SHARP_KNOWN, KoebeAlpha())
    else:
        return BoundResult(((n - k) / (n * (n - 1))) * gamma_ratio_product(c, n - k),
                           Regime.T1B, k, Sharpness.OPEN)


def thm1_bound(n, alpha) -> BoundResult:
    """Bound on |A_n|, the coefficients of the inverse function"""
    check_alpha(alpha)
    if n < 2:
        raise BadIndex("n", n, "n >= 2")
    return _thm1_for_interval(n, alpha, interval_index(alpha, n))


def regime_jumps(n) -> List[RegimeJump]:
    """The jump of thm1_bound at each interval boundary alpha = k/n where the
    formula changes, as (upper formula) - (lower formula) at the boundary"""
    if n < 2:
        raise BadIndex("n", n, "n >= 2")
    jumps = []
    for k in range(2, n):
        alpha = k / n
        left = _thm1_for_interval(n, alpha, k - 1)
        right = _thm1_for_interval(n, alpha, k)
        jump = right.value - left.value
        jumps.append(RegimeJump(alpha, left.regime, right.regime, jump))
        log.debug("thm1 n=%d: jump %.6g at alpha=%g (%s -> %s)",
                  n, jump, alpha, left.regime, right.regime)
    return jumps


def klz_bounds(alpha) -> Tuple[float, float]:
    """The classical pair (|A_2|, |A_3|) bounds"""
    check_alpha(alpha)
    a2 = 2 * (1 - alpha)
    if alpha <= 2.0 / 3.0:
        a3 = (1 - alpha) * (5 - 6 * alpha)
    else:
        a3 = 1 - alpha
    return a2, a3


def klz_bound_results(alpha) -> Tuple[BoundResult, BoundResult]:
    a2, a3 = klz_bounds(alpha)
    k = interval_index(alpha, 3)
    a2_result = BoundResult(a2, Regime.KLZ_7, 0, Sharpness.SHARP_KNOWN, KoebeAlpha())
    if alpha <= 2.0 / 3.0:
        a3_result = BoundResult(a3, Regime.KLZ_8, k, Sharpness.SHARP_KNOWN, KoebeAlpha())
    else:
        a3_result = BoundResult(a3, Regime.KLZ_9, k, Sharpness.SHARP_KNOWN, KoebeAlphaN(2))
    return a2_result, a3_result


def loewner_bound(n) -> float:
    """Gamma(2n+1)/(Gamma(n+2) Gamma(n+1)), the inverse-coefficient bound for
    the whole class S"""
    if n < 2:
        raise BadIndex("n", n, "n >= 2")
    return gamma_ratio_product(2 * n, n - 1) / n


def loewner_result(n) -> BoundResult:
    return BoundResult(loewner_bound(n), Regime.LOEWNER, 0, Sharpness.SHARP_KNOWN, KoebeAlpha())


def thm2_bound(m, alpha) -> BoundResult:
    """Bound on |b_m| for g(z) = z + b_0 + b_1/z + ... in Sigma*(alpha)"""
    check_alpha(alpha)
    if m < 0:
        raise BadIndex("m", m, "m >= 0")
    return BoundResult(2 * (1 - alpha) / (m + 1), Regime.T2, 0, Sharpness.SHARP_KNOWN,
                       SigmaExtremal(m))


def thm3_bound(n, alpha) -> BoundResult:
    """Bound on |B_n| for g^-1(w) = w + B_0 + B_1/w + ..."""
    check_alpha(alpha)
    if n < 0:
        raise BadIndex("n", n, "n >= 0")
    if n == 0:
        return BoundResult(2 * (1 - alpha), Regime.T3A, 0, Sharpness.SHARP_KNOWN, KoebeAlpha())
    k = interval_index(alpha, n)
    if k == n - 1:
        return BoundResult(2 * (1 - alpha) / (n + 1), Regime.T3C, k, Sharpness.SHARP_KNOWN,
                           KoebeAlphaN(n + 1))
    c = 2 * n * (1 - alpha)
    return BoundResult(((n - k) / (n * (n + 1))) * gamma_ratio_product(c, n - k),
                       Regime.T3B, k, Sharpness.OPEN)
