"""Constructors for the extremal functions, a sampler of starlike functions of
order alpha, and the transform between S*(alpha) and Sigma*(alpha).

A function starlike of order alpha is realized from Herglotz atoms
(x_k, lambda_k), |x_k| = 1, sum lambda_k = 1, as

    f(z) = z * prod_k (1 - x_k z)^(-2 (1 - alpha) lambda_k)

for which z f'(z)/f(z) = alpha + (1 - alpha) sum_k lambda_k (1 + x_k z)/(1 - x_k z)
has real part larger than alpha on the unit disc.
"""
import json
import logging
import math
from typing import List, Optional, Sequence, Tuple

import numpy as np

from . import constants
from .error import BadIndex, DomainError
from .series import (NormalizedSchlicht, PowerSeries, inverse_power_coeffs, neg_power_coeffs,
                     ps_mul, unit_pow)
from .utils import check_alpha

log = logging.getLogger(__name__)

Atom = Tuple[complex, float]


class StarlikeSpec(object):
    """The atoms and seed that determine one function in S*(alpha)"""
    def __init__(self, alpha, atoms, order, seed=None):
        # type: (float, Sequence[Atom], int, Optional[int]) -> None
        check_alpha(alpha)
        if order < 1:
            raise BadIndex("order", order, "order >= 1")
        atoms = [(complex(x), float(lam)) for x, lam in atoms]
        if not atoms:
            raise DomainError("a starlike spec needs at least one atom")
        problems = []
        for x, lam in atoms:
            if abs(abs(x) - 1.0) > constants.ATOM_TOL:
                problems.append("atom %r is not on the unit circle" % x)
            if lam < 0:
                problems.append("atom weight %r is negative" % lam)
        total = math.fsum(lam for _, lam in atoms)
        if abs(total - 1.0) > constants.ATOM_TOL:
            problems.append("atom weights sum to %r, not 1" % total)
        if problems:
            raise DomainError("invalid starlike spec: " + "; ".join(problems))
        self.alpha = alpha
        self.atoms = atoms
        self.order = order
        self.seed = seed

    def __repr__(self):
        return "StarlikeSpec(%r, %r, %r, seed=%r)" % (self.alpha, self.atoms, self.order, self.seed)

    def realize(self) -> NormalizedSchlicht:
        """Multiply out the atom factors into a truncated series."""
        unit = PowerSeries.one(self.order - 1)
        for x, lam in self.atoms:
            if lam == 0:
                continue
            factor = PowerSeries([1.0, -x], self.order - 1)
            unit = ps_mul(unit, unit_pow(factor, -2.0 * (1.0 - self.alpha) * lam))
        return NormalizedSchlicht.from_unit(unit)

    def herglotz(self, z):
        """Exact value of z f'(z)/f(z) for the untruncated function"""
        z = np.asarray(z, dtype=complex)
        total = np.zeros_like(z)
        for x, lam in self.atoms:
            total = total + lam * (1 + x * z) / (1 - x * z)
        return self.alpha + (1 - self.alpha) * total

    def to_dict(self):
        return {
            'alpha': self.alpha,
            'atoms': [{'re': x.real, 'im': x.imag, 'lambda': lam} for x, lam in self.atoms],
            'order': self.order,
            'seed': self.seed,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_json(cls, data):
        """Rebuild a spec from to_json() output (a string or an already
        decoded dict)"""
        if isinstance(data, str):
            data = json.loads(data)
        try:
            atoms = [(complex(a['re'], a['im']), a['lambda']) for a in data['atoms']]
            return cls(data['alpha'], atoms, data.get('order', constants.DEFAULT_ORDER),
                       data.get('seed'))
        except (KeyError, TypeError) as err:
            raise DomainError("malformed starlike spec record: %s" % err)


class SigmaSeries(object):
    """g(z) = z + b_0 + b_1/z + ... + b_N/z^N; only b_0..b_N are stored"""
    __slots__ = ('b',)

    def __init__(self, b):
        self.b = b if isinstance(b, PowerSeries) else PowerSeries(b)

    @property
    def order(self) -> int:
        return self.b.order

    @property
    def coeffs(self) -> np.ndarray:
        return self.b.coeffs

    def __getitem__(self, m):
        return self.b[m]

    def __repr__(self):
        return "SigmaSeries(%r)" % (list(self.b),)


def koebe_alpha(alpha, N) -> NormalizedSchlicht:
    """K_alpha(z) = z/(1 - z)^(2(1 - alpha)), with
    a_n = prod_{j=2}^{n} (j - 2 alpha)/(j - 1)"""
    check_alpha(alpha)
    if N < 1:
        raise BadIndex("N", N, "N >= 1")
    coeffs = np.zeros(N + 1)
    j = np.arange(2, N + 1, dtype=float)
    coeffs[1] = 1.0
    coeffs[2:] = np.cumprod((j - 2 * alpha) / (j - 1))
    return NormalizedSchlicht(PowerSeries(coeffs))


def koebe_alpha_n(alpha, n, N) -> NormalizedSchlicht:
    """K_{alpha,n}(z) = z (1 - z^n)^(-2(1 - alpha)/n), the n-th root
    transform of K_alpha. n = 1 gives K_alpha itself."""
    check_alpha(alpha)
    if n < 1:
        raise BadIndex("n", n, "n >= 1")
    if N < 1:
        raise BadIndex("N", N, "N >= 1")
    beta = 2.0 * (1.0 - alpha) / n
    coeffs = np.zeros(N + 1)
    term = 1.0
    k = 0
    while 1 + k * n <= N:
        if k > 0:
            term *= (beta + k - 1) / k
        coeffs[1 + k * n] = term
        k += 1
    return NormalizedSchlicht(PowerSeries(coeffs))


def starlike_from_atoms(alpha, atoms, N, seed=None) -> StarlikeSpec:
    return StarlikeSpec(alpha, atoms, N, seed)


def random_atoms(rng, count=None) -> List[Atom]:
    """Draw atoms uniformly on the circle with flat Dirichlet weights"""
    if count is None:
        count = int(rng.integers(constants.MIN_ATOMS, constants.MAX_ATOMS + 1))
    angles = rng.uniform(0.0, 2.0 * math.pi, size=count)
    weights = rng.dirichlet(np.ones(count))
    weights = weights / weights.sum()
    return [(complex(np.exp(1j * t)), float(w)) for t, w in zip(angles, weights)]


def sample_starlike(alpha, seed, N) -> StarlikeSpec:
    """A random member of S*(alpha), fully determined by (alpha, seed, N)"""
    check_alpha(alpha)
    rng = np.random.default_rng(seed)
    spec = StarlikeSpec(alpha, random_atoms(rng), N, seed)
    log.debug("sampled %d atoms for alpha=%g seed=%d", len(spec.atoms), alpha, seed)
    return spec


def starlike_order_margin(f, alpha, radii=constants.MARGIN_RADII,
                          points_per_circle=constants.MARGIN_POINTS_PER_CIRCLE) -> float:
    """min of Re(z f'(z)/f(z)) - alpha over points on the circles |z| = r.

    The truncated polynomial is evaluated, so the value is only meaningful
    where the truncation error is small.
    """
    for r in radii:
        if not 0 < r <= constants.MARGIN_MAX_RADIUS:
            raise BadIndex("radius", r, "0 < r <= %g" % constants.MARGIN_MAX_RADIUS)
    if points_per_circle < 1:
        raise BadIndex("points_per_circle", points_per_circle, ">= 1")
    angles = 2.0 * np.pi * np.arange(points_per_circle) / points_per_circle
    z = np.concatenate([r * np.exp(1j * angles) for r in radii])
    series = f.series
    values = z * series.derivative().evaluate(z) / series.evaluate(z)
    return float(np.min(values.real) - alpha)


def to_sigma(f) -> SigmaSeries:
    """g(z) = 1/f(1/z); b_m is the coefficient a_m^{(-1)} of 1/f(z)"""
    block = neg_power_coeffs(f, 1)
    return SigmaSeries(block.unit.coeffs[1:])


def from_sigma(g) -> NormalizedSchlicht:
    """f(z) = 1/g(1/z), the inverse of to_sigma"""
    reciprocal = PowerSeries(np.concatenate([[1.0], g.coeffs]))
    return NormalizedSchlicht.from_unit(unit_pow(reciprocal, -1))


def sigma_inverse_coeffs(f, N) -> SigmaSeries:
    """B_0..B_N of g^-1(w) = w + B_0 + B_1/w + ..., where g = to_sigma(f).

    g^-1(w) = 1/f^-1(1/w), so B_n = A_n^{(-1)} and B_0 = q_1.
    """
    block = inverse_power_coeffs(f, -1, N)
    return SigmaSeries(block.unit.coeffs[1:])


def theorem2_extremal(m, alpha, N) -> SigmaSeries:
    """g(z) = z (1 - z^-(m+1))^beta with beta = 2(1 - alpha)/(m + 1).

    Only b_j with j = k(m+1) - 1 are nonzero, equal to the k-th binomial
    coefficient of (1 - v)^beta.
    """
    check_alpha(alpha)
    if m < 0:
        raise BadIndex("m", m, "m >= 0")
    beta = 2.0 * (1.0 - alpha) / (m + 1)
    b = np.zeros(N + 1)
    term = 1.0
    k = 1
    while k * (m + 1) - 1 <= N:
        term *= (k - 1 - beta) / k
        b[k * (m + 1) - 1] = term
        k += 1
    return SigmaSeries(b)


class Extremal(object):
    """A named extremal function that can build itself"""
    label = None

    def build(self, alpha, N):
        raise NotImplementedError

    def __str__(self):
        return self.label

    def __repr__(self):
        return self.label

    def __eq__(self, other):
        return isinstance(other, Extremal) and self.label == other.label

    def __hash__(self):
        return hash(self.label)


class KoebeAlpha(Extremal):
    label = "KoebeAlpha"

    def build(self, alpha, N):
        return koebe_alpha(alpha, N)


class KoebeAlphaN(Extremal):
    def __init__(self, n):
        self.n = n
        self.label = "KoebeAlphaN(%d)" % n

    def build(self, alpha, N):
        return koebe_alpha_n(alpha, self.n, N)


class SigmaExtremal(Extremal):
    def __init__(self, m):
        self.m = m
        self.label = "SigmaExtremal(%d)" % m

    def build(self, alpha, N):
        return theorem2_extremal(self.m, alpha, N)
