"""Truncated complex power series arithmetic.

Series are stored as read-only numpy arrays of complex128 coefficients
c_0..c_N. Every operation returns a new value; nothing is mutated after
construction. Results are truncated to the smallest order among the inputs.

The negative powers of a normalized function f(z) = z + a_2 z^2 + ... are
computed as z^-n (f(z)/z)^-n, and the inverse function comes from those
through Lagrange inversion: A_n = (1/n) a_{-1}^{(-n)}.
"""
import logging
from typing import Iterable, Iterator, Tuple

import numpy as np

from . import constants
from .error import (BadIndex, NonzeroConstantTerm, NotNormalized, NotUnitSeries,
                    OrderExhausted, PrecisionErosion, SeriesError, ZeroPower)

log = logging.getLogger(__name__)


def _guard(coeffs, where, guard=constants.COEFF_GUARD):
    """Raise PrecisionErosion if any coefficient is non-finite or larger
    than `guard` in magnitude."""
    if coeffs.size == 0:
        return
    magnitude = float(np.max(np.abs(coeffs)))
    if not np.isfinite(magnitude) or magnitude > guard:
        raise PrecisionErosion(where, magnitude, guard)


class PowerSeries(object):
    """A truncated Taylor series c_0 + c_1 z + ... + c_N z^N"""
    __slots__ = ('_coeffs',)

    def __init__(self, coeffs, order=None):
        arr = np.array(coeffs, dtype=complex).ravel()
        if order is not None:
            if order < 0:
                raise BadIndex("order", order, "order >= 0")
            if arr.size > order + 1:
                arr = arr[:order + 1]
            elif arr.size < order + 1:
                arr = np.concatenate([arr, np.zeros(order + 1 - arr.size, dtype=complex)])
        if arr.size == 0:
            raise SeriesError("a power series needs at least the constant coefficient")
        if not np.all(np.isfinite(arr)):
            raise PrecisionErosion("series construction", float("inf"), constants.COEFF_GUARD)
        arr.flags.writeable = False
        self._coeffs = arr

    @classmethod
    def one(cls, order):
        return cls([1.0], order)

    @classmethod
    def monomial(cls, k, order, coefficient=1.0):
        """coefficient * z^k, truncated at `order`"""
        arr = np.zeros(order + 1, dtype=complex)
        if k <= order:
            arr[k] = coefficient
        return cls(arr)

    @property
    def coeffs(self) -> np.ndarray:
        return self._coeffs

    @property
    def order(self) -> int:
        return self._coeffs.size - 1

    def __len__(self):
        return self._coeffs.size

    def __getitem__(self, idx):
        if isinstance(idx, slice):
            return self._coeffs[idx]
        if idx < 0 or idx > self.order:
            raise OrderExhausted(idx, self.order)
        return complex(self._coeffs[idx])

    def __iter__(self) -> Iterator[complex]:
        return (complex(c) for c in self._coeffs)

    def __repr__(self):
        return "PowerSeries(%r)" % (list(self),)

    def truncate(self, order):
        if order > self.order:
            raise OrderExhausted(order, self.order)
        return PowerSeries(self._coeffs[:order + 1])

    def scale(self, factor):
        return PowerSeries(self._coeffs * factor)

    def add(self, other):
        order = min(self.order, other.order)
        return PowerSeries(self._coeffs[:order + 1] + other.coeffs[:order + 1])

    def derivative(self):
        """Term-by-term derivative; the result has order N-1 (order 0 stays 0)."""
        if self.order == 0:
            return PowerSeries([0.0])
        return PowerSeries(self._coeffs[1:] * np.arange(1, self.order + 1))

    def evaluate(self, z):
        """Evaluate the truncated polynomial at z (scalar or array)."""
        return np.polynomial.polynomial.polyval(z, self._coeffs)

    def max_abs(self) -> float:
        return float(np.max(np.abs(self._coeffs)))

    def is_real(self, tol=1e-15) -> bool:
        return bool(np.all(np.abs(self._coeffs.imag) <= tol))


class NormalizedSchlicht(object):
    """f(z) = z + a_2 z^2 + ... + a_N z^N with a_0 = 0 and a_1 = 1 exactly"""
    __slots__ = ('series',)

    def __init__(self, series):
        if not isinstance(series, PowerSeries):
            series = PowerSeries(series)
        if series.order < 1:
            raise OrderExhausted(1, series.order)
        c0, c1 = series[0], series[1]
        if c0 != 0 or c1 != 1:
            raise NotNormalized(c0, c1)
        self.series = series

    @classmethod
    def identity(cls, order):
        """f(z) = z padded with zeros to `order`"""
        return cls(PowerSeries.monomial(1, order))

    @classmethod
    def from_unit(cls, unit):
        """Build z * unit(z) from a series with unit[0] == 1"""
        return cls(PowerSeries(np.concatenate([[0.0], unit.coeffs])))

    @property
    def order(self) -> int:
        return self.series.order

    @property
    def coeffs(self) -> np.ndarray:
        return self.series.coeffs

    def __getitem__(self, idx):
        return self.series[idx]

    def __repr__(self):
        return "NormalizedSchlicht(%r)" % (list(self.series),)

    def unit(self) -> PowerSeries:
        """f(z)/z, a series with constant term 1 and order N-1"""
        return PowerSeries(self.series.coeffs[1:])

    def truncate(self, order):
        return NormalizedSchlicht(self.series.truncate(order))


class LaurentBlock(object):
    """z^valuation * unit(z), where unit[0] != 0.

    The coefficient of z^k is unit[k - valuation]; coefficients below the
    valuation are zero and those above valuation + unit.order are unknown.
    """
    __slots__ = ('valuation', 'unit')

    def __init__(self, valuation, unit):
        if abs(unit[0]) == 0:
            raise SeriesError("the unit part of a Laurent block must have a nonzero constant term")
        self.valuation = int(valuation)
        self.unit = unit

    @property
    def top_index(self) -> int:
        return self.valuation + self.unit.order

    def coeff(self, k) -> complex:
        idx = k - self.valuation
        if idx < 0:
            return 0j
        if idx > self.unit.order:
            raise OrderExhausted(k, self.top_index)
        return self.unit[idx]

    def coefficients(self) -> Iterator[Tuple[int, complex]]:
        for idx, c in enumerate(self.unit):
            yield self.valuation + idx, c

    def __repr__(self):
        return "LaurentBlock(%d, %r)" % (self.valuation, self.unit)


def ps_mul(a, b):
    """Cauchy product truncated to min(a.order, b.order)"""
    order = min(a.order, b.order)
    prod = np.convolve(a.coeffs[:order + 1], b.coeffs[:order + 1])[:order + 1]
    _guard(prod, "ps_mul")
    return PowerSeries(prod)


def compose(outer, inner):
    """outer(inner(z)) truncated at the common order, by Horner's scheme in
    the series ring."""
    if inner[0] != 0:
        raise NonzeroConstantTerm(inner[0])
    order = min(outer.order, inner.order)
    inner_c = inner.coeffs[:order + 1]
    acc = np.zeros(order + 1, dtype=complex)
    acc[0] = outer.coeffs[order]
    for k in range(order - 1, -1, -1):
        acc = np.convolve(acc, inner_c)[:order + 1]
        acc[0] += outer.coeffs[k]
        _guard(acc, "compose")
    return PowerSeries(acc)


def unit_pow(h, beta):
    """h(z)**beta for a series with h[0] == 1 (principal branch).

    Uses the J.C.P. Miller recurrence obtained from (h^b)' h = b h' h^b:
        n w_n = sum_{k=1}^{n} ((b + 1) k - n) h_k w_{n-k},   w_0 = 1.
    """
    if h[0] != 1:
        raise NotUnitSeries(h[0])
    order = h.order
    hc = h.coeffs
    w = np.zeros(order + 1, dtype=complex)
    w[0] = 1.0
    ks = np.arange(1, order + 1, dtype=float)
    for n in range(1, order + 1):
        weights = (beta + 1.0) * ks[:n] - n
        w[n] = np.dot(weights * hc[1:n + 1], w[n - 1::-1]) / n
    _guard(w, "unit_pow(beta=%g)" % beta)
    return PowerSeries(w)


def neg_power_coeffs(f, n, G=None):
    """The block 1/f(z)^n = sum_{g>=0} a_{-n+g}^{(-n)} z^{-n+g}, for g = 0..G.

    The unit part is (f(z)/z)^-n, so unit[g] = a_{-n+g}^{(-n)} and unit[0] = 1.
    """
    if n < 1:
        raise BadIndex("n", n, "n >= 1")
    available = f.order - 1
    if G is None:
        G = available
    if G < 0:
        raise BadIndex("G", G, "G >= 0")
    if G > available:
        raise OrderExhausted(G, available)
    unit = unit_pow(f.unit().truncate(G), -n)
    return LaurentBlock(-n, unit)


def revert(f, N=None):
    """Taylor coefficients of f^-1(w) = w + A_2 w^2 + ... + A_N w^N by
    Lagrange inversion, A_n = (1/n) a_{-1}^{(-n)}."""
    if N is None:
        N = f.order
    if N > f.order:
        raise OrderExhausted(N, f.order)
    coeffs = np.zeros(N + 1, dtype=complex)
    if N >= 1:
        coeffs[1] = 1.0
    for n in range(2, N + 1):
        block = neg_power_coeffs(f, n, n - 1)
        coeffs[n] = block.unit[n - 1] / n
    return PowerSeries(coeffs)


def log_derivative(f, N=None):
    """The q_n of z f'(z)/f(z) = sum_{n>=0} q_n z^n (q_0 = 1)."""
    available = f.order - 1
    if N is None:
        N = available
    if N > available:
        raise OrderExhausted(N, available)
    h = f.unit().truncate(N)
    # z f'/f = (z h)'/h since f = z h
    zh_prime = PowerSeries(h.coeffs * np.arange(1, N + 2))
    return ps_mul(zh_prime, unit_pow(h, -1))


def inverse_power_coeffs(f, p, N):
    """Coefficients A_n^{(p)} of (f^-1(w))^p for n = p..N, as a Laurent block
    of valuation p.

    The power-inversion identity A_n^{(p)} = (p/n) [z^-p] f(z)^-n gives every n != 0;
    for p < 0 the n = 0 coefficient is A_0^{(p)} = q_{-p}, read off
    f'(z)/f(z) = (1/z) sum q_m z^m.
    """
    if p == 0:
        raise ZeroPower()
    if N < p:
        raise BadIndex("N", N, "N >= p = %d" % p)
    needed = N - p
    if needed > f.order - 1:
        raise OrderExhausted(needed, f.order - 1)
    unit_f = f.unit()
    coeffs = np.zeros(N - p + 1, dtype=complex)
    q = None
    for n in range(p, N + 1):
        idx = n - p
        if n == 0:
            if q is None:
                q = log_derivative(f, -p)
            coeffs[idx] = q[-p]
        else:
            # [z^-p] f^-n = [z^(n-p)] (f/z)^-n
            power = unit_pow(unit_f.truncate(idx), -n)
            coeffs[idx] = (p / n) * power[idx]
    log.debug("inverse_power_coeffs: p=%d, N=%d", p, N)
    return LaurentBlock(p, PowerSeries(coeffs))


def powers_of_inverse(f, p, N):
    """(f^-1(w))^p by direct powering of the reverted series:
    w^p * (f^-1(w)/w)^p, returned like inverse_power_coeffs."""
    if p == 0:
        raise ZeroPower()
    inverse = revert(f, N - p + 1)
    unit = PowerSeries(inverse.coeffs[1:])
    return LaurentBlock(p, unit_pow(unit, p))


def from_coefficients(coeffs: Iterable[complex]) -> NormalizedSchlicht:
    """Convenience constructor for z + a_2 z^2 + ... from [0, 1, a_2, ...]"""
    return NormalizedSchlicht(PowerSeries(list(coeffs)))
