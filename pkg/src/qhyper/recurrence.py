"""Recurrence coefficients, Haar weights, the discrete orthogonality measure and
exact polynomial evaluation.

The base family is the little q-Legendre one, normalized by P_n(1) = 1 with
P_0 = 1, P_1(x) = (x - b_0)/a_0 and

    P_1(x) P_n(x) = a_n P_{n+1}(x) + b_n P_n(x) + c_n P_{n-1}(x),

where a_n + b_n + c_n = 1 and c_0 = 0.  Three comparison families
(Chebyshev of the first kind, ultraspherical with parameter -1/4, Legendre)
expose the same coefficient/Haar/evaluation surface but no measure
integration.  Everything is an exact `Fraction`.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from functools import lru_cache
from math import comb

from .scalar import QParam

Triple = tuple[Fraction, Fraction, Fraction]

_ZERO = Fraction(0)
_ONE = Fraction(1)


class CoeffProvider:
    """Memoized source of recurrence triples (a_n, b_n, c_n).

    Thread-safe: the memo tables are grown under a lock, and concurrent reads
    always return identical values.
    """

    name = "provider"

    def __init__(self) -> None:
        self._triples: list[Triple] = []
        self._poly_cache: dict[Fraction, list[Fraction]] = {}
        self._mono: list[tuple[Fraction, ...]] = []
        self._lock = threading.RLock()

    def _triple(self, n: int) -> Triple:
        raise NotImplementedError

    def coeffs(self, n: int) -> Triple:
        if n < 0:
            raise ValueError("n must be nonnegative")
        with self._lock:
            while len(self._triples) <= n:
                m = len(self._triples)
                a, b, c = self._triple(m)
                assert a + b + c == 1, f"{self.name}: triple at n={m} does not sum to 1"
                self._triples.append((a, b, c))
            return self._triples[n]

    def poly_values(self, x, n_max: int) -> list[Fraction]:
        """[P_0(x), ..., P_{n_max}(x)] by the forward recurrence, cached per x."""
        x = Fraction(x)
        with self._lock:
            vals = self._poly_cache.setdefault(x, [_ONE])
            if n_max >= 1 and len(vals) == 1:
                a0, b0, _ = self.coeffs(0)
                vals.append((x - b0) / a0)
            while len(vals) <= n_max:
                n = len(vals) - 1
                a, b, c = self.coeffs(n)
                vals.append(((vals[1] - b) * vals[n] - c * vals[n - 1]) / a)
            return vals[: n_max + 1]

    def poly(self, n: int, x) -> Fraction:
        return self.poly_values(x, n)[n]

    def monomial_coeffs(self, n: int) -> tuple[Fraction, ...]:
        """Coefficients of P_n in the monomial basis, lowest degree first."""
        if n < 0:
            raise ValueError("n must be nonnegative")
        with self._lock:
            mono = self._mono
            if not mono:
                mono.append((_ONE,))
            if n >= 1 and len(mono) == 1:
                a0, b0, _ = self.coeffs(0)
                mono.append((-b0 / a0, 1 / a0))
            while len(mono) <= n:
                a0, b0, _ = self.coeffs(0)
                m = len(mono) - 1
                a, b, c = self.coeffs(m)
                prev, prev2 = mono[m], mono[m - 1]
                acc = [_ZERO] * (m + 2)
                for i, co in enumerate(prev):
                    acc[i + 1] += co / a0
                    acc[i] += -co * b0 / a0 - b * co
                for i, co in enumerate(prev2):
                    acc[i] -= c * co
                mono.append(tuple(v / a for v in acc))
            return mono[n]


class LittleQLegendre(CoeffProvider):
    """The base family; orthogonal w.r.t. the discrete measure with mass
    q^n (1-q) at the point 1 - q^n."""

    def __init__(self, q: QParam) -> None:
        super().__init__()
        self.q = q
        self.name = f"little-q-legendre({q})"

    def _triple(self, n: int) -> Triple:
        q = self.q.q
        if n == 0:
            return (1 / (q + 1), q / (q + 1), _ZERO)
        qn = q**n
        qn1 = qn * q
        denom = 1 - qn * qn1
        a = qn * (1 + q) * (1 - qn1) / (denom * (1 + qn1))
        c = qn * (1 + q) * (1 - qn) / (denom * (1 + qn))
        return (a, 1 - a - c, c)


class Chebyshev1(CoeffProvider):
    """Chebyshev polynomials of the first kind, P_1(x) = x."""

    name = "chebyshev-1"

    def _triple(self, n: int) -> Triple:
        if n == 0:
            return (_ONE, _ZERO, _ZERO)
        return (Fraction(1, 2), _ZERO, Fraction(1, 2))


class UltrasphericalM14(CoeffProvider):
    """Ultraspherical family with parameter -1/4: c_n = 2n/(4n+1)."""

    name = "ultraspherical(-1/4)"

    def _triple(self, n: int) -> Triple:
        if n == 0:
            return (_ONE, _ZERO, _ZERO)
        c = Fraction(2 * n, 4 * n + 1)
        return (1 - c, _ZERO, c)


class Legendre(CoeffProvider):
    """Legendre polynomials on [-1, 1], P_1(x) = x."""

    name = "legendre"

    def _triple(self, n: int) -> Triple:
        if n == 0:
            return (_ONE, _ZERO, _ZERO)
        return (Fraction(n + 1, 2 * n + 1), _ZERO, Fraction(n, 2 * n + 1))


@lru_cache(maxsize=None)
def little_q_legendre(q: QParam) -> LittleQLegendre:
    return LittleQLegendre(q)


@lru_cache(maxsize=None)
def chebyshev1() -> Chebyshev1:
    return Chebyshev1()


@lru_cache(maxsize=None)
def ultraspherical_m14() -> UltrasphericalM14:
    return UltrasphericalM14()


@lru_cache(maxsize=None)
def legendre() -> Legendre:
    return Legendre()


def coeffs(provider: CoeffProvider, n: int) -> Triple:
    return provider.coeffs(n)


def eval_poly(provider: CoeffProvider, n: int, x) -> Fraction:
    return provider.poly(n, x)


def eval_poly_phi(q: QParam, n: int, x) -> Fraction:
    """Little q-Legendre value as the finite basic hypergeometric sum.

    Independent of `eval_poly`: the two must agree exactly.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    x = Fraction(x)
    qq = q.q
    z = qq - qq * x
    total = _ONE
    num = _ONE
    den = _ONE
    for k in range(1, n + 1):
        num *= (1 - qq ** (k - 1 - n)) * (1 - qq ** (n + k)) * z
        den *= (1 - qq**k) ** 2
        total += num / den
    return total


class HaarWeights:
    """Memoized Haar weights: h(0) = 1, h(1) = 1/c_1, h(n+1) = h(n) a_n/c_{n+1}.

    For the little q-Legendre family each value is cross-checked against the
    closed form q^(-n) (1 - q^(2n+1))/(1 - q) at construction time.
    """

    def __init__(self, provider: CoeffProvider) -> None:
        self.provider = provider
        self._h: list[Fraction] = [_ONE]
        self._partial: list[Fraction] = [_ONE]
        self._lock = threading.RLock()

    def value(self, n: int) -> Fraction:
        if n < 0:
            raise ValueError("n must be nonnegative")
        with self._lock:
            while len(self._h) <= n:
                m = len(self._h)
                if m == 1:
                    h = 1 / self.provider.coeffs(1)[2]
                else:
                    h = self._h[m - 1] * self.provider.coeffs(m - 1)[0] / self.provider.coeffs(m)[2]
                if isinstance(self.provider, LittleQLegendre):
                    assert h == lql_haar_closed(self.provider.q, m)
                self._h.append(h)
            return self._h[n]

    def partial_sum(self, n: int) -> Fraction:
        """sum_{k=0..n} h(k)."""
        with self._lock:
            while len(self._partial) <= n:
                m = len(self._partial)
                self._partial.append(self._partial[m - 1] + self.value(m))
            return self._partial[n]


@lru_cache(maxsize=None)
def haar_weights(provider: CoeffProvider) -> HaarWeights:
    return HaarWeights(provider)


def haar_weight(hw: HaarWeights, n: int) -> Fraction:
    return hw.value(n)


def lql_haar_closed(q: QParam, n: int) -> Fraction:
    """Closed form of the little q-Legendre Haar weight."""
    qq = q.q
    return qq ** (-n) * (1 - qq ** (2 * n + 1)) / (1 - qq)


def lql_haar_partial_closed(q: QParam, n: int) -> Fraction:
    """Closed form of sum_{k=0..n} h(k) for the little q-Legendre family."""
    qq = q.q
    inner = 1 - qq ** (n + 1) * (2 - qq**n - qq ** (n + 1)) / (1 - qq ** (2 * n + 1))
    return inner * lql_haar_closed(q, n) / (1 - qq)


def mu_mass(q: QParam, n: int) -> Fraction:
    """Mass of the orthogonality measure at the point 1 - q^n."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return q.q**n * (1 - q.q)


@lru_cache(maxsize=None)
def mu_moment(q: QParam, j: int) -> Fraction:
    """Exact j-th moment of the orthogonality measure.

    Expanding (1 - q^n)^j binomially and summing the geometric series over the
    support gives sum_i C(j,i) (-1)^i (1-q)/(1-q^(i+1)).
    """
    if j < 0:
        raise ValueError("j must be nonnegative")
    qq = q.q
    total = _ZERO
    for i in range(j + 1):
        term = Fraction(comb(j, i)) * (1 - qq) / (1 - qq ** (i + 1))
        total += -term if i % 2 else term
    return total


def integrate_poly_mu(q: QParam, mono_coeffs) -> Fraction:
    """Exact integral against the measure of a polynomial given by monomial
    coefficients (lowest degree first)."""
    return sum((c * mu_moment(q, j) for j, c in enumerate(mono_coeffs) if c), _ZERO)


def poly_mul(f, g) -> tuple[Fraction, ...]:
    """Product of two monomial-coefficient vectors."""
    out = [_ZERO] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if not a:
            continue
        for j, b in enumerate(g):
            if b:
                out[i + j] += a * b
    return tuple(out)


def poly_diff(f) -> tuple[Fraction, ...]:
    """Derivative of a monomial-coefficient vector."""
    if len(f) <= 1:
        return (_ZERO,)
    return tuple(Fraction(i) * c for i, c in enumerate(f) if i >= 1)


def poly_eval(f, x) -> Fraction:
    """Horner evaluation of a monomial-coefficient vector."""
    x = Fraction(x)
    out = _ZERO
    for c in reversed(f):
        out = out * x + c
    return out
