"""Linearization coefficients of polynomial products and the weighted-l1
sequence algebra they induce: translation, convolution and norms.

The coefficients g(m,n;k) in P_m P_n = sum_k g(m,n;k) P_k are computed by
exact induction on m (never by numerical integration); the moment-based
integration route in `recurrence` serves as an independent oracle in tests.
Nonnegativity of every g(m,n;k) is what makes the convolution a hypergroup
convolution.
"""

from __future__ import annotations

import threading
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .recurrence import CoeffProvider, HaarWeights, haar_weights, little_q_legendre
from .scalar import QParam

_ZERO = Fraction(0)
_ONE = Fraction(1)


class LinearizationTable:
    """Exact rows g(m,n;.) keyed by (min(m,n), max(m,n)), built by induction.

    Base rows: g(0,n;k) = delta_{nk} and g(1,n;.) read off the three-term
    recurrence; the step from m to m+1 multiplies the current expansion by
    P_1 through the Jacobi-matrix action and solves for P_{m+1} P_n.
    Concurrent reads are safe; row construction is serialized.
    """

    def __init__(self, provider: CoeffProvider) -> None:
        self.provider = provider
        self._rows: dict[tuple[int, int], dict[int, Fraction]] = {}
        self._lock = threading.RLock()

    def _p1_apply(self, row: dict[int, Fraction]) -> defaultdict:
        out: defaultdict = defaultdict(lambda: _ZERO)
        for k, w in row.items():
            if k == 0:
                out[1] += w
                continue
            a, b, c = self.provider.coeffs(k)
            out[k + 1] += w * a
            if b:
                out[k] += w * b
            out[k - 1] += w * c
        return out

    def row(self, m: int, n: int) -> dict[int, Fraction]:
        """The nonzero entries of g(m,n;.) as a dict keyed by k."""
        if m < 0 or n < 0:
            raise ValueError("indices must be nonnegative")
        if m > n:
            m, n = n, m
        with self._lock:
            rows = self._rows
            if (m, n) in rows:
                return dict(rows[(m, n)])
            if (0, n) not in rows:
                rows[(0, n)] = {n: _ONE}
            if m >= 1 and (1, n) not in rows:
                if n == 0:
                    raise AssertionError("unreachable: (1,0) normalizes to (0,1)")
                a, b, c = self.provider.coeffs(n)
                base = {n - 1: c, n + 1: a}
                if b:
                    base[n] = b
                rows[(1, n)] = base
            for j in range(2, m + 1):
                if (j, n) in rows:
                    continue
                a, b, c = self.provider.coeffs(j - 1)
                acc = self._p1_apply(rows[(j - 1, n)])
                for k, w in rows[(j - 1, n)].items():
                    acc[k] -= b * w
                for k, w in rows[(j - 2, n)].items():
                    acc[k] -= c * w
                new = {k: v / a for k, v in acc.items() if v}
                assert min(new) == n - j and max(new) == n + j
                rows[(j, n)] = new
            return dict(rows[(m, n)])

    def g(self, m: int, n: int, k: int) -> Fraction:
        return self.row(m, n).get(k, _ZERO)


@lru_cache(maxsize=None)
def linearization_table(provider: CoeffProvider) -> LinearizationTable:
    return LinearizationTable(provider)


def linearize(provider: CoeffProvider, m: int, n: int) -> dict[int, Fraction]:
    return linearization_table(provider).row(m, n)


@dataclass(frozen=True)
class PropertyPResult:
    ok: bool
    witness: tuple[int, int, int, Fraction] | None


def check_property_P(provider: CoeffProvider, M: int) -> PropertyPResult:
    """Exact nonnegativity check of every g(m,n;k) for m <= n <= M.

    Returns the lexicographically first negative witness (m, n, k, value)
    if one exists.
    """
    table = linearization_table(provider)
    for m in range(M + 1):
        for n in range(m, M + 1):
            row = table.row(m, n)
            for k in sorted(row):
                if row[k] < 0:
                    return PropertyPResult(False, (m, n, k, row[k]))
    return PropertyPResult(True, None)


class Hypergroup:
    """A coefficient provider bundled with its Haar weights and linearization
    table; the context every HSeq lives in."""

    def __init__(self, provider: CoeffProvider) -> None:
        self.provider = provider
        self.haar: HaarWeights = haar_weights(provider)
        self.table: LinearizationTable = linearization_table(provider)

    def h(self, n: int) -> Fraction:
        return self.haar.value(n)

    def hseq(self, values) -> "HSeq":
        return HSeq(self, values)

    def delta(self, n: int) -> "HSeq":
        return HSeq(self, {n: _ONE})

    def epsilon(self, n: int) -> "HSeq":
        """The normalized point sequence delta_n / h(n)."""
        return HSeq(self, {n: 1 / self.h(n)})


@lru_cache(maxsize=None)
def hypergroup(provider: CoeffProvider) -> Hypergroup:
    return Hypergroup(provider)


def lql_hypergroup(q: QParam) -> Hypergroup:
    return hypergroup(little_q_legendre(q))


class HSeq:
    """Finitely supported sequence on the nonnegative integers together with
    its Haar-weight context; values are exact rationals, zeros are dropped."""

    __slots__ = ("hg", "_v")

    def __init__(self, hg: Hypergroup, values) -> None:
        self.hg = hg
        v = {}
        for k, val in dict(values).items():
            if k < 0:
                raise ValueError("support indices must be nonnegative")
            val = Fraction(val)
            if val:
                v[int(k)] = val
        self._v = v

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(sorted(self._v))

    def items(self):
        return sorted(self._v.items())

    def __getitem__(self, k: int) -> Fraction:
        return self._v.get(k, _ZERO)

    def __eq__(self, other) -> bool:
        return isinstance(other, HSeq) and self.hg is other.hg and self._v == other._v

    def __hash__(self):
        return hash((id(self.hg), tuple(self.items())))

    def __repr__(self) -> str:
        return f"HSeq({dict(self.items())})"

    def add(self, other: "HSeq") -> "HSeq":
        assert self.hg is other.hg
        out = dict(self._v)
        for k, val in other._v.items():
            out[k] = out.get(k, _ZERO) + val
        return HSeq(self.hg, out)

    def sub(self, other: "HSeq") -> "HSeq":
        return self.add(other.scale(-1))

    def scale(self, factor) -> "HSeq":
        factor = Fraction(factor)
        return HSeq(self.hg, {k: factor * v for k, v in self._v.items()})

    def norm1(self) -> Fraction:
        return sum((abs(v) * self.hg.h(k) for k, v in self._v.items()), _ZERO)

    def norm2_sq(self) -> Fraction:
        return sum((v * v * self.hg.h(k) for k, v in self._v.items()), _ZERO)


def norm_p(f: HSeq, p: int) -> Fraction:
    """The p-th power of the weighted norm, kept rational (p in {1, 2})."""
    if p == 1:
        return f.norm1()
    if p == 2:
        return f.norm2_sq()
    raise ValueError("only p in {1, 2} is supported")


def translate(f: HSeq, n: int) -> HSeq:
    """T_n f(m) = sum_k g(m,n;k) f(k), exact and finitely supported."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if not f._v:
        return f
    table = f.hg.table
    lo_s, hi_s = min(f._v), max(f._v)
    out = {}
    for m in range(max(0, n - hi_s, lo_s - n), n + hi_s + 1):
        row = table.row(m, n)
        val = sum((row[k] * v for k, v in f._v.items() if k in row), _ZERO)
        if val:
            out[m] = val
    return HSeq(f.hg, out)


def convolve(f: HSeq, g: HSeq) -> HSeq:
    """f * g(n) = sum_k T_n f(k) g(k) h(k), exact on finite supports."""
    assert f.hg is g.hg, "operands must share a hypergroup"
    if not f._v or not g._v:
        return HSeq(f.hg, {})
    hg = f.hg
    table = hg.table
    out = {}
    for n in range(max(f._v) + max(g._v) + 1):
        val = _ZERO
        for k, gv in g._v.items():
            row = table.row(k, n)
            tnf = sum((row[j] * fv for j, fv in f._v.items() if j in row), _ZERO)
            if tnf:
                val += tnf * gv * hg.h(k)
        if val:
            out[n] = val
    return HSeq(f.hg, out)
