"""Characters of the little q-Legendre hypergroup at the spectral points
1 - q^n: exact truncations, certified decay, and norm enclosures.

A character is the sequence k -> P_k(1 - q^n).  Beyond the threshold index
K (the least K >= 0 with q^(K+1) <= 1/4) its entries alternate in sign,
decrease strictly in absolute value, and satisfy the ratio bound
|alpha(n+k+1)| < 4 q^(k+1) |alpha(n+k)|.  That ratio bound, combined with the
single-step Haar growth h(k+1)/h(k) < q^(-1)/(1 - q^(2k+1)), certifies a
geometric majorant for every truncated l1 tail computed here.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .recurrence import haar_weights, little_q_legendre
from .scalar import Enclosure, QParam

_ZERO = Fraction(0)
_ONE = Fraction(1)
_HALF = Fraction(1, 2)

DEFAULT_TAIL_DEPTH = 40


def k_threshold(q: QParam) -> int:
    """Least K >= 0 with q^(K+1) <= 1/4, decided by exact integer comparison.

    Equivalent to the ceiling formula ceil(log4/log(1/q) - 1) but immune to
    floating-point rounding at boundary parameters such as q = 1/4.
    """
    p, r = q.q.numerator, q.q.denominator
    K = 0
    num, den = p, r
    while 4 * num > den:
        K += 1
        num *= p
        den *= r
    return K


def _super_geometric_tail(rho0: Fraction, q: QParam) -> Fraction:
    """Certified upper bound for sum_{j>=1} prod_{i<j} rho_i with rho_i = rho0 q^i.

    Exact partial products are accumulated until the running ratio drops to
    1/2, after which the remaining mass is dominated by a geometric series.
    """
    qq = q.q
    total = _ZERO
    product = _ONE
    j = 0
    rho = rho0
    while rho > _HALF:
        product *= rho
        total += product
        j += 1
        rho = rho0 * qq**j
    return total + product * rho / (1 - rho)


@dataclass(frozen=True)
class TruncatedCharacter:
    """Exact prefix alpha(0..k_max) of the character at 1 - q^n plus a
    certified bound on the dropped l1 mass sum_{k>k_max} |alpha(k)| h(k)."""

    q: QParam
    n: int
    values: tuple[Fraction, ...]
    tail_l1_bound: Fraction

    @property
    def k_max(self) -> int:
        return len(self.values) - 1

    def value(self, k: int) -> Fraction:
        return self.values[k]

    def partial_l1(self) -> Fraction:
        hw = haar_weights(little_q_legendre(self.q))
        return sum((abs(v) * hw.value(k) for k, v in enumerate(self.values)), _ZERO)

    def l1_enclosure(self) -> Enclosure:
        lo = self.partial_l1()
        return Enclosure(lo, lo + self.tail_l1_bound)


def character(q: QParam, n: int, k_max: int | None = None) -> TruncatedCharacter:
    """Truncated character at 1 - q^n with a certified l1 tail bound.

    Requires k_max >= n + K so the decay regime covers the tail.  Each tail
    step multiplies |alpha(k)| h(k) by at most
    rho(k) = 4 q^(k-n) / (1 - q^(2 k_max + 1)), a ratio that itself shrinks by
    q per step, so the dropped mass is below the super-geometric majorant.
    """
    K = k_threshold(q)
    if k_max is None:
        k_max = n + K + DEFAULT_TAIL_DEPTH
    if k_max < n + K:
        raise ValueError(f"k_max={k_max} below decay threshold n+K={n + K}")
    provider = little_q_legendre(q)
    x = 1 - q.q**n
    values = tuple(provider.poly_values(x, k_max))
    hw = haar_weights(provider)
    last = abs(values[k_max]) * hw.value(k_max)
    rho0 = 4 * q.q ** (k_max - n) / (1 - q.q ** (2 * k_max + 1))
    tail = last * _super_geometric_tail(rho0, q)
    return TruncatedCharacter(q=q, n=n, values=values, tail_l1_bound=tail)


def l2_norm_sq(q: QParam, n: int) -> Fraction:
    """Closed-form squared 2-norm of the character at 1 - q^n: 1/(q^n (1-q))."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return 1 / (q.q**n * (1 - q.q))


def l1_norm(q: QParam, n: int, k_max: int | None = None) -> Enclosure:
    """Certified enclosure of the character's l1 norm.

    The lower endpoint is the exact partial sum (a strict lower bound, since
    the dropped terms are positive); the upper endpoint adds the certified
    tail bound.
    """
    return character(q, n, k_max).l1_enclosure()


@lru_cache(maxsize=None)
def norm_ratio_bound(q: QParam, tol: Fraction = Fraction(1, 10**25)) -> Enclosure:
    """Enclosure of the explicit constant C(q) bounding l1/l2^2 over all
    spectral characters:

        C = q^(-K) [ 1/(1-q) + (1 - q^(2K+1))^(-1) * sum_{k>=1} 4^k q^((2K+k-1)k/2) ].

    Successive series terms have ratio 4 q^(K+k), so the truncation tail is
    dominated by a geometric series once that ratio falls below one.
    """
    K = k_threshold(q)
    qq = q.q
    partial = _ZERO
    term = _ONE
    k = 0
    while True:
        ratio = 4 * qq ** (K + k)
        if ratio < 1 and term * ratio / (1 - ratio) <= tol and k >= 1:
            tail = term * ratio / (1 - ratio)
            break
        term *= ratio
        partial += term
        k += 1
    series = Enclosure(partial, partial + tail)
    bracket = Enclosure.point(1 / (1 - qq)) + series * Enclosure.point(1 / (1 - qq ** (2 * K + 1)))
    return Enclosure.point(qq**-K) * bracket


@dataclass(frozen=True)
class DecayRow:
    """One certified decay check at (n, k): entries of the character at
    1 - q^n around index n + k, all decided exactly."""

    n: int
    k: int
    alpha_k: Fraction
    alpha_k1: Fraction
    abs_ratio: Fraction
    envelope: Fraction

    @property
    def sign(self) -> int:
        prod = self.alpha_k * self.alpha_k1
        return 0 if prod == 0 else (1 if prod > 0 else -1)


@dataclass(frozen=True)
class DecayReport:
    q: QParam
    K: int
    rows: tuple[DecayRow, ...]
    violations: tuple[tuple[int, int, str], ...]

    @property
    def ok(self) -> bool:
        return not self.violations

    @property
    def first_violation(self) -> tuple[int, int, str] | None:
        return self.violations[0] if self.violations else None


def decay_envelope(q: QParam, k: int) -> Fraction:
    """The decay envelope 4^(k-K) q^((K+k+1)(k-K)/2) at integer k."""
    K = k_threshold(q)
    expo = (K + k + 1) * (k - K)
    assert expo % 2 == 0
    return Fraction(4) ** (k - K) * q.q ** (expo // 2)


def verify_decay(q: QParam, n_max: int, k_extra: int) -> DecayReport:
    """Exact decay suite over n <= n_max and K <= k <= K + k_extra.

    Per (n, k) it checks: alpha(n+k) != 0, the ratio bound
    |alpha(n+k+1)/(alpha(n+k) q^(k+1))| < 4, sign alternation, strict decrease
    of |alpha(n+k)|, and the envelope |alpha(n+k)| <= envelope(k).  Violations
    are collected in (n, k) order; none must occur.
    """
    K = k_threshold(q)
    provider = little_q_legendre(q)
    rows: list[DecayRow] = []
    violations: list[tuple[int, int, str]] = []
    for n in range(n_max + 1):
        x = 1 - q.q**n
        vals = provider.poly_values(x, n + K + k_extra + 1)
        for k in range(K, K + k_extra + 1):
            ak, ak1 = vals[n + k], vals[n + k + 1]
            if ak == 0 or ak1 == 0:
                violations.append((n, k, "zero entry"))
                continue
            abs_ratio = abs(ak1 / (ak * q.q ** (k + 1)))
            env = decay_envelope(q, k)
            row = DecayRow(n=n, k=k, alpha_k=ak, alpha_k1=ak1, abs_ratio=abs_ratio, envelope=env)
            rows.append(row)
            if not abs_ratio < 4:
                violations.append((n, k, f"ratio {abs_ratio} >= 4"))
            if not ak * ak1 < 0:
                violations.append((n, k, "no sign alternation"))
            if not abs(ak1) < abs(ak):
                violations.append((n, k, "not strictly decreasing"))
            if not abs(ak) <= env:
                violations.append((n, k, f"envelope violated: |alpha|={abs(ak)} > {env}"))
    return DecayReport(q=q, K=K, rows=tuple(rows), violations=tuple(violations))


@dataclass(frozen=True)
class ChainRow:
    n: int
    l2_sq: Fraction
    l1: Enclosure

    def ratio(self) -> Enclosure:
        return self.l1 * Enclosure.point(1 / self.l2_sq)


@dataclass(frozen=True)
class ChainReport:
    """Certified norm chain 0 < l2^2 < l1.lo and l1.hi < C.hi * l2^2 per n."""

    q: QParam
    bound: Enclosure
    rows: tuple[ChainRow, ...]
    violations: tuple[tuple[int, str], ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def verify_norm_chain(q: QParam, n_max: int, k_max: int | None = None, mapper=None) -> ChainReport:
    """`mapper` may be a parallel ordered map(fn, items) -> list; the sweep over
    n is embarrassingly parallel and aggregation stays deterministic."""
    bound = norm_ratio_bound(q)
    # warm the shared factories before fanning out so every task sees the
    # same provider and weight objects
    haar_weights(little_q_legendre(q))

    def one(n: int) -> ChainRow:
        return ChainRow(n=n, l2_sq=l2_norm_sq(q, n), l1=l1_norm(q, n, k_max))

    if mapper is None:
        rows = [one(n) for n in range(n_max + 1)]
    else:
        rows = list(mapper(one, range(n_max + 1)))
    violations: list[tuple[int, str]] = []
    for row in rows:
        if not 0 < row.l2_sq < row.l1.lo:
            violations.append((row.n, f"l2^2={row.l2_sq} not strictly below l1 partial {row.l1.lo}"))
        if not row.l1.hi < bound.hi * row.l2_sq:
            violations.append((row.n, f"l1 upper {row.l1.hi} not below C.hi*l2^2"))
    return ChainReport(q=q, bound=bound, rows=tuple(rows), violations=tuple(violations))


@dataclass(frozen=True)
class AsymptoteRow:
    k: int
    quotient: Fraction
    drift: Enclosure


@dataclass(frozen=True)
class AsymptoteReport:
    """Exact quotients alpha(n+k)/((-1)^k q^(k(k+1)/2)) against the enclosed
    limit constant (q^(n+1); q)_inf / (q; q)_inf."""

    q: QParam
    n: int
    constant: Enclosure
    rows: tuple[AsymptoteRow, ...]

    @property
    def max_drift_hi(self) -> Fraction:
        return max(row.drift.hi for row in self.rows)


def asymptote_check(q: QParam, n: int, ks) -> AsymptoteReport:
    from .scalar import q_pochhammer_inf

    provider = little_q_legendre(q)
    x = 1 - q.q**n
    ks = sorted(ks)
    vals = provider.poly_values(x, n + max(ks))
    constant = q_pochhammer_inf(q.q ** (n + 1), q) / q_pochhammer_inf(q.q, q)
    rows = []
    for k in ks:
        scale = (-1) ** k * q.q ** (k * (k + 1) // 2)
        quotient = vals[n + k] / scale
        drift = abs(Enclosure.point(quotient) - constant)
        rows.append(AsymptoteRow(k=k, quotient=quotient, drift=drift))
    return AsymptoteReport(q=q, n=n, constant=constant, rows=tuple(rows))
