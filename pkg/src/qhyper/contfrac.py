"""Coefficient functions for the character-ratio continued fractions and
their Worpitzky-certified evaluation.

For the little q-Legendre family the four coefficient functions are

    A_n(k) = [b_{k+1} - P_1(1-q^n)] [b_{k+2} - P_1(1-q^n)] / (a_{k+1} c_{k+2})
    B_n(k) = [b_{n+k+1} - P_1(1-q^n)] q^k / c_{n+k+1}
    C_n(k) = [b_{k+1} - P_1(1-q^n)] / a_{k+1}
    D_n(k) = [b_{k+2} - P_1(1-q^n)] / c_{k+2},

so A = C*D.  Beyond the threshold K one has A_n(n+k) > 4 exactly, which
certifies |1/A| < 1/4 and puts the continued fractions

    psi_{n,k} = 1/(1 - (1/A_n(n+k))/(1 - (1/A_n(n+k+1))/(1 - ...)))

inside the Worpitzky disk; on the real line that disk is the interval
[2/3, 2].  Evaluation truncates at a finite depth, seeds the tail with the
whole disk, and propagates exact interval arithmetic outward, so the result
is a true enclosure at every depth.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .characters import k_threshold
from .recurrence import little_q_legendre
from .scalar import Enclosure, QParam

_QUARTER = Fraction(1, 4)

WORPITZKY_INTERVAL = Enclosure(Fraction(2, 3), Fraction(2))

_TAIL_SEED = Enclosure(Fraction(1, 2), Fraction(3, 2))
_ROUND_BITS = 256


def _round_out(enc: Enclosure) -> Enclosure:
    """Outward rounding to dyadic endpoints with denominator 2**_ROUND_BITS.

    Keeps the interval a true enclosure while capping the size of the
    rationals flowing through deep continued-fraction recursions; the added
    width per application is below 2**(1 - _ROUND_BITS).
    """
    scale = 1 << _ROUND_BITS
    lo = Fraction(enc.lo.numerator * scale // enc.lo.denominator, scale)
    hi = Fraction(-((-enc.hi.numerator * scale) // enc.hi.denominator), scale)
    return Enclosure(lo, hi)

PSI_TAIL_CERTIFICATE = (
    "per-level coefficients exceed 4 beyond the threshold index, "
    "so every partial numerator has magnitude below 1/4"
)


def _p1_at_spectral(q: QParam, n: int) -> Fraction:
    """P_1(1 - q^n) = 1 - (1+q) q^n."""
    return 1 - (1 + q.q) * q.q**n


def coeff_a(q: QParam, n: int, k: int) -> Fraction:
    return coeff_c(q, n, k) * coeff_d(q, n, k)


def coeff_b(q: QParam, n: int, k: int) -> Fraction:
    provider = little_q_legendre(q)
    b_next = provider.coeffs(n + k + 1)[1]
    c_next = provider.coeffs(n + k + 1)[2]
    return (b_next - _p1_at_spectral(q, n)) * q.q**k / c_next


def coeff_c(q: QParam, n: int, k: int) -> Fraction:
    provider = little_q_legendre(q)
    return (provider.coeffs(k + 1)[1] - _p1_at_spectral(q, n)) / provider.coeffs(k + 1)[0]


def coeff_d(q: QParam, n: int, k: int) -> Fraction:
    provider = little_q_legendre(q)
    return (provider.coeffs(k + 2)[1] - _p1_at_spectral(q, n)) / provider.coeffs(k + 2)[2]


_KINDS = {"A": coeff_a, "B": coeff_b, "C": coeff_c, "D": coeff_d}


def cf_coefficient(kind: str, q: QParam, n: int, k: int) -> Fraction:
    """Dispatch on the coefficient family label, one of 'A', 'B', 'C', 'D'."""
    try:
        fn = _KINDS[kind]
    except KeyError:
        raise ValueError(f"unknown coefficient kind {kind!r}") from None
    return fn(q, n, k)


@dataclass(frozen=True)
class WorpitzkyResult:
    """Enclosure of a continued fraction 1/(1 + s_0/(1 + s_1/(1 + ...)))
    whose partial numerators satisfy |s_j| <= 1/4."""

    value: Enclosure
    disk_certified: bool
    depth: int
    tail_certificate: str


def worpitzky_eval(
    s: Callable[[int], Fraction],
    depth: int,
    tail_certificate: str,
) -> WorpitzkyResult:
    """Depth-truncated evaluation with the tail replaced by the full disk.

    The prefix values s(0..depth-1) are checked exactly against |s| <= 1/4;
    the caller certifies (analytically, via `tail_certificate`) that the
    bound persists beyond the checked prefix.  Writing the fraction as
    1/W_0 with W_j = 1 + s_j/W_{j+1}, the tail seed is W_depth in [1/2, 3/2]
    and each backward step stays inside [1/2, 3/2], so the division is
    always well defined and the final value lies in [2/3, 2].
    """
    if depth < 1:
        raise ValueError("depth must be positive")
    w = _TAIL_SEED
    for j in reversed(range(depth)):
        sj = Fraction(s(j))
        if abs(sj) > _QUARTER:
            raise ValueError(f"partial numerator s_{j}={sj} violates |s| <= 1/4")
        w = _round_out(1 + Enclosure.point(sj) / w)
        # every exact level value lies in the seed interval, so intersecting
        # with it preserves the enclosure and keeps the recursion in-band
        w = Enclosure(max(w.lo, _TAIL_SEED.lo), min(w.hi, _TAIL_SEED.hi))
    value = 1 / w
    assert WORPITZKY_INTERVAL.encloses(value)
    return WorpitzkyResult(
        value=value, disk_certified=True, depth=depth, tail_certificate=tail_certificate
    )


def psi(q: QParam, n: int, k: int, depth: int = 80) -> Enclosure:
    """Enclosure of psi_{n,k} for k >= K, via the Worpitzky evaluation with
    partial numerators s_j = -1/A_n(n+k+j)."""
    if k < k_threshold(q):
        raise ValueError(f"k={k} below threshold K={k_threshold(q)}")
    result = worpitzky_eval(
        lambda j: -1 / coeff_a(q, n, n + k + j),
        depth,
        PSI_TAIL_CERTIFICATE,
    )
    return result.value


@dataclass(frozen=True)
class Lemma22Row:
    n: int
    k: int
    a_value: Fraction
    b_value: Fraction
    c_value: Fraction


@dataclass(frozen=True)
class Lemma22Report:
    q: QParam
    K: int
    rows: tuple[Lemma22Row, ...]
    violations: tuple[tuple[int, int, str], ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def verify_lemma22(q: QParam, n_max: int, k_max: int) -> Lemma22Report:
    """Exact coefficient bounds over n <= n_max, K <= k <= k_max:

        A_n(n+k) > 4,  B_n(k) > 1/(2q),
        C_n(n+k) > 1/q^(k+1) - 2,  B_n(k) > (1 - 2 q^(k+1))/q,

    plus 0 < 1/A_n(n+k) < 1/4 (the Worpitzky admissibility of the psi
    numerators)."""
    K = k_threshold(q)
    qq = q.q
    rows: list[Lemma22Row] = []
    violations: list[tuple[int, int, str]] = []
    for n in range(n_max + 1):
        for k in range(K, k_max + 1):
            a = coeff_a(q, n, n + k)
            b = coeff_b(q, n, k)
            c = coeff_c(q, n, n + k)
            rows.append(Lemma22Row(n=n, k=k, a_value=a, b_value=b, c_value=c))
            if not a > 4:
                violations.append((n, k, f"A={a} <= 4"))
            elif not 0 < 1 / a < _QUARTER:
                violations.append((n, k, f"1/A={1 / a} outside (0, 1/4)"))
            if not b > 1 / (2 * qq):
                violations.append((n, k, f"B={b} <= 1/(2q)"))
            if not c > qq ** -(k + 1) - 2:
                violations.append((n, k, f"C={c} <= 1/q^(k+1) - 2"))
            if not b > (1 - 2 * qq ** (k + 1)) / qq:
                violations.append((n, k, f"B={b} <= (1-2q^(k+1))/q"))
    return Lemma22Report(q=q, K=K, rows=tuple(rows), violations=tuple(violations))


def character_ratio(q: QParam, n: int, k: int) -> Fraction:
    """The exact rational -B_n(k) alpha(n+k+1) / (alpha(n+k) q^k), which the
    psi enclosure must contain for k >= K."""
    provider = little_q_legendre(q)
    x = 1 - q.q**n
    vals = provider.poly_values(x, n + k + 1)
    if vals[n + k] == 0:
        raise ZeroDivisionError(f"character vanishes at index {n + k}")
    return -coeff_b(q, n, k) * vals[n + k + 1] / (vals[n + k] * q.q**k)
