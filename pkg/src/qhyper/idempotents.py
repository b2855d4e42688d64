"""Idempotents of the weighted-l1 algebra: the normalized characters
e_n = alpha_{1-q^n} / ||alpha_{1-q^n}||_2^2, their Fourier characterization
(e_n^ is the indicator of the spectral point 1 - q^n), pairwise orthogonality,
and the idempotent-span approximation of the normalized point sequences.

Everything here combines exact finite sums over truncated characters with the
certified l1 tail bounds those truncations carry, so every reported interval
is a true enclosure.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .characters import TruncatedCharacter, character, k_threshold, l2_norm_sq
from .hypergroup import HSeq, lql_hypergroup
from .recurrence import little_q_legendre, poly_diff
from .scalar import Enclosure, QParam

_ZERO = Fraction(0)


@dataclass(frozen=True)
class IdempotentApprox:
    """Truncation of e_n = alpha_{1-q^n} scaled by q^n(1-q) (the exact inverse
    of the squared 2-norm), with the inherited l1 tail bound."""

    q: QParam
    n: int
    body: TruncatedCharacter
    scale: Fraction

    @property
    def k_max(self) -> int:
        return self.body.k_max

    @property
    def tail_l1_bound(self) -> Fraction:
        return self.scale * self.body.tail_l1_bound

    def value(self, k: int) -> Fraction:
        return self.scale * self.body.values[k]

    def as_hseq(self) -> HSeq:
        hg = lql_hypergroup(self.q)
        return hg.hseq({k: self.scale * v for k, v in enumerate(self.body.values)})

    def l1_enclosure(self) -> Enclosure:
        lo = self.scale * self.body.partial_l1()
        return Enclosure(lo, lo + self.tail_l1_bound)


def idempotent(q: QParam, n: int, k_max: int | None = None) -> IdempotentApprox:
    scale = q.q**n * (1 - q.q)
    assert scale == 1 / l2_norm_sq(q, n)
    return IdempotentApprox(q=q, n=n, body=character(q, n, k_max), scale=scale)


def idempotent_fourier(e: IdempotentApprox, m: int) -> Enclosure:
    """Enclosure of e_n^ at the spectral point 1 - q^m; must contain
    delta_{mn}.

    The finite part is exact; the dropped terms are bounded in absolute value
    by the l1 tail bound since |P_k| <= 1 on the spectrum.
    """
    q = e.q
    provider = little_q_legendre(q)
    hg = lql_hypergroup(q)
    x = 1 - q.q**m
    vals = provider.poly_values(x, e.k_max)
    finite = sum(
        (e.value(k) * vals[k] * hg.h(k) for k in range(e.k_max + 1)),
        _ZERO,
    )
    tail = e.tail_l1_bound
    return Enclosure(finite - tail, finite + tail)


def fourier_delta_table(q: QParam, probe: int, k_max: int | None = None) -> list[list[Enclosure]]:
    """Matrix of enclosures e_n^(1 - q^m) for m, n <= probe; certified to
    contain the identity matrix."""
    es = [idempotent(q, n, k_max) for n in range(probe + 1)]
    return [[idempotent_fourier(es[n], m) for n in range(probe + 1)] for m in range(probe + 1)]


@dataclass(frozen=True)
class OrthogonalityReport:
    """Two-sided orthogonality evidence for a pair of distinct idempotents:
    Fourier products at probe points (all must enclose 0) and exact values of
    the truncated time-side convolution together with its certified sup-norm
    bound."""

    q: QParam
    m: int
    n: int
    fourier_products: tuple[Enclosure, ...]
    time_values: tuple[Fraction, ...]
    linf_bound: Fraction

    @property
    def ok(self) -> bool:
        products_ok = all(p.contains(0) for p in self.fourier_products)
        time_ok = all(abs(v) <= self.linf_bound for v in self.time_values)
        return products_ok and time_ok

    @property
    def max_product_width(self) -> Fraction:
        return max(p.width for p in self.fourier_products)

    def time_enclosure(self) -> Enclosure:
        return Enclosure(-self.linf_bound, self.linf_bound)


def orthogonality_check(
    q: QParam, m: int, n: int, probe: int, k_max: int | None = None
) -> OrthogonalityReport:
    """Certify e_m * e_n = 0 for m != n on a finite probe window.

    Fourier side: the product of the two transform enclosures at each probe
    point must contain 0.  Time side: with e = truncation + remainder and
    e_m * e_n = 0 exactly, the truncated convolution is bounded in sup norm by
    ||~e_m||_1 tau_n + tau_m ||~e_n||_1 + tau_m tau_n (sup norm <= weighted
    l1 norm since h >= 1); its exact values at the probe points must respect
    that bound.
    """
    if m == n:
        raise ValueError("orthogonality is a statement about distinct indices")
    hg = lql_hypergroup(q)
    em = idempotent(q, m, k_max)
    en = idempotent(q, n, k_max)
    products = tuple(
        idempotent_fourier(em, j) * idempotent_fourier(en, j) for j in range(probe + 1)
    )
    fm, fn = em.as_hseq(), en.as_hseq()
    tau_m, tau_n = em.tail_l1_bound, en.tail_l1_bound
    bound = fm.norm1() * tau_n + tau_m * fn.norm1() + tau_m * tau_n
    table = hg.table
    time_values = []
    for j in range(probe + 1):
        val = _ZERO
        for k, gv in fn.items():
            row = table.row(k, j)
            tf = sum((row[i] * fv for i, fv in fm.items() if i in row), _ZERO)
            if tf:
                val += tf * gv * hg.h(k)
        time_values.append(val)
    return OrthogonalityReport(
        q=q,
        m=m,
        n=n,
        fourier_products=products,
        time_values=tuple(time_values),
        linf_bound=bound,
    )


def fourier_coefficient(q: QParam, k: int, n: int) -> Fraction:
    """(epsilon_0 - epsilon_k)^ at the spectral point 1 - q^n, the coefficient
    of e_n in the idempotent-span expansion of epsilon_0 - epsilon_k."""
    provider = little_q_legendre(q)
    return 1 - provider.poly(k, 1 - q.q**n)


def approx_epsilon(q: QParam, k: int, N: int, k_max: int | None = None) -> Enclosure:
    """Certified enclosure of the residual l1 distance between epsilon_k and
    the order-N idempotent-span approximation epsilon_0 - sum_{n<=N} c_n e_n
    with c_n = (epsilon_0 - epsilon_k)^(1 - q^n).

    The truncated combination is summed exactly; replacing each truncated e_n
    by the full character moves the l1 norm by at most sum |c_n| tau_n.
    """
    if k_max is None:
        k_max = N + k_threshold(q) + 40
    hg = lql_hypergroup(q)
    resid = hg.epsilon(k).sub(hg.epsilon(0))
    err = _ZERO
    for n in range(N + 1):
        c = fourier_coefficient(q, k, n)
        e = idempotent(q, n, k_max)
        resid = resid.add(e.as_hseq().scale(c))
        err += abs(c) * e.tail_l1_bound
    norm = resid.norm1()
    return Enclosure(max(_ZERO, norm - err), norm + err)


def residual_curve(q: QParam, k: int, n_max: int, k_max: int | None = None) -> list[Enclosure]:
    """Residual enclosures for N = 0..n_max at a shared truncation depth."""
    if k_max is None:
        k_max = n_max + k_threshold(q) + 40
    return [approx_epsilon(q, k, N, k_max) for N in range(n_max + 1)]


def mvt_coeff_bound(q: QParam, k: int) -> Fraction:
    """Rigorous upper bound for max over [0,1] of |P_k'|: the sum of absolute
    monomial coefficients of the derivative (coarse but certified)."""
    provider = little_q_legendre(q)
    return sum((abs(c) for c in poly_diff(provider.monomial_coeffs(k))), _ZERO)


def span_tail_envelope(q: QParam, k: int, N: int) -> Fraction:
    """Certified envelope for the order-N span residual, valid for every q:
    the dropped terms satisfy |c_n| ||e_n||_1 <= sup|P_k'| q^n * C, so the
    residual is below C * sup|P_k'| * q^(N+1)/(1-q).

    The residual itself need not decrease monotonically in N (for q close to
    1 it provably overshoots before decaying); this envelope always does.
    """
    from .characters import norm_ratio_bound

    return norm_ratio_bound(q).hi * mvt_coeff_bound(q, k) * q.q ** (N + 1) / (1 - q.q)
