"""Fourier transform on the spectrum, Plancherel checks, inverse transform of
polynomials via exact moments, derivative-expansion coefficients, and the
limit identities for the diagonal character values P_n(1 - q^n).

The spectrum of the little q-Legendre hypergroup is {1} together with the
support points 1 - q^m; the Fourier transform of a finitely supported f is
the exact finite sum f^(x) = sum_k f(k) P_k(x) h(k).  All integrals against
the orthogonality measure go through the exact moment formula, never through
truncated support sums, except in `plancherel_check` where truncation with
the q^(N+1) mass-tail certificate is the point being demonstrated.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .characters import TruncatedCharacter
from .hypergroup import HSeq, lql_hypergroup, translate
from .recurrence import (
    LittleQLegendre,
    haar_weights,
    integrate_poly_mu,
    little_q_legendre,
    mu_mass,
    poly_diff,
    poly_mul,
)
from .scalar import Enclosure, QParam, q_pochhammer, q_pochhammer_inf

_ZERO = Fraction(0)
_ONE = Fraction(1)


@dataclass(frozen=True)
class SpectrumPoint:
    """A point of the spectrum: index m for x = 1 - q^m, or the point 1."""

    index: int | None

    @classmethod
    def at(cls, m: int) -> "SpectrumPoint":
        if m < 0:
            raise ValueError("index must be nonnegative")
        return cls(m)

    @classmethod
    def one(cls) -> "SpectrumPoint":
        return cls(None)

    def x(self, q: QParam) -> Fraction:
        return _ONE if self.index is None else 1 - q.q**self.index


def _resolve_x(f: HSeq, x) -> Fraction:
    if isinstance(x, SpectrumPoint):
        provider = f.hg.provider
        if not isinstance(provider, LittleQLegendre):
            raise TypeError("spectrum points require the little q-Legendre family")
        return x.x(provider.q)
    return Fraction(x)


def fourier(f: HSeq, x) -> Fraction:
    """f^(x) = sum_k f(k) P_k(x) h(k); x may be a SpectrumPoint or a rational."""
    xv = _resolve_x(f, x)
    provider = f.hg.provider
    return sum((v * provider.poly(k, xv) * f.hg.h(k) for k, v in f.items()), _ZERO)


def plancherel_check(f: HSeq, n_trunc: int) -> tuple[Fraction, Enclosure]:
    """Exact ||f||_2^2 against the spectral sum truncated at n_trunc.

    The dropped spectral mass is exactly q^(N+1) and |f^| <= ||f||_1 on the
    spectrum, so the tail of the integral is at most ||f||_1^2 q^(N+1); the
    left side must lie in the returned enclosure.
    """
    provider = f.hg.provider
    if not isinstance(provider, LittleQLegendre):
        raise TypeError("plancherel_check requires the little q-Legendre family")
    q = provider.q
    lhs = f.norm2_sq()
    partial = _ZERO
    for n in range(n_trunc + 1):
        partial += fourier(f, SpectrumPoint.at(n)) ** 2 * mu_mass(q, n)
    tail = f.norm1() ** 2 * q.q ** (n_trunc + 1)
    return lhs, Enclosure(partial, partial + tail)


def inverse_plancherel_poly(q: QParam, coeffs, k: int, basis: str = "monomial") -> Fraction:
    """Exact value of the inverse transform of a polynomial at index k:
    the integral of F(x) P_k(x) against the measure.

    `coeffs` is the coefficient vector of F, either in the monomial basis
    (lowest degree first) or in the polynomial basis ("pbasis").
    """
    provider = little_q_legendre(q)
    if basis == "pbasis":
        mono = [_ZERO]
        for i, c in enumerate(coeffs):
            if not c:
                continue
            for j, m in enumerate(provider.monomial_coeffs(i)):
                if j >= len(mono):
                    mono.extend([_ZERO] * (j - len(mono) + 1))
                mono[j] += c * m
        coeffs = tuple(mono)
    elif basis != "monomial":
        raise ValueError(f"unknown basis {basis!r}")
    product = poly_mul(tuple(Fraction(c) for c in coeffs), provider.monomial_coeffs(k))
    return integrate_poly_mu(q, product)


def kappa(q: QParam, n: int) -> HSeq:
    """Coefficients of P_n' in the h-weighted polynomial basis:
    P_n'(x) = sum_{k<n} kappa_n(k) P_k(x) h(k), with kappa_0 = 0."""
    hg = lql_hypergroup(q)
    if n == 0:
        return hg.hseq({})
    provider = hg.provider
    deriv = poly_diff(provider.monomial_coeffs(n))
    values = {}
    for k in range(n):
        values[k] = integrate_poly_mu(q, poly_mul(deriv, provider.monomial_coeffs(k)))
    return hg.hseq(values)


def trivial_character_prefix(q: QParam, k_max: int) -> HSeq:
    """The all-ones character truncated to indices 0..k_max."""
    hg = lql_hypergroup(q)
    return hg.hseq({k: _ONE for k in range(k_max + 1)})


def character_prefix_hseq(tc: TruncatedCharacter) -> HSeq:
    """The exact prefix of a truncated character as an HSeq."""
    hg = lql_hypergroup(tc.q)
    return hg.hseq(dict(enumerate(tc.values)))


def kappa_conv_sup(q: QParam, n: int, phi, probe_max: int) -> Enclosure:
    """max_{m <= probe_max} |kappa_n * phi(m)| as an exact point enclosure.

    `phi` is a finitely supported HSeq or a TruncatedCharacter whose prefix
    must cover every index the translated kappa_n touches (k_max >= n - 1 +
    probe_max), so the convolution values are exact.  This is a lower-bound
    witness for the sup norm, trend evidence rather than proof.
    """
    if isinstance(phi, TruncatedCharacter):
        if phi.k_max < n - 1 + probe_max:
            raise ValueError(
                f"character prefix k_max={phi.k_max} too short for probe window "
                f"(need >= {n - 1 + probe_max})"
            )
        phi = character_prefix_hseq(phi)
    hg = lql_hypergroup(q)
    assert phi.hg is hg, "phi must live on the same hypergroup"
    kap = kappa(q, n)
    if not kap.support:
        return Enclosure.point(0)
    best = _ZERO
    for m in range(probe_max + 1):
        shifted = translate(kap, m)
        value = sum((v * phi[k] * hg.h(k) for k, v in shifted.items()), _ZERO)
        best = max(best, abs(value))
    return Enclosure.point(best)


@lru_cache(maxsize=None)
def cesaro_fn(q: QParam, n: int, k: int) -> Fraction:
    """f_n(k) = h(n) * integral of P_n^2 P_k against the measure, the inverse
    transform of the squared orthonormal polynomial."""
    provider = little_q_legendre(q)
    hw = haar_weights(provider)
    cn = provider.monomial_coeffs(n)
    product = poly_mul(poly_mul(cn, cn), provider.monomial_coeffs(k))
    return hw.value(n) * integrate_poly_mu(q, product)


def cesaro_Fn(q: QParam, n: int, k: int) -> Fraction:
    """Cesaro mean (1/(n+1)) sum_{j<=n} f_j(k)."""
    total = sum((cesaro_fn(q, j, k) for j in range(n + 1)), _ZERO)
    return total / (n + 1)


@dataclass(frozen=True)
class P4Report:
    """Exact fourth-moment data of the orthonormal polynomial: the integral
    of p_n^4, its ratio to h(n), and the certified single-atom lower bound
    (1 - q^(2n+1)) P_n^4(1 - q^n) for that ratio."""

    q: QParam
    n: int
    integral: Fraction
    ratio_to_h: Fraction
    atom_lower_bound: Fraction

    @property
    def ok(self) -> bool:
        return self.ratio_to_h >= self.atom_lower_bound


def p4_integral(q: QParam, n: int) -> P4Report:
    provider = little_q_legendre(q)
    hw = haar_weights(provider)
    cn = provider.monomial_coeffs(n)
    sq = poly_mul(cn, cn)
    raw = integrate_poly_mu(q, poly_mul(sq, sq))
    h = hw.value(n)
    diag = provider.poly(n, 1 - q.q**n)
    return P4Report(
        q=q,
        n=n,
        integral=h * h * raw,
        ratio_to_h=h * raw,
        atom_lower_bound=(1 - q.q ** (2 * n + 1)) * diag**4,
    )


def gamma_term(q: QParam, k: int) -> Fraction:
    """gamma_k = q^(k(3k+1)/2) / (q;q)_k^3."""
    return q.q ** (k * (3 * k + 1) // 2) / q_pochhammer(q.q, q, k) ** 3


def check_pochhammer_transform(q: QParam, n: int, k: int) -> bool:
    """Exact identity (q^-n;q)_{n-k} = (-1)^(n-k) q^((k-n)(n+k+1)/2) (q;q)_n/(q;q)_k."""
    lhs = q_pochhammer(q.q**-n, q, n - k)
    expo = (k - n) * (n + k + 1)
    assert expo % 2 == 0
    rhs = (-1) ** (n - k) * q.q ** (expo // 2) * q_pochhammer(q.q, q, n) / q_pochhammer(q.q, q, k)
    return lhs == rhs


def check_prefactor_identity(q: QParam, n: int) -> bool:
    """Exact identity relating P_n(1-q^n), scaled by (-1)^n q^(-n(n+1)/2)/(q;q)_n^2,
    to the q-binomial style double-Pochhammer sum."""
    qq = q.q
    provider = little_q_legendre(q)
    lhs = (-1) ** n * qq ** -(n * (n + 1) // 2) / q_pochhammer(qq, q, n) ** 2
    lhs *= provider.poly(n, 1 - qq**n)
    rhs = _ZERO
    for k in range(n + 1):
        num = q_pochhammer(qq**-n, q, n - k) * qq ** (k * k)
        rhs += num / (q_pochhammer(qq, q, k) ** 2 * q_pochhammer(qq, q, n - k) ** 2)
    return lhs == rhs


def diagonal_closed_sum(q: QParam, n: int) -> Fraction:
    """The closed finite-sum form of P_n(1 - q^n):
    sum_k (-1)^k (q;q)_n^3 q^(k(3k+1)/2) / ((q;q)_k^3 (q;q)_{n-k}^2)."""
    qq = q.q
    pn = q_pochhammer(qq, q, n)
    total = _ZERO
    for k in range(n + 1):
        term = pn**3 * qq ** (k * (3 * k + 1) // 2)
        term /= q_pochhammer(qq, q, k) ** 3 * q_pochhammer(qq, q, n - k) ** 2
        total += -term if k % 2 else term
    return total


def qlimit_rhs(q: QParam, tol: Fraction = Fraction(1, 10**30)) -> tuple[Enclosure, str]:
    """Enclosure of the limit of P_n(1 - q^n): (q;q)_inf * sum_k (-1)^k gamma_k.

    When gamma_1/gamma_0 = q^2/(1-q)^3 < 1 the gamma sequence is strictly
    decreasing (the term ratio itself decreases in k), so consecutive
    alternating partial sums bracket the limit; otherwise the tail is bounded
    absolutely via gamma_k <= q^(k(3k+1)/2) / (q;q)_inf^3."""
    qq = q.q
    poch_inf = q_pochhammer_inf(qq, q, tol=tol)
    leibniz = qq**2 < (1 - qq) ** 3
    if leibniz:
        prev = _ZERO
        partial = _ZERO
        k = 0
        while True:
            g = gamma_term(q, k)
            prev = partial
            partial += -g if k % 2 else g
            if g <= tol and k >= 1:
                break
            k += 1
        series = Enclosure(min(prev, partial), max(prev, partial))
        rule = "leibniz"
    else:
        if poch_inf.lo <= 0:
            raise ValueError("cannot certify a positive lower bound for (q;q)_inf")
        partial = _ZERO
        k = 0
        while True:
            g = gamma_term(q, k)
            partial += -g if k % 2 else g
            bound = qq ** ((k + 1) * (3 * k + 4) // 2) / poch_inf.lo**3
            tail = bound / (1 - qq ** (3 * k + 5))
            if tail <= tol:
                break
            k += 1
        series = Enclosure(partial - tail, partial + tail)
        rule = "absolute"
    return poch_inf * series, rule


@dataclass(frozen=True)
class QLimitReport:
    """Diagonal values P_n(1 - q^n) against the enclosed limit, plus the exact
    finite identities behind the closed sum, checked for n <= identity_max."""

    q: QParam
    lhs: tuple[Fraction, ...]
    rhs: Enclosure
    tail_rule: str
    identity_max: int
    identities_ok: bool

    def drift(self, n: int) -> Fraction:
        """Largest distance from P_n(1 - q^n) to a point of the enclosure."""
        return max(abs(self.lhs[n] - self.rhs.lo), abs(self.lhs[n] - self.rhs.hi))


def qlimit_identity(q: QParam, n_probe: int) -> QLimitReport:
    provider = little_q_legendre(q)
    lhs = tuple(provider.poly(n, 1 - q.q**n) for n in range(n_probe + 1))
    rhs, rule = qlimit_rhs(q)
    identity_max = min(n_probe, 12)
    ok = True
    for n in range(identity_max + 1):
        if not check_prefactor_identity(q, n):
            ok = False
        if diagonal_closed_sum(q, n) != lhs[n]:
            ok = False
        for k in range(n + 1):
            if not check_pochhammer_transform(q, n, k):
                ok = False
    return QLimitReport(
        q=q, lhs=lhs, rhs=rhs, tail_rule=rule, identity_max=identity_max, identities_ok=ok
    )
