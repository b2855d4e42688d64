from fractions import Fraction

import pytest

from qhyper import recurrence as rec
from qhyper.scalar import QParam

SPECTRAL_M = 10


def spectral_points(q, m_max=SPECTRAL_M):
    return [1 - q.q**m for m in range(m_max + 1)]


def test_base_coeffs_examples(q23):
    p = rec.little_q_legendre(q23)
    assert p.coeffs(0) == (Fraction(3, 5), Fraction(2, 5), Fraction(0))
    assert p.coeffs(1) == (Fraction(150, 247), Fraction(1, 13), Fraction(6, 19))


def test_chebyshev_coeffs():
    assert rec.chebyshev1().coeffs(5) == (Fraction(1, 2), Fraction(0), Fraction(1, 2))


def test_comparison_family_coeffs():
    assert rec.ultraspherical_m14().coeffs(3) == (Fraction(7, 13), Fraction(0), Fraction(6, 13))
    assert rec.legendre().coeffs(4) == (Fraction(5, 9), Fraction(0), Fraction(4, 9))


@pytest.mark.parametrize("qs", ["2/3", "1/2", "1/5", "9/10"])
def test_triple_ranges_and_sum(qs):
    p = rec.little_q_legendre(QParam.parse(qs))
    a0, b0, c0 = p.coeffs(0)
    assert a0 > 0 and b0 < 1 and c0 == 0
    for n in range(1, 41):
        a, b, c = p.coeffs(n)
        assert a + b + c == 1
        assert 0 < a < 1 and 0 < c < 1 and 0 <= b < 1


def test_base_b_closed_form(q23):
    p = rec.little_q_legendre(q23)
    q = q23.q
    for n in range(1, 31):
        b = p.coeffs(n)[1]
        assert b == (1 - q**n) * (1 - q ** (n + 1)) / ((1 + q**n) * (1 + q ** (n + 1)))


def test_haar_examples(q23):
    hw = rec.haar_weights(rec.little_q_legendre(q23))
    assert hw.value(0) == 1
    assert hw.value(1) == Fraction(19, 6)
    assert hw.value(2) == Fraction(211, 36)


def test_haar_closed_form_deep(q23):
    # the HaarWeights constructor asserts recursion == closed form per value
    hw = rec.haar_weights(rec.little_q_legendre(q23))
    assert hw.value(200) == rec.lql_haar_closed(q23, 200)


def test_haar_partial_sum_identity(q23, q12):
    for q in (q23, q12):
        hw = rec.haar_weights(rec.little_q_legendre(q))
        for n in range(101):
            assert hw.partial_sum(n) == rec.lql_haar_partial_closed(q, n)
            assert hw.partial_sum(n) < hw.value(n) / (1 - q.q)


def test_haar_step_estimate(q23):
    # h(m+k)/h(m) < q^-k / (1 - q^(2m+1))
    hw = rec.haar_weights(rec.little_q_legendre(q23))
    q = q23.q
    for m in range(0, 12, 3):
        for k in range(0, 12, 3):
            assert hw.value(m + k) / hw.value(m) < q**-k / (1 - q ** (2 * m + 1))


def test_chebyshev_haar():
    hw = rec.haar_weights(rec.chebyshev1())
    assert hw.value(0) == 1
    for n in range(1, 10):
        assert hw.value(n) == 2


def test_eval_poly_normalization(q23):
    p = rec.little_q_legendre(q23)
    for n in range(41):
        assert p.poly(n, 1) == 1


def test_eval_poly_examples(q23):
    p = rec.little_q_legendre(q23)
    assert p.poly(1, Fraction(1, 3)) == Fraction(-1, 9)
    assert p.poly(1, 0) == Fraction(-2, 3)


def test_eval_poly_at_zero_closed_form(q23, q12):
    # P_n(0) = (-1)^n q^(n(n+1)/2); 0 = 1 - q^0 is the first support point
    for q in (q23, q12):
        p = rec.little_q_legendre(q)
        for n in range(21):
            assert p.poly(n, 0) == (-1) ** n * q.q ** (n * (n + 1) // 2)


def test_eval_poly_phi_examples(q23):
    assert rec.eval_poly_phi(q23, 0, Fraction(17, 5)) == 1
    assert rec.eval_poly_phi(q23, 1, Fraction(1, 3)) == Fraction(-1, 9)
    x = 1 - q23.q**3
    assert rec.eval_poly_phi(q23, 5, x) == rec.little_q_legendre(q23).poly(5, x)


def test_eval_routes_agree(q23):
    p = rec.little_q_legendre(q23)
    for n in range(41):
        for x in spectral_points(q23):
            assert p.poly(n, x) == rec.eval_poly_phi(q23, n, x)


def test_spectral_values_bounded(q23):
    p = rec.little_q_legendre(q23)
    for n in range(41):
        for x in spectral_points(q23):
            assert abs(p.poly(n, x)) <= 1


def test_mu_mass(q23):
    assert rec.mu_mass(q23, 0) == Fraction(1, 3)
    assert rec.mu_mass(q23, 1) == Fraction(2, 9)
    for N in (3, 7, 15):
        total = sum(rec.mu_mass(q23, n) for n in range(N + 1))
        assert total == 1 - q23.q ** (N + 1)


def test_mu_moments(q23):
    assert rec.mu_moment(q23, 0) == 1
    assert rec.mu_moment(q23, 1) == Fraction(2, 5)
    # second moment pinned by orthogonality of P_1
    p = rec.little_q_legendre(q23)
    c1 = p.monomial_coeffs(1)
    assert rec.integrate_poly_mu(q23, rec.poly_mul(c1, c1)) == Fraction(6, 19)


def test_orthogonality_via_moments(q23):
    p = rec.little_q_legendre(q23)
    hw = rec.haar_weights(p)
    coeffs = [p.monomial_coeffs(n) for n in range(26)]
    moments = [rec.mu_moment(q23, j) for j in range(51)]
    for m in range(26):
        for n in range(m, 26):
            value = sum(
                a * b * moments[i + j]
                for i, a in enumerate(coeffs[m])
                if a
                for j, b in enumerate(coeffs[n])
                if b
            )
            assert value == (1 / hw.value(n) if m == n else 0), (m, n)


def test_monomial_coeffs_match_eval(q23):
    p = rec.little_q_legendre(q23)
    for n in (0, 1, 2, 5, 9):
        cn = p.monomial_coeffs(n)
        assert len(cn) == n + 1
        for x in (Fraction(0), Fraction(1), Fraction(3, 7), Fraction(-1, 2)):
            assert rec.poly_eval(cn, x) == p.poly(n, x)


def test_classical_monomials():
    assert rec.chebyshev1().monomial_coeffs(2) == (Fraction(-1), Fraction(0), Fraction(2))
    assert rec.chebyshev1().monomial_coeffs(3) == (
        Fraction(0),
        Fraction(-3),
        Fraction(0),
        Fraction(4),
    )
    assert rec.legendre().monomial_coeffs(2) == (Fraction(-1, 2), Fraction(0), Fraction(3, 2))


def test_poly_helpers():
    f = (Fraction(1), Fraction(2), Fraction(3))
    g = (Fraction(0), Fraction(1))
    assert rec.poly_mul(f, g) == (Fraction(0), Fraction(1), Fraction(2), Fraction(3))
    assert rec.poly_diff(f) == (Fraction(2), Fraction(6))
    assert rec.poly_diff((Fraction(5),)) == (Fraction(0),)
