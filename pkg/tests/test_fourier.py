from fractions import Fraction

import pytest

from qhyper import fourier as fo
from qhyper import recurrence as rec
from qhyper.characters import character, k_threshold
from qhyper.hypergroup import convolve, lql_hypergroup
from qhyper.scalar import QParam, q_pochhammer_inf, Enclosure


def test_fourier_of_epsilon_is_polynomial_value(q23):
    hg = lql_hypergroup(q23)
    x = Fraction(3, 7)
    for k in range(6):
        assert fo.fourier(hg.epsilon(k), x) == hg.provider.poly(k, x)


def test_fourier_difference_closed_form(q23):
    hg = lql_hypergroup(q23)
    f = hg.epsilon(0).sub(hg.epsilon(1))
    for n in range(21):
        assert fo.fourier(f, fo.SpectrumPoint.at(n)) == (q23.q + 1) * q23.q**n


def test_fourier_is_algebra_map(q23):
    hg = lql_hypergroup(q23)
    f = hg.hseq({0: Fraction(1, 2), 3: Fraction(-2, 7), 4: Fraction(1, 9)})
    g = hg.hseq({1: Fraction(3, 4), 2: Fraction(1, 3)})
    c = convolve(f, g)
    points = [fo.SpectrumPoint.at(m) for m in range(9)] + [fo.SpectrumPoint.one()]
    for pt in points:
        assert fo.fourier(c, pt) == fo.fourier(f, pt) * fo.fourier(g, pt)


def test_fourier_at_one_is_haar_sum(q23):
    hg = lql_hypergroup(q23)
    f = hg.hseq({0: 1, 2: Fraction(-1, 4)})
    expected = sum(f[k] * hg.h(k) for k in f.support)
    assert fo.fourier(f, fo.SpectrumPoint.one()) == expected


def test_plancherel_epsilons(q23):
    hg = lql_hypergroup(q23)
    lhs, rhs = fo.plancherel_check(hg.epsilon(0), 10)
    assert lhs == 1 and rhs.contains(lhs)
    lhs, rhs = fo.plancherel_check(hg.epsilon(1), 12)
    assert lhs == Fraction(6, 19) and rhs.contains(lhs)


@pytest.mark.parametrize("seed", range(3))
def test_plancherel_random(q23, seed):
    import random

    rng = random.Random(seed)
    hg = lql_hypergroup(q23)
    f = hg.hseq({rng.randrange(10): Fraction(rng.randrange(-9, 10), rng.randrange(1, 7)) for _ in range(5)})
    lhs, rhs = fo.plancherel_check(f, 14)
    assert rhs.contains(lhs)
    assert rhs.width <= f.norm1() ** 2 * q23.q**15


def test_inverse_plancherel_pbasis(q23):
    hg = lql_hypergroup(q23)
    for n in range(8):
        coeffs = [0] * n + [1]
        for k in range(10):
            expected = 1 / hg.h(k) if k == n else 0
            assert fo.inverse_plancherel_poly(q23, coeffs, k, basis="pbasis") == expected


def test_inverse_plancherel_constant_and_orthonormal_square(q23):
    assert fo.inverse_plancherel_poly(q23, [1], 0) == 1
    assert fo.inverse_plancherel_poly(q23, [1], 3) == 0
    hg = lql_hypergroup(q23)
    c1 = hg.provider.monomial_coeffs(1)
    p1_sq = tuple(hg.h(1) * v for v in rec.poly_mul(c1, c1))
    assert fo.inverse_plancherel_poly(q23, p1_sq, 0) == 1


def test_inverse_plancherel_rejects_unknown_basis(q23):
    with pytest.raises(ValueError):
        fo.inverse_plancherel_poly(q23, [1], 0, basis="chebyshev")


def test_kappa_base_cases(q23):
    assert fo.kappa(q23, 0).support == ()
    k1 = fo.kappa(q23, 1)
    assert k1.support == (0,)
    assert k1[0] == Fraction(5, 3)


def test_kappa_expansion_identity(q23):
    hg = lql_hypergroup(q23)
    for n in range(1, 16):
        kn = fo.kappa(q23, n)
        assert kn.support and max(kn.support) == n - 1
        deriv = rec.poly_diff(hg.provider.monomial_coeffs(n))
        for m in range(n):
            x = 1 - q23.q**m
            lhs = rec.poly_eval(deriv, x)
            rhs = sum(kn[k] * hg.provider.poly(k, x) * hg.h(k) for k in kn.support)
            assert lhs == rhs


def test_kappa_conv_sup_zero(q23):
    hg = lql_hypergroup(q23)
    assert fo.kappa_conv_sup(q23, 4, hg.hseq({}), 6).lo == 0


def test_kappa_conv_trivial_character_growth(q23):
    # with the all-ones sequence the translated sums collapse to the Haar
    # functional, so the window maximum equals |P_n'(1)|
    maxima = []
    for n in range(1, 13):
        phi = fo.trivial_character_prefix(q23, n - 1 + 12)
        enc = fo.kappa_conv_sup(q23, n, phi, 12)
        deriv_at_one = rec.poly_eval(
            rec.poly_diff(rec.little_q_legendre(q23).monomial_coeffs(n)), 1
        )
        assert enc.lo == abs(deriv_at_one)
        maxima.append(enc.lo)
    assert all(maxima[i] <= maxima[i + 1] for i in range(len(maxima) - 1))


def test_kappa_conv_character_growth(q23):
    tc = character(q23, 1, k_max=1 + k_threshold(q23) + 40)
    first = fo.kappa_conv_sup(q23, 1, tc, 12).lo
    last = fo.kappa_conv_sup(q23, 12, tc, 12).lo
    assert last > 10 * first


def test_kappa_conv_rejects_short_prefix(q23):
    tc = character(q23, 0, k_max=k_threshold(q23))
    with pytest.raises(ValueError):
        fo.kappa_conv_sup(q23, 10, tc, 10)


def test_cesaro_fn_mass(q23):
    for n in range(13):
        assert fo.cesaro_fn(q23, n, 0) == 1


def test_cesaro_fn_drift_to_one(q23):
    gap = abs(fo.cesaro_fn(q23, 30, 1) - 1)
    assert gap < Fraction(1, 100)


def test_cesaro_mean_between_extremes(q23):
    values = [fo.cesaro_fn(q23, j, 1) for j in range(6)]
    mean = fo.cesaro_Fn(q23, 5, 1)
    assert min(values) <= mean <= max(values)


def test_haar_sums_unbounded(q23):
    # partial sums of h grow monotonically past any fixed threshold
    hw = rec.haar_weights(rec.little_q_legendre(q23))
    assert hw.partial_sum(40) > 10**6
    assert all(hw.partial_sum(n + 1) > hw.partial_sum(n) for n in range(40))


def test_p4_base_case(q23):
    report = fo.p4_integral(q23, 0)
    assert report.integral == 1 and report.ratio_to_h == 1 and report.ok


@pytest.mark.parametrize("qs", ["1/4", "2/3"])
def test_p4_atom_bound(qs):
    q = QParam.parse(qs)
    for n in range(21):
        report = fo.p4_integral(q, n)
        assert report.ok
        assert report.integral == report.ratio_to_h * rec.haar_weights(
            rec.little_q_legendre(q)
        ).value(n)


def test_p4_ratio_above_limit_window(q14):
    # every computed ratio for n <= 20 stays above the certified enclosure of
    # the limiting lower bound (q;q)_inf^4 (gamma_0 - gamma_1)^4
    poch = q_pochhammer_inf(q14.q, q14)
    diff = Enclosure.point(fo.gamma_term(q14, 0) - fo.gamma_term(q14, 1))
    bound = poch * poch * poch * poch * (diff * diff * diff * diff)
    for n in range(21):
        assert fo.p4_integral(q14, n).ratio_to_h >= bound.hi


def test_p4_divergence_trend(q14):
    values = [fo.p4_integral(q14, n).integral for n in range(9)]
    assert any(v > 1000 for v in values)
    assert values[-1] > values[3] > values[1]


def test_gamma_ratio_rule(q14, q23):
    # ratio gamma_{k+1}/gamma_k = q^(3k+2)/(1-q^(k+1))^3, decreasing in k
    for q in (q14, q23):
        for k in range(6):
            lhs = fo.gamma_term(q, k + 1) / fo.gamma_term(q, k)
            assert lhs == q.q ** (3 * k + 2) / (1 - q.q ** (k + 1)) ** 3


def test_qlimit_leibniz_route(q14):
    report = fo.qlimit_identity(q14, 30)
    assert report.tail_rule == "leibniz"
    assert report.identities_ok
    assert report.drift(30) < Fraction(1, 10**6)
    # drift shrinks along the diagonal
    assert report.drift(30) < report.drift(10) < report.drift(3)


def test_qlimit_absolute_route(q23):
    report = fo.qlimit_identity(q23, 12)
    assert report.tail_rule == "absolute"
    assert report.identities_ok
    assert report.rhs.width < Fraction(1, 10**20)


def test_pochhammer_transform_example(q23):
    assert fo.check_pochhammer_transform(q23, 5, 2)


def test_diagonal_closed_sum_matches_eval(q23, q14):
    for q in (q23, q14):
        provider = rec.little_q_legendre(q)
        for n in range(13):
            assert fo.diagonal_closed_sum(q, n) == provider.poly(n, 1 - q.q**n)
