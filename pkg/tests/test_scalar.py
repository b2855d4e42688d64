from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qhyper.scalar import Enclosure, QParam, enclosure_arith, q_pochhammer, q_pochhammer_inf

rationals = st.fractions(min_value=-10, max_value=10, max_denominator=50)
small_q = st.fractions(min_value=Fraction(1, 10), max_value=Fraction(9, 10), max_denominator=20)


def test_qparam_validation():
    QParam(Fraction(2, 3))
    with pytest.raises(ValueError):
        QParam(Fraction(3, 2))
    with pytest.raises(ValueError):
        QParam(Fraction(0))
    with pytest.raises(ValueError):
        QParam(Fraction(1))
    assert QParam.parse("2/3").q == Fraction(2, 3)


def test_pochhammer_examples():
    q = QParam.parse("2/3")
    assert q_pochhammer(Fraction(2, 3), q, 0) == 1
    assert q_pochhammer(Fraction(2, 3), q, 1) == Fraction(1, 3)
    # 1/q as argument, used by the diagonal limit identities
    assert q_pochhammer(Fraction(3, 2), q, 1) == Fraction(-1, 2)


@given(a=rationals, qv=small_q, n=st.integers(min_value=0, max_value=12))
@settings(max_examples=60, deadline=None)
def test_pochhammer_recurrence(a, qv, n):
    q = QParam(qv)
    step = q_pochhammer(a, q, n) * (1 - a * qv**n)
    assert q_pochhammer(a, q, n + 1) == step


def test_pochhammer_inf_trivial():
    enc = q_pochhammer_inf(0, QParam.parse("2/3"))
    assert enc.lo == enc.hi == 1


def test_pochhammer_inf_half():
    # oracle: direct product of 200 factors plus the stated remainder bound
    q = QParam.parse("1/2")
    partial = Fraction(1)
    power = Fraction(1)
    for _ in range(200):
        partial *= 1 - Fraction(1, 2) * power
        power /= 2
    oracle = Enclosure(partial * (1 - power), partial)
    enc = q_pochhammer_inf(Fraction(1, 2), q)
    assert enc.intersects(oracle)
    # the classical decimal expansion 0.2887880950866...
    assert enc.lo < Fraction("0.2887880950867")
    assert enc.hi > Fraction("0.2887880950866")


def test_pochhammer_inf_width_control():
    q = QParam.parse("2/3")
    enc = q_pochhammer_inf(Fraction(2, 3), q, tol=Fraction(1, 10**20))
    assert enc.width <= Fraction(1, 10**20)


def test_pochhammer_inf_width_shrinks_with_terms():
    q = QParam.parse("2/3")
    widths = [q_pochhammer_inf(Fraction(2, 3), q, terms=j).width for j in (8, 16, 32, 64)]
    assert all(widths[i + 1] < widths[i] for i in range(len(widths) - 1))


def test_pochhammer_inf_rejects_large_argument():
    with pytest.raises(ValueError):
        q_pochhammer_inf(1, QParam.parse("1/2"))
    with pytest.raises(ValueError):
        q_pochhammer_inf(Fraction(3, 2), QParam.parse("1/2"))


def test_enclosure_examples():
    one = Enclosure.point(1)
    assert (one * Enclosure(2, 3)) == Enclosure(2, 3)
    assert (Enclosure(1, 2) + Enclosure(-1, 1)) == Enclosure(0, 3)
    assert (Enclosure(1, 2) / Enclosure(2, 4)) == Enclosure(Fraction(1, 4), 1)
    assert enclosure_arith(Enclosure(1, 2), Enclosure(2, 4), "/") == Enclosure(Fraction(1, 4), 1)


def test_enclosure_invalid():
    with pytest.raises(ValueError):
        Enclosure(2, 1)
    with pytest.raises(ZeroDivisionError):
        Enclosure(1, 1) / Enclosure(-1, 1)


@given(
    xl=rationals, xw=st.fractions(min_value=0, max_value=3, max_denominator=20),
    yl=rationals, yw=st.fractions(min_value=0, max_value=3, max_denominator=20),
    tx=st.fractions(min_value=0, max_value=1, max_denominator=16),
    ty=st.fractions(min_value=0, max_value=1, max_denominator=16),
    op=st.sampled_from("+-*/"),
)
@settings(max_examples=120, deadline=None)
def test_enclosure_containment(xl, xw, yl, yw, tx, ty, op):
    X = Enclosure(xl, xl + xw)
    Y = Enclosure(yl, yl + yw)
    x = xl + tx * xw
    y = yl + ty * yw
    if op == "/" and Y.lo <= 0 <= Y.hi:
        with pytest.raises(ZeroDivisionError):
            enclosure_arith(X, Y, op)
        return
    result = enclosure_arith(X, Y, op)
    if op == "+":
        point = x + y
    elif op == "-":
        point = x - y
    elif op == "*":
        point = x * y
    else:
        point = x / y
    assert result.contains(point)


def test_enclosure_abs():
    assert abs(Enclosure(-3, -1)) == Enclosure(1, 3)
    assert abs(Enclosure(-1, 2)) == Enclosure(0, 2)
    assert abs(Enclosure(1, 2)) == Enclosure(1, 2)
