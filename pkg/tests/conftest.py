from fractions import Fraction

import pytest

from qhyper import QParam


@pytest.fixture(scope="session")
def q23() -> QParam:
    return QParam(Fraction(2, 3))


@pytest.fixture(scope="session")
def q12() -> QParam:
    return QParam(Fraction(1, 2))


@pytest.fixture(scope="session")
def q15() -> QParam:
    return QParam(Fraction(1, 5))


@pytest.fixture(scope="session")
def q14() -> QParam:
    return QParam(Fraction(1, 4))
