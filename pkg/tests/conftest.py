import pytest

from tbtridiag import QQ, Family, build_system, generate_family
from tbtridiag.fields import PrimeField, QQi


@pytest.fixture(scope="session")
def Qi():
    return QQi()


@pytest.fixture(scope="session")
def F101():
    return PrimeField(101)


@pytest.fixture(scope="session")
def k3():
    """Krawtchouk-type system, d = 3, h = h* = 1 over Q."""
    return build_system(generate_family(QQ, Family.KRAWTCHOUK, 3))


@pytest.fixture(scope="session")
def qr3():
    """q-Racah-type system, d = 3, q = 2, h = h* = 1 over Q."""
    return build_system(generate_family(QQ, Family.QRACAH_ODD, 3, q=2))
