import pytest

from irlab.groebner import Ideal
from irlab.ring import ring


@pytest.fixture(scope="session")
def R3():
    return ring(("x", "y", "z"))


@pytest.fixture(scope="session")
def R2():
    return ring(("x", "y"))


@pytest.fixture(scope="session")
def R4():
    return ring(("x", "y", "u", "v"))


@pytest.fixture(scope="session")
def R5():
    return ring(("a", "b", "c", "d", "e"))


@pytest.fixture(scope="session")
def plane_and_line(R3):
    """S/(xy, xz): a plane plus a transversal line; sequentially CM, not CM."""
    x, y, z = R3.gens()
    return Ideal(R3, [x * y, x * z])


@pytest.fixture(scope="session")
def two_planes_3d(R5):
    """The 5-variable ring cut out by two 3-planes meeting along a line."""
    a, b, c, d, e = R5.gens()
    return Ideal(R5, [a * c, a * d, b * c, b * d])


@pytest.fixture(scope="session")
def two_planes_origin(R4):
    """4-variable ring of two planes meeting only at the origin."""
    x, y, u, v = R4.gens()
    return Ideal(R4, [x * u, x * v, y * u, y * v])
