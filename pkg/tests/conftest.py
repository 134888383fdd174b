from fractions import Fraction

import pytest

from tilebundle import penrose
from tilebundle.tilemodel import grow_patch, single_tile_patch, system_from_words


def square_system(stage="integral", side=1):
    return system_from_words(
        stage,
        {"h": (side, 0), "v": (0, side)},
        {"S": [("h", 1), ("v", 1), ("h", -1), ("v", -1)]},
    )


def triangle_system(u, v, stage="integral"):
    """Two triangles u, v, -(u+v) and its point reflection, sharing the diagonal."""
    w = (u[0] + v[0], u[1] + v[1])
    cross = u[0] * v[1] - u[1] * v[0]
    up = [("u", 1), ("v", 1), ("w", -1)]
    down = [("u", -1), ("v", -1), ("w", 1)]
    if cross < 0:
        up, down = [(e, -s) for e, s in reversed(up)], [(e, -s) for e, s in reversed(down)]
    return system_from_words(stage, {"u": u, "v": v, "w": w}, {"T": up, "R": down})


@pytest.fixture(scope="session")
def unit_square():
    return square_system()


@pytest.fixture(scope="session")
def square2():
    return square_system(side=2)


@pytest.fixture(scope="session")
def penrose_real():
    return penrose.real_system()


@pytest.fixture(scope="session")
def penrose_int():
    return penrose.integral_system()


@pytest.fixture(scope="session")
def grown_real(penrose_real, penrose_int):
    """A real-stage Penrose patch of about 80 tiles that stays valid in the integer table."""
    return grow_patch(penrose_real, single_tile_patch("A0"), 80, companions=(penrose_int,))


@pytest.fixture(scope="session")
def deflated():
    return penrose.deflation_patch(3)


def frac(a, b=1):
    return Fraction(a, b)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
