import math
import time
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import square_system, triangle_system
from tilebundle import penrose
from tilebundle.errors import RationalizationError, ValidationError
from tilebundle.rationalizer import (
    _triangle_inradius,
    assemble_constraints,
    inradius,
    max_deviation,
    prescale_for_inradius,
    rationalize,
    rescale_integral,
    torus_project,
)
from tilebundle.tilemodel import Patch, TorusPoint, single_tile_patch, system_from_words, validate_system

R3 = math.sqrt(3) / 2


def equilateral():
    return system_from_words(
        "real",
        {"e1": (1.0, 0.0), "e2": (-0.5, R3), "e3": (-0.5, -R3)},
        {"T": [("e1", 1), ("e2", 1), ("e3", 1)]},
    )


def same_combinatorics(a, b):
    return [e.id for e in a.edge_types] == [e.id for e in b.edge_types] and a.prototiles == b.prototiles


def test_constraint_rows():
    assert assemble_constraints(square_system()).matrix == ((0, 0),)
    assert assemble_constraints(equilateral()).matrix == ((1, 1, 1),)


def test_penrose_constraints(penrose_real):
    cs = assemble_constraints(penrose_real)
    assert len(cs.rows) == len(cs.cols) == 40
    assert all(set(r) <= {-1, 0, 1} and sum(map(abs, r)) == 3 for r in cs.matrix)


def test_table_solves_constraints(penrose_real, penrose_int):
    assert assemble_constraints(penrose_real).satisfied_by(penrose_int)


def test_invalid_system_rejected():
    s = system_from_words("integral", {"x": (1, 0), "y": (0, 1)}, {"T": [("x", 1), ("y", 1), ("x", -1)]})
    with pytest.raises(ValidationError):
        assemble_constraints(s)


def test_rational_input_unchanged(unit_square):
    assert rationalize(unit_square, 0.1) is unit_square


def test_equilateral():
    s = equilateral()
    out = rationalize(s, 0.01)
    assert out.stage == "rational" and same_combinatorics(s, out)
    assert max_deviation(s, out) <= 0.01
    assert assemble_constraints(s).satisfied_by(out)
    integral, rec = rescale_integral(out)
    dens = [Fraction(c).denominator for e in out.edge_types for c in e.vector]
    assert rec.lcm_denominator == math.lcm(*dens)
    assert all(isinstance(c, int) for e in integral.edge_types for c in e.vector)


@pytest.mark.parametrize("eps", [0.5, 0.05, 0.005])
def test_penrose_epsilons(penrose_real, eps):
    t = time.perf_counter()
    out = rationalize(penrose_real, eps)
    assert time.perf_counter() - t < 5
    assert max_deviation(penrose_real, out) <= eps
    assert assemble_constraints(penrose_real).satisfied_by(out)
    assert validate_system(out) == [] and same_combinatorics(penrose_real, out)


def test_deviation_monotone_in_epsilon(penrose_real):
    devs = [max_deviation(penrose_real, rationalize(penrose_real, e)) for e in (0.5, 0.05, 0.005)]
    assert devs == sorted(devs, reverse=True)


def test_epsilon_errors(penrose_real):
    with pytest.raises(ValueError):
        rationalize(penrose_real, 0)
    with pytest.raises(RationalizationError, match="larger"):
        rationalize(penrose_real, 1e-12)


def test_rescale_examples(penrose_int):
    s = system_from_words("rational", {"u": ("1/2", "1/3"), "v": (0, 1)}, {})
    integral, rec = rescale_integral(s)
    assert rec.lcm_denominator == 6 and integral.edge("u").vector == (3, 2)
    same, rec = rescale_integral(penrose_int)
    assert rec.lcm_denominator == 1 and same == penrose_int


def test_prescale_examples(penrose_int):
    assert prescale_for_inradius(penrose_int)[1] == 1
    assert prescale_for_inradius(square_system())[1] == 2
    assert prescale_for_inradius(square_system(side=3))[1] == 1
    scaled, m = prescale_for_inradius(square_system())
    assert scaled.edge("h").vector == (2, 0) and scaled.prototiles == square_system().prototiles


def test_triangle_inradius_value():
    r = _triangle_inradius([(0, 0), (2, 0), (1, 4)])
    assert abs(float(r) - 4 / (math.sqrt(17) + 1)) < 1e-15


def test_chebyshev_matches_square():
    r, _ = inradius([(0, 0), (3, 0), (3, 3), (0, 3)])
    assert abs(r - 1.5) < 1e-9


def test_nonconvex_lower_bound():
    ell = [(0, 0), (4, 0), (4, 2), (2, 2), (2, 4), (0, 4)]
    r, _ = inradius(ell)
    # the true inradius touches both outer walls and the reflex corner
    true = 1 + (math.sqrt(2) - 1) / (math.sqrt(2) + 1)
    assert 0.9 <= r <= true


@settings(max_examples=40, deadline=None)
@given(st.tuples(st.integers(-5, 5), st.integers(-5, 5)), st.tuples(st.integers(-5, 5), st.integers(-5, 5)))
def test_prescale_makes_inradius_large(u, v):
    if u[0] * v[1] - u[1] * v[0] == 0:
        return
    s, m = prescale_for_inradius(triangle_system(u, v))
    for p in s.prototiles:
        assert float(inradius(s.vertices(p.id))[0]) > math.sqrt(2) / 2
    if m > 1:
        small = triangle_system(u, v).scaled(m - 1)
        assert any(float(inradius(small.vertices(p.id))[0]) <= math.sqrt(2) / 2 for p in small.prototiles)


def test_torus_examples(penrose_int):
    p = single_tile_patch("A0")
    assert torus_project(p, penrose_int) == (0, 0)
    q = single_tile_patch("A0", origin_offset=(Fraction(1, 3), Fraction(1, 2)))
    assert torus_project(q, penrose_int) == (Fraction(2, 3), Fraction(1, 2))
    assert torus_project(q.translated((5, -7)), penrose_int) == torus_project(q, penrose_int)


def test_torus_rejects_bad_patches(penrose_int, penrose_real):
    bad = Patch([("A0", (0, 0)), ("A0", (Fraction(1, 2), 10))])
    with pytest.raises(ValidationError):
        torus_project(bad, penrose_int)
    with pytest.raises(ValueError):
        torus_project(single_tile_patch("A0"), penrose_real)


@settings(max_examples=50, deadline=None)
@given(st.fractions(max_denominator=12), st.fractions(max_denominator=12))
def test_torus_shift_equivariance(wx, wy):
    s = penrose.integral_system()
    p = single_tile_patch("B3", (2, 1))
    base = torus_project(p, s)
    assert torus_project(p.shifted((wx, wy)), s) == base - (wx, wy)
    assert torus_project(p.translated((wx, wy)), s) == base
    assert isinstance(base, TorusPoint)
