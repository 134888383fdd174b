import math

from tilebundle import penrose
from tilebundle.rationalizer import assemble_constraints, max_deviation
from tilebundle.tilemodel import validate_system


def test_table_entries():
    v = penrose.integer_vectors()
    assert len(v) == 40
    assert v["a0"] == (1, 4) and v["b0"] == (1, -4) and v["c0"] == (2, 0) and v["d0"] == (6, 0)
    assert v["a3"] == (-4, 0) and v["d9"] == (5, -4)


def test_symmetries():
    v = penrose.integer_vectors()
    for n in range(10):
        assert v[f"a{(n + 5) % 10}"] == tuple(-c for c in v[f"a{n}"])
        assert v[f"a{n}"] == v[f"b{(n + 4) % 10}"]


def test_real_vectors_are_rotations():
    r = penrose.real_vectors()
    for n in range(10):
        x, y = r[f"a{n}"]
        assert math.isclose(math.hypot(x, y), 4, rel_tol=1e-12)
        nx, ny = r[f"a{(n + 1) % 10}"]
        c, s = math.cos(math.pi / 5), math.sin(math.pi / 5)
        assert math.isclose(nx, c * x - s * y, abs_tol=1e-12)
        assert math.isclose(ny, s * x + c * y, abs_tol=1e-12)


def test_both_stages_valid_and_same_words(penrose_real, penrose_int):
    assert validate_system(penrose_real) == []
    assert validate_system(penrose_int) == []
    assert penrose_real.prototiles == penrose_int.prototiles
    assert [e.id for e in penrose_real.edge_types] == [e.id for e in penrose_int.edge_types]


def test_equation_families(penrose_real):
    cs = assemble_constraints(penrose_real)
    col = {c: i for i, c in enumerate(cs.cols)}
    for tid, row in zip(cs.rows, cs.matrix):
        word = penrose.equation_words()[tid]
        expect = [0] * 40
        for eid, sign in word:
            expect[col[eid]] += sign
        # words were reoriented counter-clockwise, which may negate a row
        assert list(row) in (expect, [-x for x in expect])
    assert sorted(cs.rows) == sorted(penrose.equation_words())


def test_a3_exact_and_table_distance(penrose_real, penrose_int):
    assert penrose_real.exact_vector("a3") == (-4, 0)
    dev = max_deviation(penrose_real, penrose_int)
    assert 0.54 < float(dev) < 0.55


def test_literals_have_17_digits(penrose_real):
    x = penrose_real.edge("a0").vector[0]
    assert float(x.text) == x and len(x.text.replace(".", "").lstrip("0")) <= 17
