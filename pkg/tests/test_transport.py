from fractions import Fraction

import pytest

from conftest import square_system, triangle_system
from tilebundle import transport
from tilebundle import penrose
from tilebundle.errors import PathIndependenceError, PipelineError, ValidationError
from tilebundle.rationalizer import torus_project
from tilebundle.tilemodel import (
    EdgeType,
    Patch,
    TileSystem,
    adjacencies,
    grow_patch,
    single_tile_patch,
    system_from_words,
    validate_patch,
)
from tilebundle.transport import (
    SystemCorrespondence,
    compose_pipeline,
    map_offset,
    transport_patch,
    transport_with_report,
    unzigzag_patch,
    zigzag_patch,
)
from tilebundle.zigzag import build_zigzag_system


def corrupted_table(eid="a3", axis=0):
    s = penrose.integral_system()
    edges = tuple(
        EdgeType(e.id, tuple(c + 1 if (e.id, k) == (eid, axis) else c for k, c in enumerate(e.vector)))
        for e in s.edge_types
    )
    return TileSystem("integral", edges, s.prototiles)


@pytest.fixture(scope="module")
def corr(penrose_real, penrose_int):
    return SystemCorrespondence(penrose_real, penrose_int)


def test_correspondence_checks_words(penrose_real, unit_square):
    with pytest.raises(ValidationError):
        SystemCorrespondence(penrose_real, unit_square)
    with pytest.raises(ValidationError):
        SystemCorrespondence(penrose_real, corrupted_table())


def test_single_tile(corr):
    p = single_tile_patch("C4", (0, 0), (Fraction(1, 10), Fraction(1, 10)))
    q = transport_patch(p, corr)
    assert len(q) == 1 and q.placed[0].tile == "C4"
    assert q.origin == p.origin


def test_identity_correspondence(grown_real, penrose_real):
    assert transport_patch(grown_real, SystemCorrespondence(penrose_real, penrose_real)) == grown_real


def test_penrose_real_to_table(grown_real, corr, penrose_int, penrose_real):
    rep = transport_with_report(grown_real, corr)
    assert rep.checks >= 1
    assert validate_patch(rep.patch, penrose_int) == []
    assert adjacencies(rep.patch, penrose_int) == adjacencies(grown_real, penrose_real)
    assert transport_patch(rep.patch, corr.reverse()) == grown_real


def test_deflation_patch_transports(deflated, corr, penrose_int):
    rep = transport_with_report(deflated, corr)
    assert rep.checks > 10 and validate_patch(rep.patch, penrose_int) == []


def test_corrupted_table_breaks_path_independence(grown_real, penrose_real):
    bad = SystemCorrespondence(penrose_real, corrupted_table(), validate=False)
    with pytest.raises(PathIndependenceError) as info:
        transport_patch(grown_real, bad)
    assert info.value.tile_index is not None and len(info.value.positions) == 2


def test_offset_barycentric(penrose_real, penrose_int):
    vs = penrose_real.vertices("A0")
    mid = ((vs[0][0] + vs[1][0]) / 2, (vs[0][1] + vs[1][1]) / 2)
    ws = penrose_int.vertices("A0")
    assert map_offset(mid, "A0", penrose_real, penrose_int) == ((ws[0][0] + ws[1][0]) / 2, (ws[0][1] + ws[1][1]) / 2)
    assert map_offset(vs[2], "A0", penrose_real, penrose_int) == ws[2]


def test_origin_round_trip(grown_real, corr):
    p = grown_real.shifted((Fraction(1, 3), Fraction(1, 7)))
    q = transport_patch(p, corr)
    assert transport_patch(q, corr.reverse()) == p


def test_locality(penrose_real, penrose_int, corr):
    """Patches agreeing near the seed have transports agreeing there."""
    small = grow_patch(penrose_real, single_tile_patch("A0"), 30, companions=(penrose_int,))
    big = grow_patch(penrose_real, single_tile_patch("A0"), 60, companions=(penrose_int,))
    assert big.placed[:len(small)] == small.placed
    a, b = transport_patch(small, corr), transport_patch(big, corr)
    assert b.placed[:len(a)] == a.placed


def test_zigzag_patch_round_trip(grown_real, corr, penrose_int):
    q = transport_patch(grown_real, corr)
    z = build_zigzag_system(penrose_int)
    zp = zigzag_patch(q, z)
    assert unzigzag_patch(zp) == q
    assert len(zp.cells) == sum(z.tile(pl.tile).area for pl in q.placed)
    one = zigzag_patch(single_tile_patch("A0", (3, 4)), z)
    assert set(one.cells) == {(x + 3, y + 4) for x, y in z.tile("A0").cells}


def test_zigzag_overlap_rejected(penrose_int):
    z = build_zigzag_system(penrose_int)
    with pytest.raises(ValidationError):
        zigzag_patch(Patch([("A0", (0, 0)), ("A0", (0, 0))]), z)


def test_torus_on_transported(grown_real, corr, penrose_int):
    q = transport_patch(grown_real, corr)
    t = torus_project(q, penrose_int)
    w = (Fraction(1, 3), Fraction(1, 2))
    assert torus_project(q.shifted(w), penrose_int) == t - w


def test_pipeline_unit_square():
    s = square_system("real")
    rec = compose_pipeline(s, 0.1)
    assert rec.rational.edge("h").vector == (1, 0)
    assert rec.rescale.lcm_denominator == 1 and rec.prescale == 2
    assert len(rec.squares.alphabet) == 4
    assert any("prescale" in line for line in rec.log)


def test_pipeline_penrose_witness(penrose_real, penrose_int):
    rec = compose_pipeline(penrose_real, 0.6, witness=penrose_int)
    assert rec.rescale.lcm_denominator == 1 and rec.prescale == 1
    assert len(rec.zigzag.tiles) == 40 and len(rec.squares.alphabet) == 232


def test_pipeline_witness_too_far(penrose_real, penrose_int):
    with pytest.raises(PipelineError) as info:
        compose_pipeline(penrose_real, 0.5, witness=penrose_int)
    assert info.value.stage == "rationalize"


def test_pipeline_rejects_open_tile():
    s = system_from_words("real", {"x": (1, 0), "y": (0, 1)}, {"T": [("x", 1), ("y", 1), ("x", -1)]})
    with pytest.raises(PipelineError) as info:
        compose_pipeline(s, 0.1)
    assert info.value.stage == "validate"


def test_pipeline_retries_zigzag(monkeypatch):
    # with the inradius prescale disabled this thin pair has an empty zig-zag tile
    monkeypatch.setattr(transport, "prescale_for_inradius", lambda s: (s, 1))
    s = triangle_system((4, 4), (4, 3), stage="real")
    rec = compose_pipeline(s, 0.1)
    assert any("retrying" in line for line in rec.log)
    assert rec.prescale == 2 and rec.zigzag.total_cells == 16
    with pytest.raises(PipelineError) as info:
        compose_pipeline(s, 0.1, max_retries=0)
    assert info.value.stage == "zigzag"


def test_pipeline_prescale_avoids_retry():
    rec = compose_pipeline(triangle_system((4, 4), (4, 3), stage="real"), 0.1)
    assert rec.prescale > 1 and not any("retrying" in line for line in rec.log)
