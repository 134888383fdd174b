"""Moving patches between systems with the same combinatorics, and the full pipeline.

A patch is carried to another system by re-placing its tiles breadth-first
from the seed using the target's edge vectors.  Whenever a tile is reached
along a second adjacency the two implied positions must agree; the closure
constraints guarantee that they do, so a disagreement means the two systems
do not really correspond.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace
from fractions import Fraction

from . import _geometry as geo
from .errors import PipelineError, TilingError, ValidationError, ZigzagFailure
from .exactmath import as_rat
from .rationalizer import (
    RescaleRecord,
    max_deviation,
    prescale_for_inradius,
    rationalize,
    rescale_integral,
)
from .squaresys import SquareSystem, build_square_system
from .tilemodel import Patch, Placement, TileSystem, bfs_place, require_valid, validate_patch
from .zigzag import ZigzagSystem, build_zigzag_system

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class SystemCorrespondence:
    """Identity on edge and prototile ids between two systems with equal words."""

    source: TileSystem
    target: TileSystem
    validate: bool = field(default=True, compare=False)

    def __post_init__(self):
        src = [e.id for e in self.source.edge_types]
        dst = [e.id for e in self.target.edge_types]
        if sorted(src) != sorted(dst):
            raise ValidationError("systems have different edge types")
        words = {p.id: p.boundary for p in self.target.prototiles}
        if {p.id: p.boundary for p in self.source.prototiles} != words:
            raise ValidationError("systems have different prototiles or boundary words")
        if self.validate:
            require_valid(self.source)
            require_valid(self.target)

    def reverse(self) -> "SystemCorrespondence":
        return SystemCorrespondence(self.target, self.source, validate=False)


def _barycentric(p, a, b, c):
    d = geo.cross(a, b, c)
    l1 = geo.cross(p, b, c) / d
    l2 = geo.cross(a, p, c) / d
    return l1, l2, 1 - l1 - l2


def map_offset(offset, tid: str, source: TileSystem, target: TileSystem):
    """Carry a point of a prototile to the corresponding point of its counterpart.

    The prototile is fanned into triangles from its first vertex and the
    point keeps its barycentric coordinates in the fan triangle containing
    it (the first one, extended affinely, if it lies outside the tile).
    """
    offset = (as_rat(offset[0]), as_rat(offset[1]))
    vs, ws = source.vertices(tid), target.vertices(tid)
    tri = 1
    for k in range(1, len(vs) - 1):
        if all(l >= 0 for l in _barycentric(offset, vs[0], vs[k], vs[k + 1])):
            tri = k
            break
    l0, l1, l2 = _barycentric(offset, vs[0], vs[tri], vs[tri + 1])
    a, b, c = ws[0], ws[tri], ws[tri + 1]
    return (
        l0 * a[0] + l1 * b[0] + l2 * c[0],
        l0 * a[1] + l1 * b[1] + l2 * c[1],
    )


@dataclass(frozen=True)
class TransportReport:
    patch: Patch
    checks: int


def transport_with_report(p: Patch, corr: SystemCorrespondence) -> TransportReport:
    """Transport ``p`` and count the multi-path consistency checks made."""
    if not p.placed:
        return TransportReport(p, 0)
    seed = p.placed[p.seed]
    off = p.origin_offset
    new_off = map_offset(off, seed.tile, corr.source, corr.target)
    # keep the marked origin where it was in the plane
    seed_t = geo.sub(geo.add(seed.translation, off), new_off)
    pos, checks = bfs_place(p, corr.source, corr.target, seed_t)
    out = Patch(tuple(Placement(pl.tile, t) for pl, t in zip(p.placed, pos)), p.seed, new_off)
    issues = validate_patch(out, corr.target)
    if issues:
        raise ValidationError(f"transported patch is invalid: {issues[0]}", issues)
    return TransportReport(out, checks)


def transport_patch(p: Patch, corr: SystemCorrespondence) -> Patch:
    return transport_with_report(p, corr).patch


@dataclass(frozen=True)
class ZigzagPatch:
    """A straight patch redrawn with zig-zag tiles in the same vertex frame.

    All translations must agree mod Z^2; ``residue`` is that common
    fractional part, and ``cells`` are the absolute cells (on the lattice
    shifted by the residue) with the index of the tile covering each.
    """

    placed: tuple[Placement, ...]
    seed: int
    origin_offset: tuple[Fraction, Fraction]
    zigzag: ZigzagSystem = field(repr=False)
    residue: tuple[Fraction, Fraction]
    cells: dict = field(repr=False, compare=False)

    def tile_cells(self, i: int) -> list[tuple[int, int]]:
        return sorted((c for c, j in self.cells.items() if j == i), key=lambda c: (c[1], c[0]))


def _common_residue(placed):
    residues = {(pl.translation[0] % 1, pl.translation[1] % 1) for pl in placed}
    if len(residues) > 1:
        raise ValidationError("tile translations do not agree mod Z^2")
    return residues.pop() if residues else (Fraction(0), Fraction(0))


def zigzag_patch(p: Patch, z: ZigzagSystem) -> ZigzagPatch:
    rx, ry = _common_residue(p.placed)
    cells: dict = {}
    for i, pl in enumerate(p.placed):
        tx, ty = int(pl.translation[0] - rx), int(pl.translation[1] - ry)
        for x, y in z.tile(pl.tile).cells:
            c = (x + tx, y + ty)
            if c in cells:
                raise ValidationError(f"zig-zag tiles {cells[c]} and {i} overlap at cell {c}")
            cells[c] = i
    return ZigzagPatch(p.placed, p.seed, p.origin_offset, z, (rx, ry), cells)


def unzigzag_patch(zp: ZigzagPatch) -> Patch:
    return Patch(zp.placed, zp.seed, zp.origin_offset)


@dataclass(frozen=True)
class PipelineRecord:
    source: TileSystem
    rational: TileSystem
    integral: TileSystem
    rescale: RescaleRecord
    zigzag: ZigzagSystem
    squares: SquareSystem
    log: tuple[str, ...]

    @property
    def prescale(self) -> int:
        return self.rescale.inradius_prescale


def _stage(name):
    def wrap(fn, *args):
        try:
            return fn(*args)
        except PipelineError:
            raise
        except (TilingError, ValueError) as exc:
            raise PipelineError(name, exc) from exc

    return wrap


def compose_pipeline(
    s: TileSystem,
    epsilon: float,
    witness: TileSystem | None = None,
    max_retries: int = 4,
) -> PipelineRecord:
    """Run validate, rationalize, rescale, prescale, zig-zag and squares in order.

    ``witness`` is an optional known rational or integral solution with the
    same combinatorics; it replaces the search if it lies within ``epsilon``
    of ``s``.  A zig-zag failure doubles the integral system and retries up
    to ``max_retries`` times.  Errors are raised as :class:`PipelineError`
    naming the stage.
    """
    notes: list[str] = []

    def note(msg):
        log.info(msg)
        notes.append(msg)

    _stage("validate")(require_valid, s)
    note(f"validate: {len(s.prototiles)} prototiles, {len(s.edge_types)} edge types")

    if witness is not None:
        def use_witness():
            if witness.stage == "real":
                raise ValueError("witness must be rational or integral")
            SystemCorrespondence(s, witness)
            dev = max_deviation(s, witness)
            if dev > as_rat(float(epsilon)):
                raise ValidationError(f"witness deviates by {float(dev):.4g} > {epsilon:g}")
            return witness, dev

        rational, dev = _stage("rationalize")(use_witness)
        note(f"rationalize: witness accepted, deviation {float(dev):.4g}")
    else:
        rational = _stage("rationalize")(rationalize, s, epsilon)
        note(f"rationalize: deviation {float(max_deviation(s, rational)):.4g}")

    integral, record = _stage("rescale")(rescale_integral, rational)
    note(f"rescale: D = {record.lcm_denominator}")

    integral, m = _stage("prescale")(prescale_for_inradius, integral)
    note(f"prescale: multiplier {m}")

    for attempt in range(max_retries + 1):
        try:
            zsys = build_zigzag_system(integral)
            break
        except ZigzagFailure as exc:
            if attempt == max_retries:
                raise PipelineError("zigzag", exc) from exc
            m *= exc.suggested_factor
            integral = integral.scaled(exc.suggested_factor)
            note(f"zigzag: {exc}; retrying with multiplier {m}")
        except (TilingError, ValueError) as exc:
            raise PipelineError("zigzag", exc) from exc
    note(f"zigzag: {zsys.total_cells} cells")

    squares = _stage("squares")(build_square_system, zsys)
    note(f"squares: alphabet {len(squares.alphabet)}, rule radius {squares.rule_radius}")
    return PipelineRecord(
        s, rational, integral, replace(record, inradius_prescale=m), zsys, squares, tuple(notes)
    )
