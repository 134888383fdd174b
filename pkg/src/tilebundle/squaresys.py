"""Marked unit squares: the Z^2 subshift view of a zig-zag tiling system.

Each cell of each zig-zag tile becomes its own symbol, marked with the tile
it came from and its offset from the tile's anchor cell.  The matching rule
says every symbol's sibling cells sit at the right offsets, so a valid
square configuration amalgamates back into zig-zag tiles.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Mapping, NamedTuple

from .errors import AmalgamationError, ValidationError
from .tilemodel import Patch, Placement, TorusPoint
from .zigzag import ZigzagSystem

__all__ = [
    "SquareSymbol",
    "SquareSystem",
    "SquareConfiguration",
    "TorusPoint",
    "build_square_system",
    "explode",
    "amalgamate",
    "matching_rules",
    "rule_violations",
]

Cell = tuple[int, int]


class SquareSymbol(NamedTuple):
    tile: str
    offset: Cell

    def __str__(self) -> str:
        return f"{self.tile}@{self.offset[0]},{self.offset[1]}"


def _chebyshev_diameter(cells) -> int:
    xs = [c[0] for c in cells]
    ys = [c[1] for c in cells]
    return max(max(xs) - min(xs), max(ys) - min(ys))


@dataclass(frozen=True)
class SquareSystem:
    alphabet: tuple[SquareSymbol, ...]
    tiles: ZigzagSystem
    rule_radius: int


@dataclass(frozen=True)
class SquareConfiguration:
    assignment: Mapping[Cell, SquareSymbol] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "assignment", MappingProxyType(dict(self.assignment)))

    def __len__(self):
        return len(self.assignment)

    def __eq__(self, other):
        return isinstance(other, SquareConfiguration) and dict(self.assignment) == dict(other.assignment)

    def translated(self, w) -> "SquareConfiguration":
        wx, wy = w
        return SquareConfiguration({(x + wx, y + wy): s for (x, y), s in self.assignment.items()})

    def without(self, cell: Cell) -> "SquareConfiguration":
        return SquareConfiguration({c: s for c, s in self.assignment.items() if c != cell})

    def with_symbol(self, cell: Cell, sym: SquareSymbol) -> "SquareConfiguration":
        d = dict(self.assignment)
        d[cell] = sym
        return SquareConfiguration(d)


def build_square_system(z: ZigzagSystem) -> SquareSystem:
    alphabet = []
    diameter = 0
    for t in z.tiles:
        ax, ay = t.anchor
        alphabet.extend(
            SquareSymbol(t.prototile, (x - ax, y - ay)) for x, y in sorted(t.cells, key=lambda c: (c[1], c[0]))
        )
        diameter = max(diameter, _chebyshev_diameter(t.cells))
    return SquareSystem(tuple(alphabet), z, diameter + 1)


def _integral(t) -> Cell:
    if any(c.denominator != 1 for c in t):
        raise ValidationError(f"translation {tuple(map(str, t))} is not integral")
    return int(t[0]), int(t[1])


def explode(p: Patch, z: ZigzagSystem | SquareSystem) -> SquareConfiguration:
    """One symbol per cell of every placed zig-zag tile."""
    if isinstance(z, SquareSystem):
        z = z.tiles
    out: dict[Cell, SquareSymbol] = {}
    for i, pl in enumerate(p.placed):
        tx, ty = _integral(pl.translation)
        tile = z.tile(pl.tile)
        ax, ay = tile.anchor
        for x, y in tile.cells:
            cell = (x + tx, y + ty)
            if cell in out:
                raise ValidationError(f"tile {i} overlaps another tile at cell {cell}")
            out[cell] = SquareSymbol(pl.tile, (x - ax, y - ay))
    return SquareConfiguration(out)


def _placement_of(cell: Cell, sym: SquareSymbol, z: ZigzagSystem) -> tuple[str, Cell]:
    try:
        tile = z.tile(sym.tile)
    except KeyError:
        raise AmalgamationError(f"unknown tile in symbol {sym} at {cell}", cell=cell) from None
    ax, ay = tile.anchor
    frame = (ax + sym.offset[0], ay + sym.offset[1])
    if frame not in tile.cells:
        raise AmalgamationError(f"symbol {sym} at {cell} is not in the alphabet", cell=cell)
    return sym.tile, (cell[0] - frame[0], cell[1] - frame[1])


def amalgamate(
    c: SquareConfiguration,
    s: SquareSystem,
    mode: str = "closed",
    origin=None,
) -> Patch:
    """Reassemble zig-zag tile placements from marked squares.

    ``mode="closed"`` requires every inferred tile to be complete in the
    window.  ``mode="open"`` accepts tiles cut by the window as long as no
    present cell contradicts them.  The seed of the result is the tile
    covering ``origin`` (default: the first placement).
    """
    if mode not in ("closed", "open"):
        raise ValueError(f"unknown window mode {mode!r}")
    z = s.tiles
    cells = c.assignment
    placements = sorted(
        {_placement_of(cell, sym, z) for cell, sym in cells.items()},
        key=lambda pl: (pl[1][1], pl[1][0], pl[0]),
    )
    claims: dict[Cell, tuple[str, Cell]] = {}
    for tid, (tx, ty) in placements:
        tile = z.tile(tid)
        ax, ay = tile.anchor
        for x, y in sorted(tile.cells, key=lambda q: (q[1], q[0])):
            cell = (x + tx, y + ty)
            want = SquareSymbol(tid, (x - ax, y - ay))
            have = cells.get(cell)
            if have is None:
                if mode == "closed":
                    raise AmalgamationError(
                        f"tile {tid} at {(tx, ty)} is missing offset {want.offset}",
                        placement=(tid, (tx, ty)),
                        missing=want.offset,
                    )
                continue
            if have != want:
                raise AmalgamationError(
                    f"tile {tid} at {(tx, ty)} expects {want} at {cell}, found {have}",
                    cell=cell,
                    placement=(tid, (tx, ty)),
                    missing=want.offset,
                )
            other = claims.setdefault(cell, (tid, (tx, ty)))
            if other != (tid, (tx, ty)):
                raise AmalgamationError(f"cell {cell} claimed by {other} and {(tid, (tx, ty))}", cell=cell)
    placed = tuple(Placement(tid, t) for tid, t in placements)
    seed, offset = 0, (0, 0)
    if origin is not None and placed:
        ox, oy = origin
        cell = (int(ox // 1), int(oy // 1))
        owner = claims.get(cell)
        if owner is not None:
            seed = placements.index(owner)
        t = placed[seed].translation
        offset = (ox - t[0], oy - t[1])
    return Patch(placed, seed, offset)


def matching_rules(s: SquareSystem) -> dict[SquareSymbol, tuple[tuple[Cell, SquareSymbol], ...]]:
    """For each symbol, the (relative offset, symbol) pairs of its sibling cells."""
    by_tile: dict[str, list[SquareSymbol]] = {}
    for sym in s.alphabet:
        by_tile.setdefault(sym.tile, []).append(sym)
    rules = {}
    for sym in s.alphabet:
        ux, uy = sym.offset
        rules[sym] = tuple(
            ((o.offset[0] - ux, o.offset[1] - uy), o) for o in by_tile[sym.tile] if o != sym
        )
    return rules


def rule_violations(c: SquareConfiguration, rules) -> list[tuple[Cell, Cell, SquareSymbol]]:
    """Present cells whose required neighbour carries a different symbol (open window)."""
    bad = []
    cells = c.assignment
    for (x, y), sym in sorted(cells.items()):
        for (dx, dy), want in rules.get(sym, ()):
            other = (x + dx, y + dy)
            have = cells.get(other)
            if have is not None and have != want:
                bad.append(((x, y), other, want))
    return bad
