"""Lattice-path replacement of straight integral edges and unit-cell regions.

Every integral edge vector gets one monotone unit-step path whose vertices
stay within sqrt(2)/2 of the straight segment.  A prototile's zig-zag tile
is the set of unit cells around which its zig-zag boundary loop winds once.
"""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import _geometry as geo
from .errors import ZigzagFailure
from .tilemodel import TileSystem, prototile_area, require_valid

STEP_NAMES = {(1, 0): "+x", (-1, 0): "-x", (0, 1): "+y", (0, -1): "-y"}
# exhaustive (dynamic-programming) search below this many lattice nodes
DP_NODE_LIMIT = 250_000
# refuse to rasterize systems whose total area exceeds this many cells
CELL_BUDGET = 5_000_000


@dataclass(frozen=True)
class ZigzagPath:
    steps: tuple[tuple[int, int], ...]

    @property
    def vector(self) -> tuple[int, int]:
        return sum(s[0] for s in self.steps), sum(s[1] for s in self.steps)

    def vertices(self, start=(0, 0)) -> list[tuple[int, int]]:
        pts = [tuple(start)]
        for dx, dy in self.steps:
            x, y = pts[-1]
            pts.append((x + dx, y + dy))
        return pts

    def reversed(self) -> "ZigzagPath":
        return ZigzagPath(tuple((-dx, -dy) for dx, dy in reversed(self.steps)))

    def names(self) -> list[str]:
        return [STEP_NAMES[s] for s in self.steps]


def canonical_orientation(v) -> tuple[int, int]:
    x, y = v
    return (x, y) if x > 0 or (x == 0 and y > 0) else (-x, -y)


def deviation_sq(p, v) -> Fraction:
    """Squared distance from lattice point ``p`` to the segment from 0 to ``v``."""
    vv = v[0] * v[0] + v[1] * v[1]
    t = Fraction(p[0] * v[0] + p[1] * v[1], vv)
    t = min(max(t, Fraction(0)), Fraction(1))
    dx, dy = p[0] - t * v[0], p[1] - t * v[1]
    return dx * dx + dy * dy


def max_deviation_sq(path: ZigzagPath, v) -> Fraction:
    if tuple(path.vector) != tuple(v):
        raise ValueError(f"path ends at {path.vector}, not {tuple(v)}")
    return max(deviation_sq(p, v) for p in path.vertices())


def max_deviation(path: ZigzagPath, v) -> float:
    """Largest vertex distance to the segment; vertices suffice by convexity."""
    return math.sqrt(max_deviation_sq(path, v))


def _dp_path(nx: int, ny: int, ystep: int, v) -> list[tuple[int, int]]:
    # node cost is the squared cross product, proportional to the squared
    # distance to the line; projections of monotone nodes stay on the segment
    def cost(a, b):
        c = a * v[1] - ystep * b * v[0]
        return c * c

    # best[a][b]: smallest achievable max cost from node (a, b) to the end
    best = [[0] * (ny + 1) for _ in range(nx + 1)]
    for a in range(nx, -1, -1):
        for b in range(ny, -1, -1):
            nexts = []
            if a < nx:
                nexts.append(best[a + 1][b])
            if b < ny:
                nexts.append(best[a][b + 1])
            best[a][b] = max(cost(a, b), min(nexts)) if nexts else cost(a, b)
    opt = best[0][0]
    steps = []
    a = b = 0
    while (a, b) != (nx, ny):
        if a < nx and best[a + 1][b] <= opt:
            steps.append((1, 0))
            a += 1
        else:
            steps.append((0, ystep))
            b += 1
    return steps


def _greedy_path(nx: int, ny: int, ystep: int, v) -> list[tuple[int, int]]:
    steps = []
    a = b = 0
    while (a, b) != (nx, ny):
        cx = abs((a + 1) * v[1] - ystep * b * v[0]) if a < nx else None
        cy = abs(a * v[1] - ystep * (b + 1) * v[0]) if b < ny else None
        if cy is None or (cx is not None and cx <= cy):
            steps.append((1, 0))
            a += 1
        else:
            steps.append((0, ystep))
            b += 1
    return steps


def zigzag_edge(v) -> ZigzagPath:
    """The canonical min-max-deviation monotone lattice path from 0 to ``v``.

    The path is computed for the lexicographically positive one of ``v`` and
    ``-v``; among optimal paths the x-step is taken first whenever possible.
    The path for the opposite vector is the reversal, so an edge shared by
    two tiles gets the same point set from both sides.
    """
    v = (int(v[0]), int(v[1]))
    if v == (0, 0):
        raise ValueError("zero vector has no zig-zag")
    w = canonical_orientation(v)
    nx, ny = w[0], abs(w[1])
    ystep = 1 if w[1] > 0 else -1
    if (nx + 1) * (ny + 1) <= DP_NODE_LIMIT:
        steps = _dp_path(nx, ny, ystep, w)
    else:
        steps = _greedy_path(nx, ny, ystep, w)
    path = ZigzagPath(tuple(steps))
    if 2 * max_deviation_sq(path, w) > 1:
        raise ZigzagFailure(f"path for {w} deviates more than sqrt(2)/2")
    return path if w == v else path.reversed()


def winding_cells(loop: Sequence[tuple[int, int]]) -> dict[tuple[int, int], int]:
    """Nonzero winding numbers of a closed rectilinear lattice loop around cell centres.

    Cell ``(x, y)`` is the unit square with lower-left corner ``(x, y)``.  A
    rightward ray from its centre crosses the vertical segments at larger x;
    upward crossings count +1.
    """
    pts = [tuple(map(int, p)) for p in loop]
    if len(pts) < 2 or pts[0] != pts[-1]:
        raise ValueError("loop does not close")
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    x0, y0 = min(xs), min(ys)
    w, h = max(xs) - x0, max(ys) - y0
    if w == 0 or h == 0:
        return {}
    diff = np.zeros((h, w + 1), dtype=np.int64)
    for (ax, ay), (bx, by) in zip(pts, pts[1:]):
        if ax != bx and ay != by:
            raise ValueError(f"segment {(ax, ay)}->{(bx, by)} is not axis-parallel")
        if ax != bx:
            continue
        sign = 1 if by > ay else -1
        for y in range(min(ay, by), max(ay, by)):
            diff[y - y0, 0] += sign
            diff[y - y0, ax - x0] -= sign
    wind = np.cumsum(diff, axis=1)[:, :w]
    rows, cols = np.nonzero(wind)
    return {(int(c) + x0, int(r) + y0): int(wind[r, c]) for r, c in zip(rows, cols)}


def _components(cells) -> int:
    todo = set(cells)
    count = 0
    while todo:
        count += 1
        q = deque([todo.pop()])
        while q:
            x, y = q.popleft()
            for nb in ((x + 1, y), (x - 1, y), (x, y + 1), (x, y - 1)):
                if nb in todo:
                    todo.remove(nb)
                    q.append(nb)
    return count


@dataclass(frozen=True)
class ZigzagTile:
    prototile: str
    cells: frozenset
    loop: tuple[tuple[int, int], ...] = field(repr=False)
    components: int = 1

    @property
    def anchor(self) -> tuple[int, int]:
        return min(self.cells, key=lambda c: (c[1], c[0]))

    @property
    def area(self) -> int:
        return len(self.cells)


@dataclass(frozen=True)
class ZigzagSystem:
    paths: dict
    tiles: tuple[ZigzagTile, ...]
    source: TileSystem

    _index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_index", {t.prototile: t for t in self.tiles})

    def tile(self, tid: str) -> ZigzagTile:
        return self._index[tid]

    @property
    def total_cells(self) -> int:
        return sum(t.area for t in self.tiles)


def tile_loop(word, paths) -> list[tuple[int, int]]:
    pts = [(0, 0)]
    for eid, sign in word:
        path = paths[eid] if sign > 0 else paths[eid].reversed()
        x, y = pts[-1]
        pts.extend((x + px, y + py) for px, py in path.vertices()[1:])
    return pts


def build_zigzag_system(s: TileSystem, cell_budget: int = CELL_BUDGET) -> ZigzagSystem:
    """Zig-zag every edge type and rasterize every prototile.

    Raises :class:`ZigzagFailure` if a region is empty or has winding outside
    {0, 1}; prescaling the integral system by 2 and retrying is the remedy.
    Raises ``ValueError`` if the total prototile area exceeds ``cell_budget``.
    """
    if s.stage != "integral":
        raise ValueError("zig-zag construction needs an integral system")
    require_valid(s)
    total = sum(prototile_area(p, s) for p in s.prototiles)
    if total > cell_budget:
        raise ValueError(f"total area {total} exceeds the cell budget {cell_budget}")
    paths = {e.id: zigzag_edge(e.vector) for e in s.edge_types}
    tiles = []
    for p in s.prototiles:
        loop = tile_loop(p.boundary, paths)
        if loop[-1] != (0, 0):
            raise ZigzagFailure(f"zig-zag loop of {p.id} does not close", p.id)
        wind = winding_cells(loop)
        bad = {c: w for c, w in wind.items() if w != 1}
        if bad:
            c, w = min(bad.items())
            raise ZigzagFailure(f"{p.id}: winding {w} at cell {c}", p.id)
        if not wind:
            raise ZigzagFailure(f"{p.id}: empty zig-zag region", p.id)
        area = geo.signed_area(loop[:-1])
        if area != len(wind):
            raise ZigzagFailure(f"{p.id}: {len(wind)} cells but loop area {area}", p.id)
        cells = frozenset(wind)
        tiles.append(ZigzagTile(p.id, cells, tuple(loop), _components(cells)))
    return ZigzagSystem(paths, tuple(tiles), s)
