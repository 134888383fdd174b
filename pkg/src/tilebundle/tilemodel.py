"""Tiling systems, prototiles as signed boundary words, and finite patches.

A prototile is described by the cyclic word of oriented edge types around
its boundary.  Vertex coordinates are never stored; they are prefix sums of
the edge vectors starting from the origin.
"""
from __future__ import annotations

import heapq
import logging
from collections import deque
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

from . import _geometry as geo
from .errors import PathIndependenceError, ValidationError
from .exactmath import RealScalar, as_rat

log = logging.getLogger(__name__)

STAGES = ("real", "rational", "integral")
REAL_TOL = 1e-9


class Issue(NamedTuple):
    subject: str
    kind: str
    detail: str = ""

    def __str__(self) -> str:
        return f"{self.subject}: {self.kind}" + (f" ({self.detail})" if self.detail else "")


def _coerce(value, stage):
    if stage == "real":
        if isinstance(value, Fraction):
            value = float(value)
        return RealScalar(value)
    if stage == "rational":
        if isinstance(value, float):
            raise TypeError(f"float {value!r} not allowed at rational stage")
        return as_rat(value)
    if isinstance(value, float) or (isinstance(value, str) and "." in value):
        raise TypeError(f"non-integer {value!r} at integral stage")
    r = as_rat(value)
    if r.denominator != 1:
        raise TypeError(f"non-integer {value!r} at integral stage")
    return int(r)


@dataclass(frozen=True)
class EdgeType:
    id: str
    vector: tuple


@dataclass(frozen=True)
class Prototile:
    id: str
    boundary: tuple[tuple[str, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "boundary", tuple((str(e), int(s)) for e, s in self.boundary))


@dataclass(frozen=True)
class TileSystem:
    stage: str
    edge_types: tuple[EdgeType, ...]
    prototiles: tuple[Prototile, ...]
    _edges: dict = field(init=False, repr=False, compare=False)
    _tiles: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.stage not in STAGES:
            raise ValueError(f"unknown stage {self.stage!r}")
        edges = tuple(
            EdgeType(e.id, tuple(_coerce(c, self.stage) for c in e.vector)) for e in self.edge_types
        )
        object.__setattr__(self, "edge_types", edges)
        object.__setattr__(self, "prototiles", tuple(self.prototiles))
        object.__setattr__(self, "_edges", {e.id: e for e in edges})
        object.__setattr__(self, "_tiles", {p.id: p for p in self.prototiles})

    dimension = 2

    @property
    def exact(self) -> bool:
        return self.stage != "real"

    @property
    def eps(self):
        return 0 if self.exact else Fraction(REAL_TOL)

    def edge(self, eid: str) -> EdgeType:
        return self._edges[eid]

    def prototile(self, tid: str) -> Prototile:
        return self._tiles[tid]

    def exact_vector(self, eid: str) -> tuple[Fraction, Fraction]:
        """Edge vector as Fractions (the exact binary value at the real stage)."""
        x, y = self._edges[eid].vector
        return as_rat(x), as_rat(y)

    def step(self, eid: str, sign: int) -> tuple[Fraction, Fraction]:
        x, y = self.exact_vector(eid)
        return (x, y) if sign > 0 else (-x, -y)

    def loop(self, tid: str) -> list[tuple[Fraction, Fraction]]:
        """All m+1 prefix-sum points of a boundary word, starting at the origin."""
        pts = [(Fraction(0), Fraction(0))]
        for eid, sign in self._tiles[tid].boundary:
            pts.append(geo.add(pts[-1], self.step(eid, sign)))
        return pts

    def vertices(self, tid: str) -> list[tuple[Fraction, Fraction]]:
        return self.loop(tid)[:-1]

    def with_vectors(self, vectors: dict, stage: str) -> "TileSystem":
        """Same combinatorics, new edge vectors."""
        return TileSystem(
            stage, tuple(EdgeType(e.id, tuple(vectors[e.id])) for e in self.edge_types), self.prototiles
        )

    def scaled(self, k) -> "TileSystem":
        return self.with_vectors(
            {e.id: tuple(as_rat(c) * k for c in e.vector) for e in self.edge_types}, self.stage
        )

    def uses(self, eid: str) -> list[tuple[str, int, int]]:
        """Occurrences of an edge type as (prototile id, word position, sign)."""
        return [
            (p.id, k, s) for p in self.prototiles for k, (e, s) in enumerate(p.boundary) if e == eid
        ]


def validate_system(s: TileSystem) -> list[Issue]:
    """Check closure, simplicity, orientation and area of every prototile.

    Returns an empty list iff the system is valid.
    """
    issues: list[Issue] = []
    for e in s.edge_types:
        if all(as_rat(c) == 0 for c in e.vector):
            issues.append(Issue(e.id, "zero-vector"))
    seen = set()
    for p in s.prototiles:
        if p.id in seen:
            issues.append(Issue(p.id, "duplicate-prototile"))
        seen.add(p.id)
        if len(p.boundary) < 3:
            issues.append(Issue(p.id, "short-boundary", f"length {len(p.boundary)}"))
            continue
        missing = [e for e, _ in p.boundary if e not in s._edges]
        if missing:
            issues.append(Issue(p.id, "unknown-edge", ", ".join(missing)))
            continue
        bad_sign = [sg for _, sg in p.boundary if sg not in (1, -1)]
        if bad_sign:
            issues.append(Issue(p.id, "bad-sign", str(bad_sign[0])))
            continue
        pts = s.loop(p.id)
        gap = pts[-1]
        if s.exact:
            if gap != (0, 0):
                issues.append(Issue(p.id, "closure", f"sum {gap[0]}, {gap[1]}"))
                continue
        elif max(abs(gap[0]), abs(gap[1])) > REAL_TOL:
            issues.append(Issue(p.id, "closure", f"sum {float(gap[0]):.3g}, {float(gap[1]):.3g}"))
            continue
        poly = pts[:-1]
        area = geo.signed_area(poly)
        if area == 0:
            issues.append(Issue(p.id, "zero-area"))
            continue
        if not geo.is_simple(poly, s.eps):
            issues.append(Issue(p.id, "not-simple"))
        if area < 0:
            issues.append(Issue(p.id, "clockwise", f"area {area}"))
    return issues


def require_valid(s: TileSystem) -> None:
    issues = validate_system(s)
    if issues:
        raise ValidationError(f"invalid tile system: {issues[0]}", issues)


def prototile_area(p: Prototile | str, s: TileSystem):
    """Exact shoelace area of a prototile (a float at the real stage)."""
    tid = p if isinstance(p, str) else p.id
    pts = s.loop(tid)
    if s.exact and pts[-1] != (0, 0):
        raise ValidationError(f"prototile {tid} does not close", [Issue(tid, "closure")])
    area = geo.signed_area(pts[:-1])
    if area <= 0:
        raise ValidationError(f"prototile {tid} has non-positive area", [Issue(tid, "zero-area")])
    if not s.exact:
        return float(area)
    return int(area) if area.denominator == 1 else area


class TorusPoint(NamedTuple):
    """A point of R^2/Z^2, both coordinates reduced into [0, 1)."""

    x: Fraction
    y: Fraction

    @classmethod
    def of(cls, x, y) -> "TorusPoint":
        return cls(as_rat(x) % 1, as_rat(y) % 1)

    def __sub__(self, w) -> "TorusPoint":
        return TorusPoint.of(self.x - as_rat(w[0]), self.y - as_rat(w[1]))


def _pair(v) -> tuple[Fraction, Fraction]:
    x, y = v
    return as_rat(x), as_rat(y)


@dataclass(frozen=True)
class Placement:
    tile: str
    translation: tuple[Fraction, Fraction]

    def __post_init__(self):
        object.__setattr__(self, "translation", _pair(self.translation))


@dataclass(frozen=True)
class Patch:
    """Placed prototiles plus a marked origin inside the seed tile."""

    placed: tuple[Placement, ...]
    seed: int = 0
    origin_offset: tuple[Fraction, Fraction] = (Fraction(0), Fraction(0))

    def __post_init__(self):
        placed = tuple(p if isinstance(p, Placement) else Placement(*p) for p in self.placed)
        object.__setattr__(self, "placed", placed)
        object.__setattr__(self, "origin_offset", _pair(self.origin_offset))
        if placed and not 0 <= self.seed < len(placed):
            raise ValueError(f"seed index {self.seed} out of range")

    def __len__(self):
        return len(self.placed)

    @property
    def origin(self) -> tuple[Fraction, Fraction]:
        return geo.add(self.placed[self.seed].translation, self.origin_offset)

    def translated(self, w) -> "Patch":
        """Move every tile, and the marked origin with them, by ``w``."""
        w = _pair(w)
        return replace(self, placed=tuple(Placement(p.tile, geo.add(p.translation, w)) for p in self.placed))

    def shifted(self, w) -> "Patch":
        """Move the marked origin by ``w`` while the tiles stay put."""
        return replace(self, origin_offset=geo.add(self.origin_offset, _pair(w)))

    def placement_key(self) -> tuple:
        return tuple(sorted((p.tile, p.translation) for p in self.placed))

    def polygon(self, i: int, s: TileSystem) -> list[tuple[Fraction, Fraction]]:
        t = self.placed[i].translation
        return [geo.add(t, v) for v in s.vertices(self.placed[i].tile)]


class _Layout:
    """Absolute tile polygons of a patch, snapped, with an edge index."""

    def __init__(self, s: TileSystem):
        self.s = s
        self.eps = REAL_TOL if not s.exact else 0
        self.snap = geo.Snapper(1e-8) if not s.exact else geo.ExactSnapper()
        self.polys: list[list] = []
        self.words: list[tuple] = []
        self.edges: dict = {}
        self.buckets: dict = {}
        self.cell = None

    def make(self, tile: str, t) -> list:
        return [self.snap(self.num(geo.add(t, v))) for v in self.s.vertices(tile)]

    def num(self, p):
        if not self.s.exact:
            return float(p[0]), float(p[1])
        return tuple(int(c) if c.denominator == 1 else c for c in p)

    def _cells(self, poly):
        if self.cell is None:
            x0, y0, x1, y1 = geo.bbox(poly)
            self.cell = max(x1 - x0, y1 - y0, 1)
        x0, y0, x1, y1 = geo.bbox(poly)
        c = self.cell
        for gx in range(int((x0 - 1) // c), int((x1 + 1) // c) + 1):
            for gy in range(int((y0 - 1) // c), int((y1 + 1) // c) + 1):
                yield gx, gy

    def near(self, poly) -> set[int]:
        out = set()
        for key in self._cells(poly):
            out.update(self.buckets.get(key, ()))
        return out

    def add(self, tile: str, poly: list) -> int:
        i = len(self.polys)
        self.polys.append(poly)
        self.words.append(self.s.prototile(tile).boundary)
        n = len(poly)
        for k in range(n):
            self.edges.setdefault((poly[k], poly[(k + 1) % n]), []).append((i, k))
        for key in self._cells(poly):
            self.buckets.setdefault(key, []).append(i)
        return i

    def conflicts(self, i_poly, i_word, j: int, label_i="new") -> list[Issue]:
        """Issues between a polygon (with its word) and placed tile ``j``."""
        q, qword = self.polys[j], self.words[j]
        overlap, pe, qe = geo.polygon_contact(i_poly, q, self.eps)
        subject = f"tiles {label_i},{j}"
        if overlap:
            return [Issue(subject, geo.OVERLAP)]
        issues = []
        n, m = len(i_poly), len(q)
        matched_q = set()
        for k in pe:
            a, b = i_poly[k], i_poly[(k + 1) % n]
            full = [l for l in qe if q[l] == b and q[(l + 1) % m] == a]
            if not full:
                issues.append(Issue(subject, geo.PARTIAL, f"edge {k}"))
                continue
            l = full[0]
            matched_q.add(l)
            (e1, s1), (e2, s2) = i_word[k], qword[l]
            if e1 != e2 or s1 != -s2:
                issues.append(Issue(subject, geo.MISMATCH, f"{e1}{s1:+d} vs {e2}{s2:+d}"))
        for l in qe:
            if l not in matched_q:
                issues.append(Issue(subject, geo.PARTIAL, f"edge {l} of {j}"))
        return issues


def validate_patch(p: Patch, s: TileSystem) -> list[Issue]:
    """Report interior overlaps and contacts that are not full matching edges."""
    issues: list[Issue] = []
    lay = _Layout(s)
    for i, pl in enumerate(p.placed):
        if pl.tile not in s._tiles:
            issues.append(Issue(f"tile {i}", "unknown-prototile", pl.tile))
            continue
        poly = lay.make(pl.tile, pl.translation)
        word = s.prototile(pl.tile).boundary
        for j in sorted(lay.near(poly)):
            issues.extend(lay.conflicts(poly, word, j, label_i=str(i)))
        lay.add(pl.tile, poly)
    return issues


def adjacencies(p: Patch, s: TileSystem) -> list[tuple[int, int, int, int]]:
    """Full shared edges as ``(i, k, j, l)``: edge k of tile i is edge l of tile j reversed."""
    lay = _Layout(s)
    for pl in p.placed:
        lay.add(pl.tile, lay.make(pl.tile, pl.translation))
    out = []
    for (a, b), owners in lay.edges.items():
        for j, l in lay.edges.get((b, a), ()):
            for i, k in owners:
                if i < j:
                    out.append((i, k, j, l))
    out.sort()
    return out


def bfs_place(
    p: Patch,
    source: TileSystem,
    target: TileSystem,
    seed_translation,
    tol=None,
) -> tuple[list[tuple[Fraction, Fraction]], int]:
    """Re-position the tiles of ``p`` with the edge vectors of ``target``.

    Tiles are placed in order of (adjacency distance from the seed, index);
    each tile is positioned from its first placed neighbour and checked
    against all others.  Returns the translations and the number of
    multi-path checks performed.
    """
    n = len(p.placed)
    if tol is None:
        tol = target.eps
    nbrs: list[list[tuple[int, int, int]]] = [[] for _ in range(n)]
    for i, k, j, l in adjacencies(p, source):
        nbrs[i].append((j, k, l))
        nbrs[j].append((i, l, k))
    dist = [None] * n
    dist[p.seed] = 0
    q = deque([p.seed])
    while q:
        i = q.popleft()
        for j, _, _ in nbrs[i]:
            if dist[j] is None:
                dist[j] = dist[i] + 1
                q.append(j)
    if any(d is None for d in dist):
        raise ValidationError("patch is not edge-connected", [Issue("patch", "disconnected")])
    order = sorted(range(n), key=lambda i: (dist[i], i))
    rank = {i: r for r, i in enumerate(order)}
    loops = {}

    def loop(i):
        if i not in loops:
            loops[i] = target.loop(p.placed[i].tile)
        return loops[i]

    pos: list = [None] * n
    pos[p.seed] = _pair(seed_translation)
    checks = 0
    for j in order[1:]:
        for i, l, k in sorted(nbrs[j], key=lambda t: (rank[t[0]], t[1], t[2])):
            if pos[i] is None:
                continue
            # edge k of i runs a->b; edge l of j runs b->a
            b = geo.add(pos[i], loop(i)[k + 1])
            implied = geo.sub(b, loop(j)[l])
            if pos[j] is None:
                pos[j] = implied
                continue
            checks += 1
            dx, dy = geo.sub(implied, pos[j])
            if abs(dx) > tol or abs(dy) > tol:
                raise PathIndependenceError(
                    f"tile {j} placed at {tuple(map(str, pos[j]))} and at {tuple(map(str, implied))}",
                    j,
                    (pos[j], implied),
                )
    return pos, checks


def grow_patch(
    s: TileSystem,
    p: Patch,
    steps: int,
    skipped: list | None = None,
    companions: Sequence[TileSystem] = (),
) -> Patch:
    """Attach up to ``steps`` tiles along free boundary edges.

    Free edges are processed nearest-first (squared distance of the edge
    midpoint from the seed tile's vertex centroid, then tile and edge
    index).  For each, the prototiles are tried in system order and their
    matching occurrences in word order; the first placement that keeps the
    patch valid is kept.  Edges with no
    fitting tile are appended to ``skipped`` as (tile index, edge index).

    ``companions`` are systems with the same combinatorics in which the
    patch, placed edge by edge, must stay valid as well.  Brute-force edge
    matching knows nothing of a tiling space's global rules, so this is how
    to grow patches that survive a change of edge vectors.
    """
    if steps <= 0 or not p.placed:
        return p
    systems = [s, *companions]
    layouts = [_Layout(x) for x in systems]
    trans = [list(_initial_translations(p, s, x)) for x in systems]
    for lay, ts in zip(layouts, trans):
        for pl, t in zip(p.placed, ts):
            lay.add(pl.tile, lay.make(pl.tile, t))
    tiles = [pl.tile for pl in p.placed]
    lay = layouts[0]
    seed_poly = lay.polys[p.seed]
    centre = tuple(sum(float(v[k]) for v in seed_poly) / len(seed_poly) for k in (0, 1))
    queue: list = []

    def push(i):
        poly = lay.polys[i]
        for k in range(len(poly)):
            a, b = poly[k], poly[(k + 1) % len(poly)]
            mx, my = float(a[0] + b[0]) / 2 - centre[0], float(a[1] + b[1]) / 2 - centre[1]
            heapq.heappush(queue, (round(mx * mx + my * my, 6), i, k))

    for i in range(len(tiles)):
        push(i)
    attached = 0
    while queue and attached < steps:
        _, i, k = heapq.heappop(queue)
        poly = lay.polys[i]
        a, b = poly[k], poly[(k + 1) % len(poly)]
        if (b, a) in lay.edges:
            continue
        eid, sign = lay.words[i][k]
        for tid, l, sg in s.uses(eid):
            if sg != -sign:
                continue
            word = s.prototile(tid).boundary
            cands = []
            for x, xl, ts in zip(systems, layouts, trans):
                t = geo.sub(geo.add(ts[i], x.loop(tiles[i])[k + 1]), x.loop(tid)[l])
                cand = xl.make(tid, t)
                xa, xb = xl.polys[i][k], xl.polys[i][(k + 1) % len(xl.polys[i])]
                if cand[l] != xb or cand[(l + 1) % len(cand)] != xa:
                    break
                if any(xl.conflicts(cand, word, j) for j in sorted(xl.near(cand))):
                    break
                cands.append((t, cand))
            else:
                for xl, ts, (t, cand) in zip(layouts, trans, cands):
                    xl.add(tid, cand)
                    ts.append(t)
                tiles.append(tid)
                push(len(tiles) - 1)
                attached += 1
                break
        else:
            log.debug("no prototile fits free edge %d of tile %d", k, i)
            if skipped is not None:
                skipped.append((i, k))
    grown = replace(p, placed=tuple(Placement(tid, t) for tid, t in zip(tiles, trans[0])))
    # re-derive translations along the canonical tree so that real-stage
    # coordinates do not depend on attachment history
    pos, _ = bfs_place(grown, s, s, grown.placed[grown.seed].translation)
    return replace(grown, placed=tuple(Placement(pl.tile, t) for pl, t in zip(grown.placed, pos)))


def _initial_translations(p: Patch, s: TileSystem, target: TileSystem):
    if target is s:
        return [pl.translation for pl in p.placed]
    pos, _ = bfs_place(p, s, target, p.placed[p.seed].translation)
    return pos


def patch_vertices(p: Patch, s: TileSystem) -> Iterable[tuple[Fraction, Fraction]]:
    for i in range(len(p.placed)):
        yield from p.polygon(i, s)


def single_tile_patch(tile: str, translation=(0, 0), origin_offset=(0, 0)) -> Patch:
    return Patch((Placement(tile, translation),), 0, origin_offset)


def system_from_words(
    stage: str, vectors: dict[str, Sequence], words: dict[str, Sequence[tuple[str, int]]]
) -> TileSystem:
    """Convenience constructor from plain dicts."""
    return TileSystem(
        stage,
        tuple(EdgeType(k, tuple(v)) for k, v in vectors.items()),
        tuple(Prototile(k, tuple(w)) for k, w in words.items()),
    )
