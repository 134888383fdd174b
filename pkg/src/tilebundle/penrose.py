"""The Penrose B-tile system: forty triangles, forty edge types.

Edge types are ``a0..a9``, ``b0..b9``, ``c0..c9``, ``d0..d9`` where the digit
is the power of the rotation by 2*pi/10.  Prototiles ``A0..D9`` follow the
four closure families

    A_n:  a_n     + b_n     - c_n
    B_n:  a_{n+6} + b_{n+4} - c_n
    C_n: -a_{n+4} + b_{n+1} - d_n
    D_n: -a_{n+2} + b_{n+3} - d_n

with every word rotated into counter-clockwise order.
"""
from __future__ import annotations

import cmath
import math

from .tilemodel import EdgeType, Prototile, TileSystem

TAU = (1 + math.sqrt(5)) / 2

#: Integer edge vectors (a_n, b_n, c_n, d_n) for n = 0..9.
INTEGER_TABLE = (
    ((1, 4), (1, -4), (2, 0), (6, 0)),
    ((-1, 4), (3, -2), (2, 2), (5, 4)),
    ((-3, 2), (4, 0), (1, 2), (2, 6)),
    ((-4, 0), (3, 2), (-1, 2), (-2, 6)),
    ((-3, -2), (1, 4), (-2, 2), (-5, 4)),
    ((-1, -4), (-1, 4), (-2, 0), (-6, 0)),
    ((1, -4), (-3, 2), (-2, -2), (-5, -4)),
    ((3, -2), (-4, 0), (-1, -2), (-2, -6)),
    ((4, 0), (-3, -2), (1, -2), (2, -6)),
    ((3, 2), (-1, -4), (2, -2), (5, -4)),
)

FAMILIES = "abcd"
TILE_NAMES = "ABCD"


def _a_vectors() -> list[tuple[float, float]]:
    t = TAU
    first = [
        (2 * (t - 1), 2 * math.sqrt(t + 2)),
        (-2 * (t - 1), 2 * math.sqrt(t + 2)),
        (-2 * t, 2 * math.sqrt(3 - t)),
        (-4.0, 0.0),
        (-2 * t, -2 * math.sqrt(3 - t)),
    ]
    return first + [(-x, -y) for x, y in first]


def real_vectors() -> dict[str, tuple[float, float]]:
    a = _a_vectors()
    out = {}
    for n in range(10):
        out[f"a{n}"] = a[n]
    for n in range(10):
        out[f"b{n}"] = a[(n - 4) % 10]
    for n in range(10):
        x, y = a[(n - 2) % 10]
        out[f"c{n}"] = ((TAU - 1) * x, (TAU - 1) * y)
    for n in range(10):
        x, y = a[(n - 2) % 10]
        out[f"d{n}"] = (TAU * x, TAU * y)
    return out


def integer_vectors() -> dict[str, tuple[int, int]]:
    return {f"{FAMILIES[f]}{n}": INTEGER_TABLE[n][f] for n in range(10) for f in range(4)}


def equation_words() -> dict[str, list[tuple[str, int]]]:
    """Boundary words in the order the closure equations list them."""
    words = {}
    for n in range(10):
        words[f"A{n}"] = [(f"a{n}", 1), (f"b{n}", 1), (f"c{n}", -1)]
    for n in range(10):
        words[f"B{n}"] = [(f"a{(n + 6) % 10}", 1), (f"b{(n + 4) % 10}", 1), (f"c{n}", -1)]
    for n in range(10):
        words[f"C{n}"] = [(f"a{(n + 4) % 10}", -1), (f"b{(n + 1) % 10}", 1), (f"d{n}", -1)]
    for n in range(10):
        words[f"D{n}"] = [(f"a{(n + 2) % 10}", -1), (f"b{(n + 3) % 10}", 1), (f"d{n}", -1)]
    return words


def _ccw(word, vectors):
    x = y = 0.0
    area2 = 0.0
    for eid, sign in word:
        dx, dy = vectors[eid]
        dx, dy = sign * dx, sign * dy
        area2 += x * (y + dy) - (x + dx) * y
        x, y = x + dx, y + dy
    if area2 > 0:
        return list(word)
    return [(eid, -sign) for eid, sign in reversed(word)]


def _decimal(x: float) -> str:
    return format(x, ".17g")


def _edge_order() -> list[str]:
    return [f"{f}{n}" for f in FAMILIES for n in range(10)]


def real_system() -> TileSystem:
    vecs = real_vectors()
    edges = tuple(EdgeType(e, tuple(_decimal(c) for c in vecs[e])) for e in _edge_order())
    tiles = tuple(Prototile(k, tuple(_ccw(w, vecs))) for k, w in equation_words().items())
    return TileSystem("real", edges, tiles)


def integral_system() -> TileSystem:
    """The integer solution table with the same (real-oriented) boundary words."""
    vecs = integer_vectors()
    real = real_system()
    edges = tuple(EdgeType(e, vecs[e]) for e in _edge_order())
    return TileSystem("integral", edges, real.prototiles)


def rotation_index(eid: str) -> tuple[str, int]:
    return eid[0], int(eid[1:])


def _robinson(generations: int):
    """Robinson half-rhomb triangles (kind, apex, left, right) by deflation.

    Kind 0 is the 36-degree triangle, kind 1 the 108-degree one.  The
    starting wheel is ten kind-0 triangles around the origin.
    """
    tris = []
    for i in range(10):
        b = cmath.rect(1, (2 * i - 1) * math.pi / 10)
        c = cmath.rect(1, (2 * i + 1) * math.pi / 10)
        if i % 2 == 0:
            b, c = c, b
        tris.append((0, 0j, b, c))
    for _ in range(generations):
        out = []
        for kind, a, b, c in tris:
            if kind == 0:
                p = a + (b - a) / TAU
                out += [(0, c, p, b), (1, p, c, a)]
            else:
                q = b + (a - b) / TAU
                r = b + (c - b) / TAU
                out += [(1, r, c, a), (1, q, r, b), (0, r, q, a)]
        tris = out
    return tris


def _leg_key(apex, end_a, end_b):
    legs = (end_a[0] - apex[0], end_a[1] - apex[1], end_b[0] - apex[0], end_b[1] - apex[1])
    return tuple(round(v, 5) + 0.0 for v in legs)


def _labelled_shapes(system: TileSystem) -> dict:
    """Map (a-leg end - apex, b-leg end - apex) to (prototile id, apex vertex index)."""
    out = {}
    for p in system.prototiles:
        vs = [(float(x), float(y)) for x, y in system.vertices(p.id)]
        m = len(vs)
        ends = {e[0]: {k, (k + 1) % m} for k, (e, _) in enumerate(p.boundary)}
        apex = (ends["a"] & ends["b"]).pop()
        ea = (ends["a"] - {apex}).pop()
        eb = (ends["b"] - {apex}).pop()
        out[_leg_key(vs[apex], vs[ea], vs[eb])] = (p.id, apex)
    return out


def deflation_patch(generations: int = 4, radius: float | None = None):
    """A patch of a genuine Penrose tiling in the real B-tile system.

    Robinson triangles from ``generations`` deflations of the sun are
    identified with prototiles by their labelled legs (the leg from the apex
    to the second listed vertex is the ``a`` edge).  With ``radius`` set,
    only triangles whose centroid lies within that distance of the origin
    are kept.  Tile 0 of the result is the triangle nearest the origin.
    """
    from .tilemodel import Patch, Placement, bfs_place

    system = real_system()
    shapes = _labelled_shapes(system)
    tris = _robinson(generations)
    scale = cmath.rect(4 / abs(tris[0][2] - tris[0][1]), math.pi / 10)
    found = []
    for _, a, b, c in tris:
        a, b, c = a * scale, b * scale, c * scale
        if radius is not None and abs((a + b + c) / 3) > radius:
            continue
        tid, apex = shapes[_leg_key((a.real, a.imag), (b.real, b.imag), (c.real, c.imag))]
        vx, vy = system.vertices(tid)[apex]
        found.append((abs((a + b + c) / 3), tid, (a.real - float(vx), a.imag - float(vy))))
    if not found:
        raise ValueError("no triangles inside the requested radius")
    seed = min(range(len(found)), key=lambda k: found[k][0])
    found.insert(0, found.pop(seed))
    # snap translations onto the lattice generated by the edge vectors
    rough = Patch(tuple(Placement(tid, t) for _, tid, t in found))
    pos, _ = bfs_place(rough, system, system, (0, 0))
    return Patch(tuple(Placement(pl.tile, t) for pl, t in zip(rough.placed, pos)))
