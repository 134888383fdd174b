"""Planar predicates on polygons with exact (Fraction) coordinates.

Every predicate takes an ``eps``: 0 gives exact arithmetic, a positive value
treats near-zero cross products as zero (used for real-stage inputs).
"""
from __future__ import annotations

from fractions import Fraction

Point = tuple[Fraction, Fraction]

OVERLAP = "overlap"
PARTIAL = "partial-edge"
MISMATCH = "edge-mismatch"


def sub(a, b):
    return (a[0] - b[0], a[1] - b[1])


def add(a, b):
    return (a[0] + b[0], a[1] + b[1])


def cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def dot(u, v):
    return u[0] * v[0] + u[1] * v[1]


def _sgn(x, eps):
    if x > eps:
        return 1
    if x < -eps:
        return -1
    return 0


def signed_area(poly) -> Fraction:
    n = len(poly)
    s = sum(
        (poly[i][0] * poly[(i + 1) % n][1] - poly[(i + 1) % n][0] * poly[i][1] for i in range(n)),
        Fraction(0),
    )
    return s / 2


def bbox(poly):
    xs = [p[0] for p in poly]
    ys = [p[1] for p in poly]
    return min(xs), min(ys), max(xs), max(ys)


def bbox_overlap(b1, b2, eps=0) -> bool:
    return not (b1[2] < b2[0] - eps or b2[2] < b1[0] - eps or b1[3] < b2[1] - eps or b2[3] < b1[1] - eps)


def on_segment(p, a, b, eps=0) -> bool:
    """Closed-segment membership."""
    if _sgn(cross(a, b, p), eps) != 0:
        return False
    return (
        min(a[0], b[0]) - eps <= p[0] <= max(a[0], b[0]) + eps
        and min(a[1], b[1]) - eps <= p[1] <= max(a[1], b[1]) + eps
    )


def segments_intersect(a, b, c, d, eps=0) -> bool:
    """Closed segments [a,b] and [c,d] share at least one point."""
    o1 = _sgn(cross(a, b, c), eps)
    o2 = _sgn(cross(a, b, d), eps)
    o3 = _sgn(cross(c, d, a), eps)
    o4 = _sgn(cross(c, d, b), eps)
    if o1 * o2 < 0 and o3 * o4 < 0:
        return True
    return (
        (o1 == 0 and on_segment(c, a, b, eps))
        or (o2 == 0 and on_segment(d, a, b, eps))
        or (o3 == 0 and on_segment(a, c, d, eps))
        or (o4 == 0 and on_segment(b, c, d, eps))
    )


def locate(pt, poly, eps=0) -> int:
    """+1 strictly inside, 0 on the boundary, -1 strictly outside."""
    n = len(poly)
    wn = 0
    for i in range(n):
        a, b = poly[i], poly[(i + 1) % n]
        if on_segment(pt, a, b, eps):
            return 0
        if a[1] <= pt[1]:
            if b[1] > pt[1] and cross(a, b, pt) > 0:
                wn += 1
        elif b[1] <= pt[1] and cross(a, b, pt) < 0:
            wn -= 1
    return 1 if wn != 0 else -1


def is_simple(poly, eps=0) -> bool:
    """No self-intersection and no back-tracking between consecutive edges."""
    n = len(poly)
    if n < 3:
        return False
    for i in range(n):
        for j in range(i + 1, n):
            if poly[i] == poly[j]:
                return False
    for i in range(n):
        a, b = poly[i], poly[(i + 1) % n]
        c = poly[(i + 2) % n]
        if _sgn(cross(a, b, c), eps) == 0 and dot(sub(b, a), sub(c, b)) < 0:
            return False
        for j in range(i + 2, n):
            if i == 0 and j == n - 1:
                continue
            if segments_intersect(a, b, poly[j], poly[(j + 1) % n], eps):
                return False
    return True


def interior_point(poly, eps=0) -> Point:
    """A point strictly inside a simple counter-clockwise polygon."""
    n = len(poly)
    i = min(range(n), key=lambda k: (poly[k][1], poly[k][0]))
    v, prev, nxt = poly[i], poly[i - 1], poly[(i + 1) % n]
    best = None
    best_d = None
    for k, q in enumerate(poly):
        if k in (i, (i - 1) % n, (i + 1) % n):
            continue
        # q in the closed ear triangle (prev, v, nxt)?
        if (
            _sgn(cross(prev, v, q), eps) >= 0
            and _sgn(cross(v, nxt, q), eps) >= 0
            and _sgn(cross(nxt, prev, q), eps) >= 0
        ):
            d = cross(nxt, prev, q)
            if best is None or d > best_d:
                best, best_d = q, d
    if best is None:
        return ((prev[0] + v[0] + nxt[0]) / 3, (prev[1] + v[1] + nxt[1]) / 3)
    return ((v[0] + best[0]) / 2, (v[1] + best[1]) / 2)


def _param(p, a, b):
    d = sub(b, a)
    return dot(sub(p, a), d) / dot(d, d)


def _boundary_vs(poly, other, eps):
    """Split each edge of ``poly`` against ``other``.

    Returns ``(overlap, contacts)`` where ``contacts`` lists indices of edges of
    ``poly`` having a positive-length piece on the boundary of ``other``.
    """
    contacts = []
    n, m = len(poly), len(other)
    for i in range(n):
        a, b = poly[i], poly[(i + 1) % n]
        ts = [Fraction(0), Fraction(1)]
        for j in range(m):
            c, d = other[j], other[(j + 1) % m]
            o1 = _sgn(cross(a, b, c), eps)
            o2 = _sgn(cross(a, b, d), eps)
            o3 = _sgn(cross(c, d, a), eps)
            o4 = _sgn(cross(c, d, b), eps)
            if o1 * o2 < 0 and o3 * o4 < 0:
                return True, contacts
            for q, o in ((c, o1), (d, o2)):
                if o == 0 and on_segment(q, a, b, eps):
                    t = _param(q, a, b)
                    if 0 < t < 1:
                        ts.append(t)
        ts = sorted(set(ts))
        touching = False
        for t0, t1 in zip(ts, ts[1:]):
            tm = (t0 + t1) / 2
            mid = (a[0] + tm * (b[0] - a[0]), a[1] + tm * (b[1] - a[1]))
            where = locate(mid, other, eps)
            if where > 0:
                return True, contacts
            if where == 0:
                touching = True
        if touching:
            contacts.append(i)
    return False, contacts


def polygon_contact(p, q, eps=0):
    """Classify how two simple CCW polygons meet.

    Returns ``(overlap, p_edges, q_edges)``: whether interiors intersect and
    which edges of each carry a positive-length shared boundary piece.
    """
    if not bbox_overlap(bbox(p), bbox(q), eps):
        return False, [], []
    hit, pc = _boundary_vs(p, q, eps)
    if hit:
        return True, pc, []
    hit, qc = _boundary_vs(q, p, eps)
    if hit:
        return True, pc, qc
    if locate(interior_point(q, eps), p, eps) > 0 or locate(interior_point(p, eps), q, eps) > 0:
        return True, pc, qc
    return False, pc, qc


class Snapper:
    """Merges points closer than ``tol`` into one representative (first seen)."""

    def __init__(self, tol=Fraction(1, 10**8)):
        self.tol = tol
        self.cell = tol * 100
        self._grid: dict[tuple[int, int], list[Point]] = {}

    def __call__(self, p: Point) -> Point:
        if self.tol == 0:
            return p
        gx, gy = int(p[0] // self.cell), int(p[1] // self.cell)
        for dx in (-1, 0, 1):
            for dy in (-1, 0, 1):
                for q in self._grid.get((gx + dx, gy + dy), ()):
                    if abs(q[0] - p[0]) <= self.tol and abs(q[1] - p[1]) <= self.tol:
                        return q
        self._grid.setdefault((gx, gy), []).append(p)
        return p


class ExactSnapper(Snapper):
    def __init__(self):
        super().__init__(tol=0)
