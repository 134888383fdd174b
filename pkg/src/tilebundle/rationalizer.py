"""Rational and integral versions of a tiling system, and the torus projection.

The closure constraints (signed edge vectors around each prototile sum to
zero) have integer coefficients, so rational solutions are dense in the
real solution set.  :func:`rationalize` finds one by pinning the free
variables of the reduced constraint matrix to good rational approximations
and solving for the pivot variables exactly.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction

import numpy as np
from scipy.optimize import linprog

from . import _geometry as geo
from .errors import RationalizationError, ValidationError
from .exactmath import RatMatrix, as_rat, best_rational_approx, lcm_of_denominators, rref
from .tilemodel import (
    REAL_TOL,
    Patch,
    TileSystem,
    TorusPoint,
    patch_vertices,
    require_valid,
    validate_system,
)

log = logging.getLogger(__name__)

HALF_DIAGONAL = math.sqrt(2) / 2
QMAX_START = 16
MAX_DOUBLINGS = 8


@dataclass(frozen=True)
class ConstraintSystem:
    """One row per prototile, one column per edge type; entries count signed uses."""

    matrix: tuple[tuple[int, ...], ...]
    rows: tuple[str, ...]
    cols: tuple[str, ...]

    def as_ratmatrix(self) -> RatMatrix:
        return RatMatrix.from_rows(self.matrix)

    def residual(self, values: dict) -> list[Fraction]:
        """Exact residuals of ``sum_i m[k][i] * values[col_i]`` for one coordinate."""
        vals = [as_rat(values[c]) for c in self.cols]
        return [sum((m * v for m, v in zip(row, vals) if m), Fraction(0)) for row in self.matrix]

    def satisfied_by(self, s: TileSystem) -> bool:
        for axis in (0, 1):
            vals = {e.id: e.vector[axis] for e in s.edge_types}
            if any(self.residual(vals)):
                return False
        return True


@dataclass(frozen=True)
class RescaleRecord:
    lcm_denominator: int
    inradius_prescale: int = 1

    @property
    def total_scale(self) -> int:
        return self.lcm_denominator * self.inradius_prescale


def assemble_constraints(s: TileSystem) -> ConstraintSystem:
    require_valid(s)
    cols = tuple(e.id for e in s.edge_types)
    index = {c: i for i, c in enumerate(cols)}
    rows = []
    for p in s.prototiles:
        row = [0] * len(cols)
        for eid, sign in p.boundary:
            row[index[eid]] += sign
        rows.append(tuple(row))
    cs = ConstraintSystem(tuple(rows), tuple(p.id for p in s.prototiles), cols)
    for axis in (0, 1):
        vals = {e.id: e.vector[axis] for e in s.edge_types}
        worst = max((abs(r) for r in cs.residual(vals)), default=0)
        if worst > REAL_TOL:
            raise ValidationError(f"edge vectors violate closure by {float(worst):.3g}")
    return cs


def _pin_and_solve(reduced: RatMatrix, pivots, free, reals, qmax):
    x = [None] * reduced.cols
    for f in free:
        x[f] = best_rational_approx(reals[f], qmax)
    for r, p in enumerate(pivots):
        x[p] = -sum((reduced[r, f] * x[f] for f in free if reduced[r, f]), Fraction(0))
    return x


def rationalize(s: TileSystem, epsilon: float) -> TileSystem:
    """A rational system with identical combinatorics within ``epsilon`` of ``s``.

    Free variables get best rational approximations with denominator at most
    ``qmax`` (16, doubled up to 8 times); pivot variables follow exactly, so
    closure holds with zero error.  The first ``qmax`` whose solution is
    within ``epsilon`` on every coordinate and passes validation wins.
    """
    if not epsilon > 0:
        raise ValueError("epsilon must be positive")
    if s.stage != "real":
        require_valid(s)
        return s
    if epsilon <= 10 * REAL_TOL:
        raise RationalizationError(
            f"epsilon {epsilon:g} is below what double-precision inputs can certify; "
            f"use a larger epsilon (above {10 * REAL_TOL:g})"
        )
    cs = assemble_constraints(s)
    reduced, pivots = rref(cs.as_ratmatrix())
    free = [c for c in range(len(cs.cols)) if c not in set(pivots)]
    exact_reals = [s.exact_vector(c) for c in cs.cols]
    eps = as_rat(float(epsilon))
    qmax = QMAX_START
    for attempt in range(MAX_DOUBLINGS + 1):
        xs = _pin_and_solve(reduced, pivots, free, [v[0] for v in exact_reals], qmax)
        ys = _pin_and_solve(reduced, pivots, free, [v[1] for v in exact_reals], qmax)
        dev = max(
            max(abs(x - v[0]), abs(y - v[1])) for x, y, v in zip(xs, ys, exact_reals)
        )
        if dev <= eps:
            out = s.with_vectors({c: (x, y) for c, x, y in zip(cs.cols, xs, ys)}, "rational")
            issues = validate_system(out)
            if not issues:
                log.info("rationalized with qmax=%d, deviation %.3g", qmax, float(dev))
                return out
            log.info("qmax=%d degenerate (%s); tightening", qmax, issues[0])
        qmax *= 2
    raise RationalizationError(
        f"no valid rational solution within {epsilon:g} up to denominator bound {qmax // 2}"
    )


def max_deviation(a: TileSystem, b: TileSystem) -> Fraction:
    return max(
        max(abs(x - y) for x, y in zip(a.exact_vector(e.id), b.exact_vector(e.id)))
        for e in a.edge_types
    )


def rescale_integral(s: TileSystem) -> tuple[TileSystem, RescaleRecord]:
    """Multiply by the least common denominator of all coordinates."""
    if s.stage == "real":
        raise ValueError("rescale_integral needs a rational or integral system")
    d = lcm_of_denominators(c for e in s.edge_types for c in e.vector)
    vectors = {e.id: tuple(int(as_rat(c) * d) for c in e.vector) for e in s.edge_types}
    return s.with_vectors(vectors, "integral"), RescaleRecord(d)


def _triangle_inradius(poly) -> Decimal:
    with localcontext() as ctx:
        ctx.prec = 60
        area2 = abs(geo.cross(poly[0], poly[1], poly[2]))
        perim = sum(
            (Decimal(int(geo.dot(geo.sub(poly[(i + 1) % 3], poly[i]), geo.sub(poly[(i + 1) % 3], poly[i])))).sqrt()
             for i in range(3)),
            Decimal(0),
        )
        return Decimal(int(area2)) / perim


def _is_convex(poly) -> bool:
    n = len(poly)
    return all(geo.cross(poly[i], poly[(i + 1) % n], poly[(i + 2) % n]) >= 0 for i in range(n))


def _chebyshev_radius(poly) -> float:
    n = len(poly)
    a_ub, b_ub = [], []
    for i in range(n):
        (x0, y0), (x1, y1) = map(lambda p: (float(p[0]), float(p[1])), (poly[i], poly[(i + 1) % n]))
        nx, ny = y1 - y0, x0 - x1  # outward normal of a CCW edge
        norm = math.hypot(nx, ny)
        a_ub.append([nx / norm, ny / norm, 1.0])
        b_ub.append((nx * x0 + ny * y0) / norm)
    res = linprog([0, 0, -1], A_ub=np.array(a_ub), b_ub=np.array(b_ub), bounds=[(None, None)] * 3)
    return float(res.x[2])


def _grid_radius(poly, step=Fraction(1, 4)) -> float:
    x0, y0, x1, y1 = geo.bbox(poly)
    n = len(poly)
    best = 0.0
    xi = x0
    while xi <= x1:
        yi = y0
        while yi <= y1:
            if geo.locate((xi, yi), poly) > 0:
                d = min(_point_segment_distance((xi, yi), poly[k], poly[(k + 1) % n]) for k in range(n))
                best = max(best, d)
            yi += step
        xi += step
    return best


def _point_segment_distance(p, a, b) -> float:
    d = geo.sub(b, a)
    t = geo.dot(geo.sub(p, a), d) / geo.dot(d, d)
    t = min(max(t, 0), 1)
    q = (a[0] + t * d[0], a[1] + t * d[1])
    return math.hypot(float(p[0] - q[0]), float(p[1] - q[1]))


def inradius(poly) -> tuple[float | Decimal, float]:
    """Largest inscribed disk radius (or a lower bound) and the comparison margin.

    Triangles use area over semiperimeter at 60 digits; convex polygons the
    Chebyshev centre LP; other polygons a quarter-step grid search.
    """
    if len(poly) == 3:
        return _triangle_inradius(poly), Decimal("1e-40")
    if _is_convex(poly):
        return _chebyshev_radius(poly), 1e-9
    return _grid_radius(poly), 0.0


def _min_multiplier(r, margin) -> int:
    if isinstance(r, Decimal):
        with localcontext() as ctx:
            ctx.prec = 60
            half = Decimal(2).sqrt() / 2
            m = max(1, int(half / r))
            while not m * r - half > margin:
                m += 1
            return m
    if r <= 0:
        raise ValidationError("prototile has no interior")
    m = max(1, int(HALF_DIAGONAL / r))
    while not m * r - HALF_DIAGONAL > margin:
        m += 1
    return m


def prescale_for_inradius(s: TileSystem) -> tuple[TileSystem, int]:
    """Smallest integer multiplier making every inradius exceed sqrt(2)/2."""
    if s.stage != "integral":
        raise ValueError("prescale_for_inradius needs an integral system")
    m = 1
    for p in s.prototiles:
        m = max(m, _min_multiplier(*inradius(s.vertices(p.id))))
    if m == 1:
        return s, 1
    return s.scaled(m), m


def torus_project(p: Patch, s: TileSystem) -> TorusPoint:
    """Common residue mod Z^2 of (vertex - marked origin) over the patch."""
    if s.stage != "integral":
        raise ValueError("torus projection is defined for integral systems")
    origin = p.origin
    residue = None
    for v in patch_vertices(p, s):
        r = ((v[0] - origin[0]) % 1, (v[1] - origin[1]) % 1)
        if residue is None:
            residue = r
        elif r != residue:
            raise ValidationError(
                f"vertex {tuple(map(str, v))} has residue {tuple(map(str, r))}, "
                f"expected {tuple(map(str, residue))}"
            )
    if residue is None:
        raise ValueError("empty patch has no projection")
    return TorusPoint(*residue)
