"""Exact rational arithmetic and the small linear-algebra kernel.

Rationals are :class:`fractions.Fraction`, which is always stored reduced
with a positive denominator.  Matrices are immutable row-major tuples of
fractions.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence

Rat = Fraction


class RealScalar(float):
    """A finite float that remembers the decimal literal it was parsed from.

    Arithmetic on a RealScalar yields plain floats; only the stored literal
    is special, so that real-stage files round-trip verbatim.
    """

    text: str

    def __new__(cls, value: float | str | "RealScalar") -> "RealScalar":
        if isinstance(value, RealScalar):
            return value
        if isinstance(value, str):
            text = value.strip()
            number = float(text)
        else:
            number = float(value)
            text = format(number, ".17g")
        if not math.isfinite(number):
            raise ValueError(f"real scalar must be finite, got {value!r}")
        obj = super().__new__(cls, number)
        obj.text = text
        return obj

    def __repr__(self) -> str:
        return f"RealScalar({self.text!r})"


def as_rat(x) -> Fraction:
    """Convert an int, Fraction, float or ``"p/q"`` string to an exact Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, float):
        if not math.isfinite(x):
            raise ValueError(f"cannot convert {x!r} to a rational")
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot convert {type(x).__name__} to a rational")


def _bracket(x: Fraction, qmax: int) -> tuple[Fraction, Fraction] | Fraction:
    """Farey neighbours of ``x`` of order ``qmax``, or ``x`` if it is one of them."""
    p0, q0, p1, q1 = 0, 1, 1, 0
    n, d = x.numerator, x.denominator
    while True:
        a = n // d
        q2 = q0 + a * q1
        if q2 > qmax:
            break
        p0, q0, p1, q1 = p1, q1, p0 + a * p1, q2
        n, d = d, n - a * d
        if d == 0:
            return Fraction(p1, q1)
    k = (qmax - q0) // q1
    return Fraction(p0 + k * p1, q0 + k * q1), Fraction(p1, q1)


def best_rational_approx(x: float | Fraction, qmax: int) -> Fraction:
    """Closest rational p/q to ``x`` with ``1 <= q <= qmax``.

    The continued-fraction descent stops at the two Farey neighbours of
    ``x``; one of them is optimal.  Ties go to the smaller denominator and
    then the smaller numerator.

    >>> best_rational_approx(0.5, 10)
    Fraction(1, 2)
    >>> best_rational_approx(3.14159, 7)
    Fraction(22, 7)
    """
    if qmax < 1:
        raise ValueError("qmax must be at least 1")
    target = as_rat(x)
    found = _bracket(target, qmax)
    if isinstance(found, Fraction):
        return found
    return min(found, key=lambda r: (abs(r - target), r.denominator, r.numerator))


@dataclass(frozen=True)
class RatMatrix:
    rows: int
    cols: int
    entries: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entries length must equal rows * cols")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "RatMatrix":
        rows = [list(r) for r in rows]
        if not rows:
            raise ValueError("matrix must have at least one row")
        ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        entries = tuple(as_rat(v) for r in rows for v in r)
        return cls(len(rows), ncols, entries)

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def to_rows(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def apply(self, v: Sequence) -> tuple[Fraction, ...]:
        """Matrix-vector product, exact."""
        if len(v) != self.cols:
            raise ValueError("dimension mismatch")
        vec = [as_rat(x) for x in v]
        return tuple(
            sum((a * b for a, b in zip(self.row(i), vec) if a), Fraction(0))
            for i in range(self.rows)
        )


def rref(m: RatMatrix) -> tuple[RatMatrix, list[int]]:
    """Reduced row echelon form and the ascending list of pivot columns."""
    a = m.to_rows()
    nrows, ncols = m.rows, m.cols
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        for i in range(r, nrows):
            if a[i][c] != 0:
                break
        else:
            continue
        a[r], a[i] = a[i], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(nrows):
            f = a[i][c]
            if i != r and f != 0:
                pr = a[r]
                a[i] = [x - f * y for x, y in zip(a[i], pr)]
        pivots.append(c)
        r += 1
    return RatMatrix.from_rows(a), pivots


def nullspace_basis(m: RatMatrix) -> list[tuple[Fraction, ...]]:
    """Basis of the kernel of ``m``: one vector per free column.

    The vector for free column ``f`` has a 1 in position ``f``, zeros in the
    other free positions, and the back-substituted pivot values.
    """
    reduced, pivots = rref(m)
    free = [c for c in range(m.cols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * m.cols
        v[f] = Fraction(1)
        for r, p in enumerate(pivots):
            v[p] = -reduced[r, f]
        basis.append(tuple(v))
    return basis


def rank(m: RatMatrix) -> int:
    return len(rref(m)[1])


def lcm_of_denominators(values: Iterable) -> int:
    d = 1
    for v in values:
        d = math.lcm(d, as_rat(v).denominator)
    return d
