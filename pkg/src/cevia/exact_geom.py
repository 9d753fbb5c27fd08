"""Exact projective substrate in homogeneous barycentric coordinates.

All scalars are `fractions.Fraction`. Points and lines are stored in a
canonical integer form, so projective equality is plain tuple equality.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Sequence

import numpy as np

from .errors import (
    CoincidentLines,
    CoincidentPoints,
    DegenerateConfiguration,
    InfinitePoint,
    MapsToZero,
    NotCollinear,
    NotEigenvector,
    SingularMap,
    UndefinedRatio,
    ZeroVector,
)

Rational = Fraction
Triple = tuple[Fraction, Fraction, Fraction]


def canonical_integers(v: Sequence[Fraction | int]) -> tuple[int, int, int]:
    """Scale a nonzero triple to coprime integers, first nonzero entry positive.

    >>> canonical_integers((2, 4, 6))
    (1, 2, 3)
    >>> canonical_integers((Fraction(-1, 2), 1, Fraction(-3, 2)))
    (1, -2, 3)
    """
    if len(v) != 3:
        raise ValueError(f"Expected a triple, got {len(v)} entries")
    fracs = [Fraction(c) for c in v]
    if not any(fracs):
        raise ZeroVector(f"All coordinates are zero: {tuple(v)}")
    den = math.lcm(*(f.denominator for f in fracs))
    ints = [int(f * den) for f in fracs]
    g = math.gcd(*ints)
    ints = [i // g for i in ints]
    lead = next(i for i in ints if i != 0)
    if lead < 0:
        ints = [-i for i in ints]
    return (ints[0], ints[1], ints[2])


@dataclass(frozen=True)
class _Homogeneous:
    coords: tuple[int, int, int]

    def __post_init__(self):
        object.__setattr__(self, "coords", canonical_integers(self.coords))

    def __iter__(self) -> Iterator[int]:
        return iter(self.coords)

    def __getitem__(self, i: int) -> int:
        return self.coords[i]

    def __str__(self) -> str:
        return "({}, {}, {})".format(*self.coords)

    def to_json(self) -> list[str]:
        return [str(c) for c in self.coords]


@dataclass(frozen=True)
class BaryPoint(_Homogeneous):
    """A point (x : y : z) in homogeneous barycentric coordinates."""

    @property
    def total(self) -> int:
        return sum(self.coords)

    @property
    def is_ordinary(self) -> bool:
        return self.total != 0

    @property
    def is_infinite(self) -> bool:
        return self.total == 0


@dataclass(frozen=True)
class BaryLine(_Homogeneous):
    """The line l*x + m*y + n*z = 0, stored by its coefficients (l, m, n)."""

    @property
    def coeffs(self) -> tuple[int, int, int]:
        return self.coords


def normalize(v: Sequence[Fraction | int]) -> BaryPoint:
    """Return the canonical BaryPoint for a raw coordinate triple."""
    return BaryPoint(tuple(v))


def cross(u: Sequence, v: Sequence) -> Triple:
    """Cross product of two homogeneous triples."""
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


def dot(u: Sequence, v: Sequence):
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]


def det3(u: Sequence, v: Sequence, w: Sequence):
    """Determinant of the matrix with rows u, v, w."""
    return dot(u, cross(v, w))


def incidence(p: BaryPoint, line: BaryLine) -> int:
    """l*x + m*y + n*z. Only its vanishing is meaningful."""
    return dot(p.coords, line.coords)


def line_through(p: BaryPoint, q: BaryPoint) -> BaryLine:
    """Line joining two distinct points."""
    if p == q:
        raise CoincidentPoints(f"Cannot join {p} to itself")
    return BaryLine(cross(p.coords, q.coords))


def meet(line1: BaryLine, line2: BaryLine) -> BaryPoint:
    """Intersection point of two distinct lines."""
    if line1 == line2:
        raise CoincidentLines(f"Lines coincide: {line1}")
    return BaryPoint(cross(line1.coords, line2.coords))


def are_collinear(a: BaryPoint, b: BaryPoint, c: BaryPoint) -> bool:
    return det3(a.coords, b.coords, c.coords) == 0


def combine(*terms: tuple[Fraction | int, Sequence]) -> Triple:
    """Linear combination sum(c_i * v_i) of raw triples, e.g. (a+b+c)X + 2xyz*Y."""
    out = [Fraction(0)] * 3
    for coeff, vec in terms:
        for i in range(3):
            out[i] += coeff * vec[i]
    return (out[0], out[1], out[2])


def _fraction_rows(rows) -> tuple[Triple, Triple, Triple]:
    out = tuple(tuple(Fraction(e) for e in row) for row in rows)
    return out  # type: ignore[return-value]


@dataclass(frozen=True)
class ProjMap:
    """A 3x3 matrix acting on homogeneous barycentric column vectors.

    Matrices are only meaningful up to a nonzero scalar; compare with
    `equivalent`, not `==`.
    """

    entries: tuple[Triple, Triple, Triple]
    degenerate: bool = field(default=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "entries", _fraction_rows(self.entries))
        if not self.degenerate and self.det == 0:
            raise SingularMap(f"Zero determinant: {self.entries}")

    @classmethod
    def from_array(cls, arr: np.ndarray, degenerate: bool = False) -> ProjMap:
        return cls(_fraction_rows(arr.tolist()), degenerate=degenerate)

    @property
    def array(self) -> np.ndarray:
        return np.array(self.entries, dtype=object)

    @property
    def columns(self) -> tuple[Triple, Triple, Triple]:
        return tuple(zip(*self.entries))  # type: ignore[return-value]

    @property
    def det(self) -> Fraction:
        return det3(*self.entries)

    def __matmul__(self, other: ProjMap) -> ProjMap:
        product = self.array @ other.array
        return ProjMap.from_array(
            product, degenerate=self.degenerate or other.degenerate
        )

    def adjugate(self) -> ProjMap:
        """Transpose of the cofactor matrix; equals det * inverse."""
        c0, c1, c2 = self.columns
        return ProjMap(
            (cross(c1, c2), cross(c2, c0), cross(c0, c1)), degenerate=True
        )

    def inverse(self) -> ProjMap:
        """Exact inverse via the adjugate."""
        det = self.det
        if det == 0:
            raise SingularMap(f"Cannot invert a singular map: {self.entries}")
        adj = self.adjugate().entries
        return ProjMap(tuple(tuple(e / det for e in row) for row in adj))

    def apply_raw(self, v: Sequence) -> Triple:
        """Matrix-vector product without normalization."""
        return tuple(dot(row, v) for row in self.entries)  # type: ignore[return-value]

    def equivalent(self, other: ProjMap) -> bool:
        """True when self = c * other for some nonzero c."""
        ratio = None
        for row_a, row_b in zip(self.entries, other.entries):
            for ea, eb in zip(row_a, row_b):
                if (ea == 0) != (eb == 0):
                    return False
                if eb == 0:
                    continue
                if ratio is None:
                    ratio = ea / eb
                elif ea != ratio * eb:
                    return False
        return ratio is not None


def apply(proj_map: ProjMap, p: BaryPoint) -> BaryPoint:
    """Image of a point under a map, normalized."""
    image = proj_map.apply_raw(p.coords)
    if not any(image):
        raise MapsToZero(f"{p} lies in the kernel of the map")
    return BaryPoint(image)


def eigenfactor(proj_map: ProjMap, v: Sequence) -> Fraction:
    """The scalar c with proj_map * v = c * v, computed exactly."""
    image = proj_map.apply_raw(v)
    i = next((k for k in range(3) if v[k] != 0), None)
    if i is None:
        raise ValueError("Zero vector has no eigenfactor")
    c = Fraction(image[i]) / Fraction(v[i])
    if any(image[k] != c * v[k] for k in range(3)):
        raise NotEigenvector(f"{tuple(v)} is not an eigenvector")
    return c


def to_absolute(p: BaryPoint) -> Triple:
    """Absolute barycentric coordinates (summing to 1).

    >>> to_absolute(BaryPoint((1, 2, 3)))
    (Fraction(1, 6), Fraction(1, 3), Fraction(1, 2))
    """
    total = p.total
    if total == 0:
        raise InfinitePoint(f"{p} is on the line at infinity")
    return tuple(Fraction(c, total) for c in p.coords)  # type: ignore[return-value]


def signed_ratio(a: BaryPoint, b: BaryPoint, c: BaryPoint) -> Fraction:
    """Signed ratio AB/BC of three collinear ordinary points.

    This is the t with B - A = t * (C - B) in absolute coordinates.
    """
    abs_a, abs_b, abs_c = to_absolute(a), to_absolute(b), to_absolute(c)
    if b == c:
        raise UndefinedRatio(f"Segment BC has zero length at {b}")
    if not are_collinear(a, b, c):
        raise NotCollinear(f"{a}, {b}, {c} are not collinear")
    i = next(k for k in range(3) if abs_c[k] != abs_b[k])
    return (abs_b[i] - abs_a[i]) / (abs_c[i] - abs_b[i])


def cross_ratio(a: BaryPoint, b: BaryPoint, c: BaryPoint, d: BaryPoint) -> Fraction:
    """Cross ratio (AB,CD) = (AC/CB) / (AD/DB) of four collinear points.

    Computed from 2x2 brackets on the common line, so infinite points are
    allowed and the value is invariant under every invertible ProjMap.

    >>> quad = [(1, 0, 0), (0, 1, 0), (1, 1, 0), (1, -1, 0)]
    >>> cross_ratio(*(BaryPoint(v) for v in quad))
    Fraction(-1, 1)
    """
    points = (a, b, c, d)
    if len(set(points)) < 4:
        raise DegenerateConfiguration(f"Points of a cross ratio coincide: {points}")
    line = cross(a.coords, b.coords)
    if dot(line, c.coords) != 0 or dot(line, d.coords) != 0:
        raise NotCollinear(f"{a}, {b}, {c}, {d} are not collinear")
    # A coordinate axis not lying on the line gives a nonzero bracket
    i = next(k for k in range(3) if line[k] != 0)

    def bracket(p: BaryPoint, q: BaryPoint) -> int:
        return cross(p.coords, q.coords)[i]

    num = bracket(a, c) * bracket(b, d)
    den = bracket(a, d) * bracket(b, c)
    return Fraction(num, den)


def midpoint(a: BaryPoint, b: BaryPoint) -> BaryPoint:
    """Midpoint of the segment AB of two ordinary points."""
    abs_a, abs_b = to_absolute(a), to_absolute(b)
    return BaryPoint(tuple(s + t for s, t in zip(abs_a, abs_b)))


# Reference triangle, centroid and the infinite points of its sides
A = BaryPoint((1, 0, 0))
B = BaryPoint((0, 1, 0))
C = BaryPoint((0, 0, 1))
G = BaryPoint((1, 1, 1))
A_INF = BaryPoint((0, 1, -1))
B_INF = BaryPoint((1, 0, -1))
C_INF = BaryPoint((1, -1, 0))

# Sides BC, CA, AB and the sides of the anticomplementary triangle
SIDE_LINES = (BaryLine((1, 0, 0)), BaryLine((0, 1, 0)), BaryLine((0, 0, 1)))
ANTICOMPLEMENTARY_LINES = (
    BaryLine((0, 1, 1)),
    BaryLine((1, 0, 1)),
    BaryLine((1, 1, 0)),
)
LINE_AT_INFINITY = BaryLine((1, 1, 1))

# Complement K and anticomplement K^-1 (K @ K_INV = 2I)
K = ProjMap(((0, 1, 1), (1, 0, 1), (1, 1, 0)))
K_INV = ProjMap(((-1, 1, 1), (1, -1, 1), (1, 1, -1)))
