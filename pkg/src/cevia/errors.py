"""Exception types raised by the geometry and curve engines."""

from __future__ import annotations

from typing import Any

import click


class CeviaError(ValueError):
    """Base class for all errors raised by `cevia`."""


# exact_geom
class ZeroVector(CeviaError):
    """All three homogeneous coordinates are zero."""


class CoincidentPoints(CeviaError):
    """Two points are projectively equal where distinct points are required."""


class CoincidentLines(CeviaError):
    """Two lines are projectively equal where distinct lines are required."""


class MapsToZero(CeviaError):
    """The point lies in the kernel of a degenerate map."""


class InfinitePoint(CeviaError):
    """An ordinary point was required but the coordinate sum is zero."""


class NotCollinear(CeviaError):
    """The points passed to a ratio computation are not collinear."""


class UndefinedRatio(CeviaError):
    """The denominator segment of a signed ratio has zero length."""


class DegenerateConfiguration(CeviaError):
    """Points of a cross ratio coincide."""


class NotEigenvector(CeviaError):
    """The vector is not mapped to a multiple of itself."""


# cevian_engine
class OnSideline(CeviaError):
    """The point lies on a side of the reference triangle (xyz = 0)."""


class VertexInput(CeviaError):
    """The point is a vertex of the reference triangle."""


class DegenerateContext(CeviaError):
    """The driving point fails the non-degeneracy hypotheses."""

    def __init__(self, message: str, flags: tuple[str, ...] = ()):
        super().__init__(message)
        self.flags = flags


class SingularMap(CeviaError):
    """A map with zero determinant had to be inverted."""


class ZUndefined(CeviaError):
    """The point Z has all coordinates zero (P lies on a median)."""


# curve_engine
class NotOnCurve(CeviaError):
    """The point does not satisfy F(a) = 0."""


class IndeterminateA(CeviaError):
    """The point lies on the reducible member E_0, so `a` carries no ratio."""


class NotElliptic(CeviaError):
    """The parameter is one of the singular values 0, -1, -9."""


class ToleranceExceeded(CeviaError):
    """A floating cross-check disagreed with the exact value."""

    def __init__(self, message: str, check: Any = None):
        super().__init__(message)
        self.check = check


class SingularAt(CeviaError):
    """The gradient of F vanishes at the point."""


class WrongCurve(CeviaError):
    """The operation is only defined for a specific member of the family."""


class ExceptionalPoint(CeviaError):
    """The birational map has a pole at the point."""


# real_roots
class ZeroPolynomial(CeviaError):
    """The zero polynomial has no isolated roots."""


class NotCertified(CeviaError):
    """The interval does not bracket exactly one simple root."""


# cli
class OutputError(click.ClickException):
    """An output file could not be written."""

    exit_code = 73
