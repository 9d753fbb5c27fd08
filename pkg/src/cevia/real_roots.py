"""Exact real-root isolation for univariate rational polynomials.

Polynomial arithmetic (remainders, derivatives, square-free parts) is done by
`sympy.Poly` over QQ; sign counting and bisection are exact in `Fraction`.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import NamedTuple, Sequence

import sympy

from .errors import NotCertified, ZeroPolynomial

logger = logging.getLogger("cevia")

X = sympy.Symbol("x")


def to_sympy(q: Fraction | int) -> sympy.Rational:
    q = Fraction(q)
    return sympy.Rational(q.numerator, q.denominator)


def from_sympy(r) -> Fraction:
    r = sympy.Rational(r)
    return Fraction(int(r.p), int(r.q))


@dataclass(frozen=True)
class RatPolynomial:
    """A univariate polynomial with exact rational coefficients."""

    poly: sympy.Poly

    @classmethod
    def from_coeffs(cls, coeffs: Sequence[Fraction | int]) -> RatPolynomial:
        """Build from coefficients in ascending order: c0 + c1*x + ..."""
        expr = sum(to_sympy(c) * X**i for i, c in enumerate(coeffs))
        return cls(sympy.Poly(expr, X, domain=sympy.QQ))

    @classmethod
    def from_expr(cls, expr, var: sympy.Symbol = X) -> RatPolynomial:
        return cls(sympy.Poly(sympy.expand(expr).subs(var, X), X, domain=sympy.QQ))

    @property
    def is_zero(self) -> bool:
        return self.poly.is_zero

    @property
    def degree(self) -> int:
        """Index of the last nonzero coefficient; -1 for the zero polynomial."""
        return -1 if self.is_zero else int(self.poly.degree())

    @cached_property
    def coeffs(self) -> tuple[Fraction, ...]:
        """Ascending coefficients as Fractions."""
        if self.is_zero:
            return ()
        return tuple(from_sympy(c) for c in reversed(self.poly.all_coeffs()))

    def __call__(self, x: Fraction | int) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> RatPolynomial:
        return RatPolynomial(self.poly.diff(X))

    def rem(self, other: RatPolynomial) -> RatPolynomial:
        return RatPolynomial(self.poly.rem(other.poly))

    def square_free(self) -> RatPolynomial:
        """p / gcd(p, p'): same real roots, all simple."""
        return RatPolynomial(self.poly.sqf_part())

    def __neg__(self) -> RatPolynomial:
        return RatPolynomial(-self.poly)

    def __mul__(self, other: RatPolynomial) -> RatPolynomial:
        return RatPolynomial(self.poly * other.poly)

    def __str__(self) -> str:
        return str(self.poly.as_expr())


class IsolatingInterval(NamedTuple):
    """Rational interval [lo, hi] holding exactly one real root.

    `exact` is set when bisection landed exactly on a rational root.
    """

    lo: Fraction
    hi: Fraction
    exact: Fraction | None = None

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        if self.exact is not None:
            return self.exact
        return (self.lo + self.hi) / 2

    def contains(self, value: float | Fraction) -> bool:
        return self.lo <= value <= self.hi


def sturm_sequence(p: RatPolynomial) -> list[RatPolynomial]:
    """Sturm chain p, p', -rem(p, p'), ... until the remainder vanishes."""
    if p.is_zero:
        raise ZeroPolynomial("The zero polynomial has no Sturm sequence")
    seq = [p, p.derivative()]
    while not seq[-1].is_zero and seq[-1].degree > 0:
        remainder = seq[-2].rem(seq[-1])
        if remainder.is_zero:
            break
        seq.append(-remainder)
    if seq[-1].is_zero:
        # constant p
        seq.pop()
    return seq


def sign_variations(seq: Sequence[RatPolynomial], x: Fraction) -> int:
    """Number of sign changes of the chain evaluated at x, zeros skipped."""
    signs = [v > 0 for v in (q(x) for q in seq) if v != 0]
    return sum(s != t for s, t in zip(signs, signs[1:]))


def _sign_at_infinity(q: RatPolynomial, positive: bool) -> bool:
    lead_positive = q.coeffs[-1] > 0
    if positive or q.degree % 2 == 0:
        return lead_positive
    return not lead_positive


def count_real_roots(p: RatPolynomial) -> int:
    """Number of distinct real roots, from the chain's signs at +-infinity."""
    seq = sturm_sequence(p.square_free())
    at_minus = [_sign_at_infinity(q, positive=False) for q in seq]
    at_plus = [_sign_at_infinity(q, positive=True) for q in seq]

    def changes(signs):
        return sum(s != t for s, t in zip(signs, signs[1:]))

    return changes(at_minus) - changes(at_plus)


def cauchy_bound(p: RatPolynomial) -> Fraction:
    """1 + max |c_i / c_n|: every real root lies strictly inside +-bound."""
    *rest, lead = p.coeffs
    if not rest:
        return Fraction(1)
    return 1 + max(abs(c / lead) for c in rest)


def _non_root_split(p: RatPolynomial, lo: Fraction, hi: Fraction) -> Fraction:
    """A point strictly between lo and hi where p does not vanish."""
    width = hi - lo
    for den in range(2, 2 + 2 * max(p.degree, 1) + 2):
        for num in (den // 2, den // 2 + 1, 1, den - 1):
            if not 0 < num < den:
                continue
            m = lo + width * Fraction(num, den)
            if p(m) != 0:
                return m
    raise RuntimeError(f"No non-root found in ({lo}, {hi})")


def isolate_roots(p: RatPolynomial) -> list[IsolatingInterval]:
    """Disjoint isolating intervals covering every distinct real root of p."""
    if p.is_zero:
        raise ZeroPolynomial("Cannot isolate the roots of the zero polynomial")
    sqf = p.square_free()
    if sqf.degree < 1:
        return []
    seq = sturm_sequence(sqf)
    bound = cauchy_bound(sqf)

    out: list[IsolatingInterval] = []
    # Sturm counts roots in (lo, hi]; endpoints are kept off the roots
    stack = [(-bound, bound)]
    while stack:
        lo, hi = stack.pop()
        n = sign_variations(seq, lo) - sign_variations(seq, hi)
        if n == 0:
            continue
        if n == 1:
            out.append(IsolatingInterval(lo, hi))
            continue
        mid = (lo + hi) / 2
        if sqf(mid) == 0:
            mid = _non_root_split(sqf, lo, hi)
        stack.extend([(lo, mid), (mid, hi)])
    out.sort()
    logger.debug(f"Isolated {len(out)} real roots of degree-{p.degree} polynomial")
    return out


def refine(
    p: RatPolynomial, interval: IsolatingInterval, width: Fraction
) -> IsolatingInterval:
    """Bisect a certified interval until it is no wider than `width`.

    Parameters
    ----------
    p : RatPolynomial
        Polynomial whose root is being refined. Its square-free part is used.
    interval : IsolatingInterval
        Interval with a sign change of p at its endpoints.
    width : Fraction
        Target width.

    Returns
    -------
    IsolatingInterval
        Sub-interval holding the same root. `exact` is set when a bisection
        point is the root itself.

    Raises
    ------
    NotCertified
        If the endpoints do not bracket a sign change.

    """
    sqf = p.square_free()
    lo, hi = interval.lo, interval.hi
    if interval.exact is not None:
        return interval
    f_lo, f_hi = sqf(lo), sqf(hi)
    if f_lo == 0 or f_hi == 0 or (f_lo > 0) == (f_hi > 0):
        raise NotCertified(f"[{lo}, {hi}] does not bracket a sign change")
    while hi - lo > width:
        mid = (lo + hi) / 2
        f_mid = sqf(mid)
        if f_mid == 0:
            half = min(width, hi - lo) / 4
            return IsolatingInterval(mid - half, mid + half, exact=mid)
        if (f_mid > 0) == (f_lo > 0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    return IsolatingInterval(lo, hi)


def real_roots(p: RatPolynomial, width: Fraction) -> list[IsolatingInterval]:
    """Isolate, then refine every root to the requested width."""
    return [refine(p, iv, width) for iv in isolate_roots(p)]
