"""Cevian constructions attached to a driving point P = (x, y, z).

Conjugates, complements and traces of P, the affine maps T_P, T_P', S,
lambda and M, their fixed points, the points V and O, and the signed ratios
relating them. Everything is exact.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

import click
import numpy as np

from .errors import (
    CeviaError,
    DegenerateContext,
    OnSideline,
    VertexInput,
    ZUndefined,
)
from .exact_geom import (
    A,
    B,
    C,
    G,
    K,
    K_INV,
    BaryPoint,
    ProjMap,
    Triple,
    apply,
    cross_ratio,
    line_through,
    meet,
    signed_ratio,
)
from .utils import EXIT_DEGENERATE, RATIONAL, dump_json, random_rational

logger = logging.getLogger("cevia")

# Degeneracy flags
ON_SIDELINE = "on_sideline"
ON_ANTICOMPLEMENTARY_SIDE = "on_anticomplementary_side"
INFINITE = "infinite"
ON_STEINER_CIRCUMELLIPSE = "on_steiner_circumellipse"
ON_MEDIAN = "on_median"
Z_UNDEFINED = "z_undefined"
Z_INFINITE = "z_infinite"
V_INFINITE = "v_infinite"
S_INFINITE = "s_infinite"

# Flags that make a context unusable at all
CONTEXT_BLOCKING = frozenset({ON_SIDELINE, ON_ANTICOMPLEMENTARY_SIDE})
# Flags that prevent the ratio report
REPORT_BLOCKING = frozenset(
    {INFINITE, ON_STEINER_CIRCUMELLIPSE, Z_UNDEFINED, Z_INFINITE, V_INFINITE}
)


def F_value(a: Fraction | int, x, y, z) -> Fraction:
    """F(a) = x^2(y+z) + y^2(x+z) + z^2(x+y) + (a+3)xyz."""
    return Fraction(
        x * x * (y + z) + y * y * (x + z) + z * z * (x + y) + (a + 3) * x * y * z
    )


def isotomic(p: BaryPoint) -> BaryPoint:
    """Isotomic conjugate (yz, xz, xy)."""
    x, y, z = p
    if x * y * z == 0:
        raise OnSideline(f"{p} lies on a side of ABC")
    return BaryPoint((y * z, x * z, x * y))


def complement(p: BaryPoint) -> BaryPoint:
    return apply(K, p)


def anticomplement(p: BaryPoint) -> BaryPoint:
    return apply(K_INV, p)


def isotomcomplement(p: BaryPoint) -> BaryPoint:
    """Q = K(iota(P)) = (x(y+z), y(x+z), z(x+y))."""
    x, y, z = p
    if x * y * z == 0:
        raise OnSideline(f"{p} lies on a side of ABC")
    return BaryPoint((x * (y + z), y * (x + z), z * (x + y)))


class Traces(NamedTuple):
    """Three points on the sides BC, CA, AB."""

    d: BaryPoint
    e: BaryPoint
    f: BaryPoint


def _check_not_vertex(p: BaryPoint):
    if p in (A, B, C):
        raise VertexInput(f"{p} is a vertex of ABC")


def traces(p: BaryPoint) -> Traces:
    """Traces D=(0,y,z), E=(x,0,z), F=(x,y,0) of P on the sides."""
    _check_not_vertex(p)
    x, y, z = p
    return Traces(BaryPoint((0, y, z)), BaryPoint((x, 0, z)), BaryPoint((x, y, 0)))


def cotraces(p: BaryPoint) -> Traces:
    """Traces D3=(0,z,y), E3=(z,0,x), F3=(y,x,0) of the isotomic conjugate."""
    _check_not_vertex(p)
    x, y, z = p
    return Traces(BaryPoint((0, z, y)), BaryPoint((z, 0, x)), BaryPoint((y, x, 0)))


def degeneracy_flags(p: BaryPoint) -> tuple[str, ...]:
    """Every hypothesis P fails, in a fixed order."""
    x, y, z = p
    flags = []
    if x * y * z == 0:
        flags.append(ON_SIDELINE)
    if (x + y) * (x + z) * (y + z) == 0:
        flags.append(ON_ANTICOMPLEMENTARY_SIDE)
    if x + y + z == 0:
        flags.append(INFINITE)
    if x * y + y * z + z * x == 0:
        flags.append(ON_STEINER_CIRCUMELLIPSE)
    if x == y or y == z or z == x:
        flags.append(ON_MEDIAN)
    if x == y == z:
        flags.append(Z_UNDEFINED)
    elif F_value(-9, x, y, z) == 0:
        flags.append(Z_INFINITE)
    if F_value(0, x, y, z) == 0:
        flags.append(V_INFINITE)
    if F_value(3, x, y, z) == 0:
        flags.append(S_INFINITE)
    return tuple(flags)


@dataclass(frozen=True)
class CevianContext:
    """P together with every derived point, computed once at construction.

    Points that do not exist for this P (Z when P is the centroid) are None.
    """

    p: BaryPoint
    flags: tuple[str, ...]
    p_prime: BaryPoint
    q: BaryPoint
    q_prime: BaryPoint
    traces: Traces
    cotraces: Traces
    x_point: BaryPoint
    z_point: BaryPoint | None
    s_point: BaryPoint
    v_point: BaryPoint
    o_point: BaryPoint

    @classmethod
    def from_point(cls, p: BaryPoint) -> CevianContext:
        flags = degeneracy_flags(p)
        blocking = tuple(f for f in flags if f in CONTEXT_BLOCKING)
        if blocking:
            raise DegenerateContext(
                f"{p} lies on a side of ABC or of its anticomplementary triangle",
                flags=flags,
            )
        raw = _RawPoints(*p)
        z_raw = raw.Z
        return cls(
            p=p,
            flags=flags,
            p_prime=isotomic(p),
            q=isotomcomplement(p),
            q_prime=BaryPoint(raw.Qprime),
            traces=traces(p),
            cotraces=cotraces(p),
            x_point=BaryPoint(raw.X),
            z_point=BaryPoint(z_raw) if any(z_raw) else None,
            s_point=BaryPoint(raw.S),
            v_point=BaryPoint(raw.V),
            o_point=BaryPoint(raw.O),
        )

    @classmethod
    def of(cls, x, y, z) -> CevianContext:
        return cls.from_point(BaryPoint((x, y, z)))

    @property
    def raw(self) -> _RawPoints:
        """Closed-form coordinate triples before normalization."""
        return _RawPoints(*self.p)

    def has(self, flag: str) -> bool:
        return flag in self.flags

    def F(self, a: Fraction | int) -> Fraction:
        return F_value(a, *self.p)


class _RawPoints:
    """Unnormalized closed forms in the coordinates of P.

    The exact identities between these triples hold only for this particular
    scaling, so they are kept apart from the canonical BaryPoints.
    """

    def __init__(self, x: int, y: int, z: int):
        self.x, self.y, self.z = x, y, z
        # Coordinates of Q, and the factors appearing in O
        self.xp, self.yp, self.zp = x * (y + z), y * (x + z), z * (x + y)
        sigma2 = x * y + x * z + y * z
        self.xpp, self.ypp, self.zpp = sigma2 - x * x, sigma2 - y * y, sigma2 - z * z
        self.xyz = x * y * z
        self.sigma1 = x + y + z
        self.sigma2 = sigma2

    @property
    def P(self) -> Triple:
        return (self.x, self.y, self.z)

    @property
    def Pprime(self) -> Triple:
        x, y, z = self.P
        return (y * z, x * z, x * y)

    @property
    def Q(self) -> Triple:
        return (self.xp, self.yp, self.zp)

    @property
    def Qprime(self) -> Triple:
        x, y, z = self.P
        return (y + z, x + z, x + y)

    @property
    def X(self) -> Triple:
        return (self.x * self.xp, self.y * self.yp, self.z * self.zp)

    @property
    def Z(self) -> Triple:
        x, y, z = self.P
        return (x * (y - z) ** 2, y * (z - x) ** 2, z * (x - y) ** 2)

    @property
    def S(self) -> Triple:
        x, y, z = self.P
        return (x * (y + z) ** 2, y * (x + z) ** 2, z * (x + y) ** 2)

    @property
    def V(self) -> Triple:
        x, y, z = self.P
        return (
            x * (y * y + y * z + z * z),
            y * (x * x + x * z + z * z),
            z * (x * x + x * y + y * y),
        )

    @property
    def O(self) -> Triple:  # noqa: E743
        x, y, z = self.P
        return (
            x * (y + z) ** 2 * self.xpp,
            y * (x + z) ** 2 * self.ypp,
            z * (x + y) ** 2 * self.zpp,
        )


def build_T_P(ctx: CevianContext) -> ProjMap:
    """Affine map taking ABC to the cevian triangle DEF of P."""
    r = ctx.raw
    x, y, z = r.P
    return ProjMap(
        (
            (0, r.xp * (x + y), r.xp * (x + z)),
            (r.yp * (x + y), 0, r.yp * (y + z)),
            (r.zp * (x + z), r.zp * (y + z), 0),
        )
    )


def build_T_Pprime(ctx: CevianContext) -> ProjMap:
    """Affine map taking ABC to the cevian triangle D3E3F3 of P'."""
    r = ctx.raw
    x, y, z = r.P
    return ProjMap(
        (
            (0, r.zp * (y + z), r.yp * (y + z)),
            (r.zp * (x + z), 0, r.xp * (x + z)),
            (r.yp * (x + y), r.xp * (x + y), 0),
        )
    )


def build_S(ctx: CevianContext) -> ProjMap:
    """S = T_P o T_P', a homothety or translation with center X."""
    r = ctx.raw
    x, y, z = r.P
    xp, yp, zp = r.Q
    return ProjMap(
        (
            (x * (yp + zp), x * xp, x * xp),
            (y * yp, y * (xp + zp), y * yp),
            (z * zp, z * zp, z * (xp + yp)),
        )
    )


def build_lambda(ctx: CevianContext) -> ProjMap:
    """lambda = T_P' o T_P^-1, with fixed point Z."""
    x, y, z = ctx.p
    return ProjMap(
        (
            (y * z * (y + z), x * z * (y - z), x * y * (z - y)),
            (y * z * (x - z), x * z * (x + z), x * y * (z - x)),
            (y * z * (x - y), x * z * (y - x), x * y * (x + y)),
        )
    )


def build_M(ctx: CevianContext) -> ProjMap:
    """M = T_P o K^-1 o T_P', a homothety or translation with center S."""
    x, y, z = ctx.p
    return ProjMap(
        (
            (x * (y - z) ** 2, x * (y + z) ** 2, x * (y + z) ** 2),
            (y * (x + z) ** 2, y * (x - z) ** 2, y * (x + z) ** 2),
            (z * (x + y) ** 2, z * (x + y) ** 2, z * (x - y) ** 2),
        )
    )


class FixedPoints(NamedTuple):
    x: BaryPoint
    z: BaryPoint
    s: BaryPoint


def fixed_points(ctx: CevianContext) -> FixedPoints:
    """Fixed points X of S, Z of lambda and S of M."""
    if ctx.z_point is None:
        raise ZUndefined(f"Z vanishes identically for P = {ctx.p}")
    return FixedPoints(ctx.x_point, ctx.z_point, ctx.s_point)


def point_V(ctx: CevianContext) -> BaryPoint:
    """V = (x(y^2+yz+z^2), y(x^2+xz+z^2), z(x^2+xy+y^2))."""
    if ctx.has(INFINITE) or ctx.has(ON_STEINER_CIRCUMELLIPSE):
        raise DegenerateContext("V needs P and P' ordinary", flags=ctx.flags)
    return ctx.v_point


def point_V_by_lines(ctx: CevianContext) -> BaryPoint:
    """V as the intersection PQ . P'Q' (P not on a median)."""
    if ctx.has(ON_MEDIAN):
        raise DegenerateContext("PQ and P'Q' coincide on a median", flags=ctx.flags)
    return meet(line_through(ctx.p, ctx.q), line_through(ctx.p_prime, ctx.q_prime))


def v_relations(ctx: CevianContext) -> tuple[Triple, Triple]:
    """The two expressions of V as combinations of P, Q and of P', Q'.

    Returns -(xy+xz+yz)P + (x+y+z)Q and -(x+y+z)P' + (xy+xz+yz)Q', each of
    which equals the raw V triple.
    """
    r = ctx.raw
    from_pq = tuple(-r.sigma2 * p + r.sigma1 * q for p, q in zip(r.P, r.Q))
    from_pq_prime = tuple(
        -r.sigma1 * p + r.sigma2 * q for p, q in zip(r.Pprime, r.Qprime)
    )
    return from_pq, from_pq_prime  # type: ignore[return-value]


def point_O(ctx: CevianContext) -> BaryPoint:
    """Generalized circumcenter, closed form."""
    return ctx.o_point


def point_O_by_maps(ctx: CevianContext) -> BaryPoint:
    """O = T_P'^-1 o K (Q), using the exact inverse."""
    return apply(build_T_Pprime(ctx).inverse() @ K, ctx.q)


def map_kind(a: Fraction) -> str:
    """How M acts for a given a: translation (a=3), half-turn (a=-5), homothety."""
    if a == 3:
        return "translation"
    if a == -5:
        return "half-turn"
    return "homothety"


class RatioReport(NamedTuple):
    a: Fraction
    gz_zv: Fraction
    gs_sv: Fraction | None
    sq_so: Fraction | None
    k: Fraction | None
    cross_gvsz: Fraction | None
    map_kind: str
    flags: tuple[str, ...]


def closed_form_ratios(ctx: CevianContext) -> RatioReport:
    """Ratios from the polynomial closed forms in x, y, z."""
    r = ctx.raw
    F0 = r.sigma1 * r.sigma2
    Fm1 = ctx.F(-1)
    a = Fraction(-F0, r.xyz)
    gz_zv = a / 9
    if ctx.has(S_INFINITE):
        return RatioReport(a, gz_zv, None, None, None, None, map_kind(a), ctx.flags)
    return RatioReport(
        a=a,
        gz_zv=gz_zv,
        gs_sv=Fraction(F0, 3 * r.xyz),
        sq_so=Fraction(-4 * r.xyz) / Fm1,
        k=4 / (a + 1),
        cross_gvsz=Fraction(-3),
        map_kind=map_kind(a),
        flags=ctx.flags,
    )


def constructed_ratios(ctx: CevianContext) -> RatioReport:
    """The same ratios, measured on the constructed points."""
    gz_zv = signed_ratio(G, ctx.z_point, ctx.v_point)
    a = 9 * gz_zv
    if ctx.has(S_INFINITE):
        return RatioReport(a, gz_zv, None, None, None, None, map_kind(a), ctx.flags)
    # SQ/SO = -(QS/SO)
    sq_so = -signed_ratio(ctx.q, ctx.s_point, ctx.o_point)
    return RatioReport(
        a=a,
        gz_zv=gz_zv,
        gs_sv=signed_ratio(G, ctx.s_point, ctx.v_point),
        sq_so=sq_so,
        k=sq_so,
        cross_gvsz=cross_ratio(G, ctx.v_point, ctx.s_point, ctx.z_point),
        map_kind=map_kind(a),
        flags=ctx.flags,
    )


def ratio_report(ctx: CevianContext) -> RatioReport:
    """Closed-form ratios, checked against the constructed points.

    Parameters
    ----------
    ctx : CevianContext
        Context of the driving point P.

    Returns
    -------
    RatioReport
        a, GZ/ZV, GS/SV, SQ/SO, k and the cross ratio (GV,SZ). When S is at
        infinity the ratios through S are None.

    Raises
    ------
    DegenerateContext
        If P, P', Z or V is not ordinary.
    RuntimeError
        If the closed forms and the constructed points disagree.

    """
    blocking = [f for f in ctx.flags if f in REPORT_BLOCKING]
    if blocking:
        raise DegenerateContext(
            f"Ratios need P, P', Z, V ordinary; failed: {blocking}", flags=ctx.flags
        )
    closed = closed_form_ratios(ctx)
    constructed = constructed_ratios(ctx)
    if closed != constructed:
        raise RuntimeError(
            f"Ratio routes disagree for P = {ctx.p}: {closed} != {constructed}"
        )
    return closed


def _fmt(q: Fraction | None) -> str | None:
    return None if q is None else str(q)


def construction_report(ctx: CevianContext) -> dict:
    """JSON-ready record of every named point, the flags and the ratios."""
    report = {
        "P": ctx.p.to_json(),
        "Pprime": ctx.p_prime.to_json(),
        "Q": ctx.q.to_json(),
        "Qprime": ctx.q_prime.to_json(),
    }
    for name, pt in zip(("D", "E", "F"), ctx.traces):
        report[name] = pt.to_json()
    for name, pt in zip(("D3", "E3", "F3"), ctx.cotraces):
        report[name] = pt.to_json()
    report.update(
        {
            "X": ctx.x_point.to_json(),
            "Z": ctx.z_point.to_json() if ctx.z_point is not None else None,
            "S": ctx.s_point.to_json(),
            "V": ctx.v_point.to_json(),
            "O": ctx.o_point.to_json(),
        }
    )
    ratios = ratio_report(ctx)
    report.update(
        {
            "a": _fmt(ratios.a),
            "gz_zv": _fmt(ratios.gz_zv),
            "gs_sv": _fmt(ratios.gs_sv),
            "sq_so": _fmt(ratios.sq_so),
            "k": _fmt(ratios.k),
            "cross_gvsz": _fmt(ratios.cross_gvsz),
            "map_kind": ratios.map_kind,
            "flags": list(ctx.flags),
        }
    )
    return report


def random_context(rng: np.random.Generator, max_tries: int = 10_000) -> CevianContext:
    """A random P with rational coordinates and every degeneracy flag clear."""
    for _ in range(max_tries):
        p = BaryPoint(tuple(random_rational(rng, nonzero=True) for _ in range(3)))
        if degeneracy_flags(p):
            continue
        return CevianContext.from_point(p)
    raise RuntimeError(f"No non-degenerate point found in {max_tries} draws")


@click.command(context_settings={"ignore_unknown_options": True})
@click.argument("x", type=RATIONAL)
@click.argument("y", type=RATIONAL)
@click.argument("z", type=RATIONAL)
@click.pass_context
def construct(ctx: click.Context, x: Fraction, y: Fraction, z: Fraction):
    """Report every construction for the point P = (X, Y, Z).

    Exits with status 2 and the failed hypotheses in "flags" when P is
    degenerate.
    """
    try:
        p = BaryPoint((x, y, z))
    except CeviaError as e:
        raise click.BadParameter(str(e)) from e
    try:
        cevian = CevianContext.from_point(p)
        report = construction_report(cevian)
    except DegenerateContext as e:
        logger.warning(f"Degenerate point {p}: {', '.join(e.flags)}")
        click.echo(dump_json({"P": p.to_json(), "flags": list(e.flags)}))
        ctx.exit(EXIT_DEGENERATE)
    click.echo(dump_json(report))
