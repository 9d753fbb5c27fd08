"""Randomized verification of the cevian identities and the curve family."""

from __future__ import annotations

import logging
import math
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from itertools import repeat
from typing import Callable, NamedTuple

import click
import numpy as np
import pandas as pd
from tqdm.auto import tqdm

from .cevian_engine import (
    CevianContext,
    anticomplement,
    build_lambda,
    build_M,
    build_S,
    build_T_P,
    build_T_Pprime,
    closed_form_ratios,
    complement,
    constructed_ratios,
    cotraces,
    isotomcomplement,
    isotomic,
    point_O_by_maps,
    point_V_by_lines,
    random_context,
    traces,
    v_relations,
)
from .curve_engine import (
    DEFAULT_TOLERANCE,
    SINGULAR_PARAMETERS,
    CurveFamilyMember,
    F_eval,
    a_of_point,
    disc_d,
    extremal_check,
    j_invariant,
    j_invert,
    legendre_check,
    legendre_substitution_holds,
    normal_form_multiplier,
    random_real_point,
    singularity_analysis,
    sympy_disc_d,
    torsion_group,
    torsion_pairing_minus3,
    weierstrass_roundtrip_error,
)
from .exact_geom import (
    A,
    B,
    C,
    G,
    K_INV,
    BaryPoint,
    apply,
    are_collinear,
    combine,
    det3,
    eigenfactor,
    midpoint,
)
from .utils import EXIT_VERIFY_FAILED, RunConfig, random_rational

logger = logging.getLogger("cevia")

# Every `CURVE_EVERY`-th sample also checks a random member of the family
CURVE_EVERY = 10


class CheckResult(NamedTuple):
    name: str
    passed: bool
    detail: str = ""


def _check(name: str, fn: Callable[[], bool], context: str) -> CheckResult:
    try:
        ok = bool(fn())
    except Exception as e:  # noqa: BLE001
        return CheckResult(name, False, f"{context}: {type(e).__name__}: {e}")
    return CheckResult(name, ok, "" if ok else context)


def random_ordinary_triple(rng: np.random.Generator) -> tuple[Fraction, ...]:
    while True:
        y = tuple(random_rational(rng) for _ in range(3))
        if sum(y) != 0:
            return y


def random_elliptic_parameter(rng: np.random.Generator) -> Fraction:
    while True:
        a = random_rational(rng)
        if a not in SINGULAR_PARAMETERS:
            return a


def cevian_checks(ctx: CevianContext, rng: np.random.Generator) -> list[CheckResult]:
    """Exact identities among the constructions of one driving point."""
    raw = ctx.raw
    xyz = raw.xyz
    Fm1 = ctx.F(-1)
    T_P, T_Pp = build_T_P(ctx), build_T_Pprime(ctx)
    S_map, lam, M = build_S(ctx), build_lambda(ctx), build_M(ctx)
    ys = [random_ordinary_triple(rng) for _ in range(3)]
    where = f"P = {ctx.p}"

    def m_route_k() -> Fraction:
        image = M.apply_raw(A.coords)
        return (image[0] - raw.S[0]) / sum(image)

    def ratios_agree() -> bool:
        closed, built = closed_form_ratios(ctx), constructed_ratios(ctx)
        return closed == built

    def k_routes() -> bool:
        r = closed_form_ratios(ctx)
        return r.k == r.sq_so == Fraction(-4 * xyz) / Fm1 == m_route_k()

    checks = {
        "isotomic is an involution": lambda: isotomic(isotomic(ctx.p)) == ctx.p,
        "complement inverts anticomplement": lambda: anticomplement(
            complement(ctx.p)
        )
        == ctx.p,
        "isotomcomplement is K after iota": lambda: isotomcomplement(ctx.p)
        == complement(isotomic(ctx.p)),
        "T_P maps ABC to DEF": lambda: tuple(apply(T_P, v) for v in (A, B, C))
        == tuple(traces(ctx.p)),
        "T_P' maps ABC to D3E3F3": lambda: tuple(apply(T_Pp, v) for v in (A, B, C))
        == tuple(cotraces(ctx.p)),
        "T_P fixes Q": lambda: apply(T_P, ctx.q) == ctx.q,
        "T_P' fixes Q'": lambda: apply(T_Pp, ctx.q_prime) == ctx.q_prime,
        "S is T_P T_P'": lambda: (T_P @ T_Pp).equivalent(S_map),
        "lambda is T_P' T_P^-1": lambda: (T_Pp @ T_P.inverse()).equivalent(lam),
        "M is T_P K^-1 T_P'": lambda: (T_P @ K_INV @ T_Pp).equivalent(M),
        "S fixes X": lambda: eigenfactor(S_map, raw.X) == Fm1,
        "lambda fixes Z": lambda: eigenfactor(lam, raw.Z) == 2 * xyz,
        "M fixes S": lambda: eigenfactor(M, raw.S) == Fm1,
        "S affine identity": lambda: all(
            S_map.apply_raw(y) == combine((sum(y), raw.X), (2 * xyz, y)) for y in ys
        ),
        "M affine identity": lambda: all(
            M.apply_raw(y) == combine((sum(y), raw.S), (-4 * xyz, y)) for y in ys
        ),
        "X on line Y S(Y)": lambda: all(
            are_collinear(ctx.x_point, BaryPoint(y), BaryPoint(S_map.apply_raw(y)))
            for y in ys
            if BaryPoint(y) != ctx.x_point
        ),
        "S on line Y M(Y)": lambda: all(
            det3(raw.S, y, M.apply_raw(y)) == 0 for y in ys
        ),
        "Z = -3xyz G + V": lambda: combine((-3 * xyz, G.coords), (1, raw.V))
        == combine((1, raw.Z)),
        "S = xyz G + V": lambda: combine((xyz, G.coords), (1, raw.V))
        == combine((1, raw.S)),
        "G, Z, V, S collinear": lambda: are_collinear(G, ctx.z_point, ctx.v_point)
        and are_collinear(G, ctx.v_point, ctx.s_point),
        "V = PQ . P'Q'": lambda: point_V_by_lines(ctx) == ctx.v_point,
        "V from P, Q and from P', Q'": lambda: all(
            combine((1, rel)) == combine((1, raw.V)) for rel in v_relations(ctx)
        ),
        "Q is the midpoint of PV": lambda: midpoint(ctx.p, ctx.v_point) == ctx.q,
        "Q' is the midpoint of P'V": lambda: midpoint(ctx.p_prime, ctx.v_point)
        == ctx.q_prime,
        "circumcenter relation": lambda: combine((Fm1, raw.Q))
        == combine((2 * raw.sigma2, raw.S), (-1, raw.O)),
        "M(O) = Q": lambda: apply(M, ctx.o_point) == ctx.q,
        "O by construction": lambda: point_O_by_maps(ctx) == ctx.o_point,
        "ratio routes agree": ratios_agree,
        "cross ratio (GV,SZ) = -3": lambda: constructed_ratios(ctx).cross_gvsz == -3,
        "k routes agree": k_routes,
        "P on E_a": lambda: F_eval(a_of_point(ctx.p), ctx.p) == 0,
    }
    return [_check(name, fn, where) for name, fn in checks.items()]


def curve_checks(a: Fraction, tolerance: float) -> list[CheckResult]:
    """Checks on one elliptic member E_a."""
    curve = CurveFamilyMember(a)
    where = f"a = {a}"

    def group_ok() -> bool:
        g = torsion_group(curve)
        return g.commutative and g.associative and g.has_inverses and g.cyclic

    def j_roundtrip() -> bool:
        return any(iv.contains(a) for iv in j_invert(j_invariant(a)))

    checks = {
        "torsion on E_a": lambda: all(curve.contains(p) for p in curve.torsion),
        "E_a nonsingular": lambda: curve.is_elliptic and not curve.singular_points,
        "discriminant matches sympy": lambda: disc_d(a) == sympy_disc_d(a),
        "normal form": lambda: normal_form_multiplier(a) in (1, -1),
        "Legendre substitution": lambda: legendre_substitution_holds(a),
        "Legendre j": lambda: legendre_check(a, tolerance).residual <= tolerance,
        "j inversion round trip": j_roundtrip,
        "torsion group cyclic of order 6": group_ok,
    }
    return [_check(name, fn, where) for name, fn in checks.items()]


J1728_RADICALS = (
    -3 - math.sqrt(3) - math.sqrt(9 + 6 * math.sqrt(3)),
    -3 - 2 * math.sqrt(3),
    -3 - math.sqrt(3) + math.sqrt(9 + 6 * math.sqrt(3)),
    -3 + 2 * math.sqrt(3),
)


def global_checks(
    rng: np.random.Generator, tolerance: float, sample_count: int
) -> list[CheckResult]:
    """Fixed facts about the family, run once per verification."""
    minus3 = CurveFamilyMember(Fraction(-3))

    def j1728() -> bool:
        mids = sorted(float(iv.midpoint) for iv in j_invert(1728))
        return len(mids) == 4 and all(
            abs(m - r) < 1e-10 for m, r in zip(mids, sorted(J1728_RADICALS))
        )

    def singular_members() -> bool:
        return (
            all(disc_d(a) == 0 for a in (0, -1, -9))
            and set(singularity_analysis(-1))
            == {BaryPoint(v) for v in [(1, -1, -1), (-1, 1, -1), (-1, -1, 1)]}
            and singularity_analysis(-9) == (G,)
            and singularity_analysis(0) == ()
        )

    def pairing() -> bool:
        images = {uv for _, uv in torsion_pairing_minus3()}
        expected = {(2, 3), (2, -3), (-1, 0), (0, 1), (0, -1), None}
        return images == expected

    def roundtrip() -> bool:
        errors = [
            weierstrass_roundtrip_error(random_real_point(minus3.a, rng))
            for _ in range(100)
        ]
        return max(errors) <= tolerance

    def extremal() -> bool:
        return extremal_check(rng, samples=max(100, 10 * sample_count)).ok

    checks = {
        "j values": lambda: (j_invariant(-3), j_invariant(1), j_invariant(-5))
        == (0, Fraction(16384, 5), Fraction(21296, 25)),
        "j = 1728 parameters": j1728,
        "singular members": singular_members,
        "E_-3 torsion pairing": pairing,
        "E_-3 round trip": roundtrip,
        "extremal values of j": extremal,
    }
    return [_check(name, fn, "global") for name, fn in checks.items()]


def run_sample(seed: int, index: int, tolerance: float) -> list[CheckResult]:
    """All checks for one sample; depends only on (seed, index)."""
    rng = np.random.default_rng([seed, index])
    ctx = random_context(rng)
    results = cevian_checks(ctx, rng)
    if index % CURVE_EVERY == 0:
        results += curve_checks(random_elliptic_parameter(rng), tolerance)
    return results


def run_verification(cfg: RunConfig) -> pd.DataFrame:
    """Per-invariant pass/fail counts, sorted by invariant name.

    The `first_failure` column names an offending input when a check failed.
    """
    n = cfg.sample_count
    if cfg.workers == 1:
        per_sample = [
            run_sample(cfg.seed, i, cfg.tolerance)
            for i in tqdm(range(n), desc="Verifying", total=n)
        ]
    else:
        with ProcessPoolExecutor(max_workers=cfg.workers) as executor:
            per_sample = list(
                tqdm(
                    executor.map(
                        run_sample,
                        repeat(cfg.seed),
                        range(n),
                        repeat(cfg.tolerance),
                        chunksize=max(1, n // (4 * cfg.workers)),
                    ),
                    desc="Verifying",
                    total=n,
                )
            )
    rng = np.random.default_rng([cfg.seed, n])
    results = [r for sample in per_sample for r in sample]
    results += global_checks(rng, cfg.tolerance, n)

    df = pd.DataFrame(results, columns=["name", "passed", "detail"])
    summary = (
        df.groupby("name")
        .agg(
            passed=("passed", "sum"),
            failed=("passed", lambda s: int((~s).sum())),
        )
        .sort_index()
    )
    failures = df[~df["passed"]].groupby("name")["detail"].first()
    summary["first_failure"] = [failures.get(name, "") for name in summary.index]
    return summary


@click.command()
@click.option("--samples", type=int, default=100, show_default=True)
@click.option(
    "--seed",
    type=int,
    default=0,
    envvar="CEVIA_SEED",
    show_default=True,
    show_envvar=True,
)
@click.option("--tolerance", type=float, default=DEFAULT_TOLERANCE, show_default=True)
@click.option("--workers", type=int, default=1, show_default=True)
@click.pass_context
def verify(ctx: click.Context, samples: int, seed: int, tolerance: float, workers: int):
    """Check every identity on random points and parameters.

    Exits with status 1 if any check fails.
    """
    try:
        cfg = RunConfig(
            command="verify",
            sample_count=samples,
            seed=seed,
            tolerance=tolerance,
            workers=workers,
        )
    except ValueError as e:
        raise click.BadParameter(str(e)) from e

    click.echo(f"seed: {cfg.seed}")
    summary = run_verification(cfg)
    with pd.option_context("display.max_colwidth", 80, "display.width", 200):
        click.echo(summary[["passed", "failed"]].to_string())

    failed = summary[summary["failed"] > 0]
    if failed.empty:
        click.echo("All checks passed")
        return
    for name, row in failed.iterrows():
        logger.error(
            f"{name} failed {row['failed']} times; first at {row['first_failure']}"
        )
        click.echo(f"FAILED {name}: {row['first_failure']}")
    ctx.exit(EXIT_VERIFY_FAILED)
