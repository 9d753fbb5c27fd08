"""Sample and draw E_a in the affine chart z = 1 - x - y."""

from __future__ import annotations

import io
import logging
from fractions import Fraction
from pathlib import Path
from typing import NamedTuple

import click
import numpy as np
import pandas as pd

from .curve_engine import QuarticModel, quartic_discriminant
from .errors import OutputError
from .utils import RATIONAL, RunConfig, dump_json

logger = logging.getLogger("cevia")

# Affine images of A, B, C in the chart (x, y)
VERTEX_MARKERS = {"A": (1.0, 0.0), "B": (0.0, 1.0), "C": (0.0, 0.0)}

SVG_SIZE = 640
SVG_MARGIN = 20
BRANCH_COLORS = ("#1f77b4", "#d62728")


class CurveSamples(NamedTuple):
    """Rows x, y1, y2 (y1 <= y2, NaN where D(x) < 0) and the number of poles."""

    frame: pd.DataFrame
    poles: int
    # sign of ax + 1 per row, used to split branches across a pole
    lead_sign: np.ndarray


def solve_y(
    a: Fraction, x: Fraction, model: QuarticModel | None = None
) -> tuple[float, float] | None:
    """Real roots in y of the normal form at x, or None when D(x) < 0.

    Undefined at a pole (ax + 1 = 0). `model` is D(x) for the same a, built
    here when not given.
    """
    lead = a * x + 1
    if lead == 0:
        raise ZeroDivisionError(f"x = {x} is a pole of E_{a}")
    if model is None:
        model = quartic_discriminant(a)
    disc = model(x)
    if disc < 0:
        return None
    root = float(np.sqrt(float(disc)))
    base = float(-lead * (x - 1))
    denom = float(2 * lead)
    ys = sorted(((base - root) / denom, (base + root) / denom))
    return ys[0], ys[1]


def sample_curve(
    a: Fraction, xmin: Fraction, xmax: Fraction, samples: int
) -> CurveSamples:
    """Evaluate both branches at `samples` exactly spaced abscissae.

    Parameters
    ----------
    a : Fraction
        Curve parameter.
    xmin, xmax : Fraction
        Sampling window, endpoints included.
    samples : int
        Number of abscissae, at least 2.

    Returns
    -------
    CurveSamples
        Rows x, y1, y2. Abscissae on a pole are dropped and counted.

    """
    a = Fraction(a)
    model = quartic_discriminant(a)
    step = (Fraction(xmax) - Fraction(xmin)) / (samples - 1)
    rows = []
    signs = []
    poles = 0
    for k in range(samples):
        x = xmin + k * step
        lead = a * x + 1
        if lead == 0:
            poles += 1
            continue
        disc = model(x)
        if disc < 0:
            y1 = y2 = np.nan
        else:
            y1, y2 = solve_y(a, x, model)
        rows.append((float(x), y1, y2))
        signs.append(1 if lead > 0 else -1)
    frame = pd.DataFrame(rows, columns=["x", "y1", "y2"])
    logger.debug(f"E_{a}: {len(frame)} rows, {poles} poles skipped")
    return CurveSamples(frame, poles, np.array(signs, dtype=int))


def to_csv(curve: CurveSamples) -> str:
    buf = io.StringIO()
    curve.frame.to_csv(buf, index=False, na_rep="", float_format="%.15g")
    return buf.getvalue()


def _polylines(
    xs: np.ndarray, ys: np.ndarray, lead_sign: np.ndarray, ymin: float, ymax: float
) -> list[list[tuple[float, float]]]:
    """Split one branch into runs of finite, in-window points on one side of a pole."""
    runs: list[list[tuple[float, float]]] = []
    current: list[tuple[float, float]] = []
    prev_sign = None
    for x, y, sign in zip(xs, ys, lead_sign):
        visible = np.isfinite(y) and ymin <= y <= ymax
        if not visible or (prev_sign is not None and sign != prev_sign):
            if len(current) > 1:
                runs.append(current)
            current = []
        if visible:
            current.append((float(x), float(y)))
        prev_sign = sign
    if len(current) > 1:
        runs.append(current)
    return runs


def to_svg(
    curve: CurveSamples,
    a: Fraction,
    xmin: float,
    xmax: float,
    ymin: float,
    ymax: float,
) -> str:
    span = SVG_SIZE - 2 * SVG_MARGIN

    def sx(x: float) -> float:
        return SVG_MARGIN + (x - xmin) / (xmax - xmin) * span

    def sy(y: float) -> float:
        return SVG_MARGIN + (ymax - y) / (ymax - ymin) * span

    frame = curve.frame
    xs = frame["x"].to_numpy()
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SVG_SIZE}"'
        f' height="{SVG_SIZE}" viewBox="0 0 {SVG_SIZE} {SVG_SIZE}">',
        f"<title>E_{a}</title>",
        f"<desc>rows: {len(frame)}; poles: {curve.poles}</desc>",
        f'<rect x="0" y="0" width="{SVG_SIZE}" height="{SVG_SIZE}" fill="white"/>',
    ]
    for column, color in zip(("y1", "y2"), BRANCH_COLORS):
        ys = frame[column].to_numpy()
        for run in _polylines(xs, ys, curve.lead_sign, ymin, ymax):
            points = " ".join(f"{sx(x):.2f},{sy(y):.2f}" for x, y in run)
            parts.append(
                f'<polyline class="{column}" fill="none" stroke="{color}"'
                f' stroke-width="1.5" points="{points}"/>'
            )
    for label, (x, y) in VERTEX_MARKERS.items():
        if xmin <= x <= xmax and ymin <= y <= ymax:
            parts.append(
                f'<circle class="vertex" cx="{sx(x):.2f}" cy="{sy(y):.2f}" r="4"'
                ' fill="black"/>'
            )
            parts.append(
                f'<text x="{sx(x) + 6:.2f}" y="{sy(y) - 6:.2f}"'
                f' font-size="14">{label}</text>'
            )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def write_output(text: str, output: Path | None):
    if output is None:
        click.echo(text, nl=False)
        return
    try:
        output.write_text(text)
    except OSError as e:
        raise OutputError(f"Cannot write {output}: {e}") from e
    logger.info(f"Wrote {output}")


@click.command(context_settings={"ignore_unknown_options": True})
@click.argument("a", type=RATIONAL)
@click.option("--xmin", type=RATIONAL, default="-2", show_default=True)
@click.option("--xmax", type=RATIONAL, default="2", show_default=True)
@click.option("--ymin", type=float, default=-4.0, show_default=True)
@click.option("--ymax", type=float, default=4.0, show_default=True)
@click.option(
    "--samples",
    type=int,
    default=401,
    show_default=True,
    help="Number of x values, endpoints included.",
)
@click.option(
    "--format",
    "fmt",
    type=click.Choice(["svg", "csv"]),
    default="svg",
    show_default=True,
)
@click.option(
    "-o",
    "--output",
    type=click.Path(dir_okay=False, path_type=Path),
    help="Output file. Default is stdout.",
)
def plot(
    a: Fraction,
    xmin: Fraction,
    xmax: Fraction,
    ymin: float,
    ymax: float,
    samples: int,
    fmt: str,
    output: Path | None,
):
    """Plot the real branches of E_A in the chart z = 1 - x - y."""
    try:
        cfg = RunConfig(
            command="plot",
            xmin=xmin,
            xmax=xmax,
            ymin=ymin,
            ymax=ymax,
            resolution=samples,
        )
    except ValueError as e:
        raise click.BadParameter(str(e)) from e

    curve = sample_curve(a, cfg.xmin, cfg.xmax, cfg.resolution)
    if fmt == "csv":
        text = to_csv(curve)
    else:
        text = to_svg(curve, a, float(cfg.xmin), float(cfg.xmax), cfg.ymin, cfg.ymax)
    write_output(text, output)

    summary = {"a": str(a), "rows": len(curve.frame), "poles": curve.poles}
    if output is not None:
        click.echo(dump_json({**summary, "output": str(output)}))
    else:
        logger.info(f"Sampled E_{a}: {summary}")
