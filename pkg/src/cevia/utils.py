from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

import click
import numpy as np

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_DEGENERATE = 2
EXIT_USAGE = 64
EXIT_IO = 73

# Numerators and denominators of random rationals are drawn from [-HEIGHT, HEIGHT]
HEIGHT = 20


@dataclass(frozen=True)
class RunConfig:
    """Validated knobs shared by the `plot` and `verify` commands."""

    command: str
    sample_count: int = 1
    seed: int = 0
    tolerance: float = 1e-9
    workers: int = 1
    xmin: Fraction = Fraction(-2)
    xmax: Fraction = Fraction(2)
    ymin: float = -4.0
    ymax: float = 4.0
    resolution: int = 401

    def __post_init__(self):
        if self.sample_count < 1:
            raise ValueError(f"sample_count must be >= 1, got {self.sample_count}")
        if not self.tolerance > 0:
            raise ValueError(f"tolerance must be positive, got {self.tolerance}")
        if self.resolution < 2:
            raise ValueError(f"plot resolution must be >= 2, got {self.resolution}")
        if self.workers < 1:
            raise ValueError(f"workers must be >= 1, got {self.workers}")
        if not self.xmin < self.xmax:
            raise ValueError(f"xmin ({self.xmin}) must be less than xmax ({self.xmax})")
        if not self.ymin < self.ymax:
            raise ValueError(f"ymin ({self.ymin}) must be less than ymax ({self.ymax})")


def parse_rational(text: str) -> Fraction:
    """Parse "-2/5", "3" or "0.25" into an exact Fraction.

    >>> parse_rational("-4/10")
    Fraction(-2, 5)
    """
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as e:
        raise ValueError(f"Not a rational number: {text!r}") from e


class RationalParamType(click.ParamType):
    """Click parameter accepting exact rationals such as "-2/5"."""

    name = "rational"

    def convert(self, value, param, ctx):
        if isinstance(value, Fraction):
            return value
        try:
            return parse_rational(str(value))
        except ValueError as e:
            self.fail(str(e), param, ctx)


RATIONAL = RationalParamType()


def format_rational(q: Fraction | int) -> str:
    """Canonical fraction string: "-11", "-2/5"."""
    return str(Fraction(q))


def approx(q: Fraction | int, digits: int = 15) -> str:
    """Decimal approximation used in the optional "approx" fields."""
    return f"{float(q):.{digits}g}"


def dump_json(obj: Any) -> str:
    """Serialize a report. Key order is insertion order, so output is stable."""
    return json.dumps(obj, indent=2)


def random_rational(
    rng: np.random.Generator, height: int = HEIGHT, nonzero: bool = False
) -> Fraction:
    """Draw n/d with n, d uniform in [-height, height], d != 0."""
    while True:
        n = int(rng.integers(-height, height + 1))
        d = int(rng.integers(-height, height + 1))
        if d == 0 or (nonzero and n == 0):
            continue
        return Fraction(n, d)
