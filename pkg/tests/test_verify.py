from fractions import Fraction

import numpy as np

from cevia.cevian_engine import CevianContext, build_M
from cevia.exact_geom import ProjMap
from cevia.utils import RunConfig
from cevia.verify import (
    cevian_checks,
    curve_checks,
    global_checks,
    run_sample,
    run_verification,
)


def test_cevian_checks_pass(ctx123):
    results = cevian_checks(ctx123, np.random.default_rng(0))
    failed = [r for r in results if not r.passed]
    assert failed == []


def test_curve_checks_pass():
    results = curve_checks(Fraction(7, 3), 1e-9)
    assert all(r.passed for r in results), [r for r in results if not r.passed]


def test_global_checks_pass():
    results = global_checks(np.random.default_rng(0), 1e-9, 1)
    assert all(r.passed for r in results), [r for r in results if not r.passed]


def test_samples_are_reproducible():
    first = run_sample(7, 3, 1e-9)
    second = run_sample(7, 3, 1e-9)
    assert first == second


def test_run_verification_summary():
    summary = run_verification(RunConfig(command="verify", sample_count=3, seed=7))
    assert list(summary.index) == sorted(summary.index)
    assert (summary["failed"] == 0).all()
    assert summary.loc["P on E_a", "passed"] == 3


def test_broken_matrix_is_reported(monkeypatch):
    def broken_M(ctx):
        rows = [list(row) for row in build_M(ctx).entries]
        rows[0][1] += 1
        return ProjMap(rows)

    monkeypatch.setattr("cevia.verify.build_M", broken_M)
    results = cevian_checks(CevianContext.of(1, 2, 3), np.random.default_rng(0))
    failed = {r.name for r in results if not r.passed}
    assert "M is T_P K^-1 T_P'" in failed
