import math
from fractions import Fraction

import numpy as np
import pytest

from cevia.cevian_engine import ratio_report
from cevia.curve_engine import (
    IDENTITY,
    TORSION,
    TORSION_LABELS,
    CurveFamilyMember,
    CurvePoint,
    F_eval,
    a_of_point,
    affine_normal_form,
    chord_tangent_add,
    critical_polynomial,
    curve_report,
    disc_d,
    extremal_check,
    j_invariant,
    j_invert,
    legendre_check,
    legendre_j,
    legendre_roots,
    legendre_substitution_holds,
    membership,
    negate,
    normal_form_multiplier,
    quartic_discriminant,
    random_real_point,
    singularity_analysis,
    solve_singular_points,
    sympy_disc_d,
    third_intersection,
    torsion_group,
    torsion_pairing_minus3,
    torsion_points,
    weierstrass_inverse_minus3,
    weierstrass_map_minus3,
    weierstrass_roundtrip_error,
)
from cevia.errors import (
    IndeterminateA,
    NotElliptic,
    NotOnCurve,
    OnSideline,
    ToleranceExceeded,
    WrongCurve,
)
from cevia.exact_geom import A, A_INF, B_INF, G, BaryPoint
from cevia.plot import sample_curve
from cevia.real_roots import real_roots, refine

P = BaryPoint((1, 2, 3))
E_M11 = CurveFamilyMember(Fraction(-11))


def bp(*v):
    return BaryPoint(v)


def test_F_eval():
    assert F_eval(-11, P) == 0
    assert F_eval(Fraction(7, 3), A_INF) == 0
    assert F_eval(0, G) == 9
    # cubic in the coordinates
    assert F_eval(2, (2, 4, 6)) == 8 * F_eval(2, (1, 2, 3))


def test_membership():
    assert membership(E_M11, P).point == P
    assert F_eval(-11, G) == -2
    with pytest.raises(NotOnCurve):
        membership(E_M11, G)
    for a in (-11, 1, Fraction(5, 2)):
        curve = CurveFamilyMember(Fraction(a))
        assert all(curve.contains(t) for t in TORSION)


def test_a_of_point():
    assert a_of_point(P) == -11
    assert a_of_point(G) == -9
    with pytest.raises(OnSideline):
        a_of_point(bp(0, 1, 1))
    with pytest.raises(IndeterminateA):
        a_of_point(bp(1, 1, -2))


def test_normal_form_minus3():
    nf = affine_normal_form(-3)
    assert str(nf) == "(3x-1)y^2 + (3x-1)(x-1)y - x^2 + x = 0"
    assert nf.coeffs[(1, 2)] == 3
    assert nf.coeffs[(0, 2)] == -1
    assert normal_form_multiplier(-3) == 1


def test_normal_form_zero():
    nf = affine_normal_form(0)
    # y^2 + (x-1)y + x^2 - x
    assert nf.coeffs == {(0, 2): 1, (1, 1): 1, (0, 1): -1, (2, 0): 1, (1, 0): -1}
    assert normal_form_multiplier(0) == -1
    assert nf(Fraction(1, 2), 0) == Fraction(-1, 4)


def test_quartic_model():
    model = quartic_discriminant(1)
    assert model.coeffs == (1, 4, -2, -4, 1)
    x = Fraction(3, 7)
    assert model(x) == (x + 1) * (x - 1) * (x * x - 4 * x - 1)


@pytest.mark.parametrize(
    ("a", "d"), [(1, 20480), (2, 304128), (-1, 0), (-9, 0), (0, 0)]
)
def test_disc_d(a, d):
    assert disc_d(a) == d


@pytest.mark.parametrize("a", [1, 2, Fraction(-7, 3), -5])
def test_disc_d_matches_sympy(a):
    assert sympy_disc_d(a) == disc_d(a)


def test_singular_members():
    expected = {bp(1, -1, -1), bp(-1, 1, -1), bp(-1, -1, 1)}
    assert set(singularity_analysis(-1)) == expected
    assert singularity_analysis(-9) == (G,)
    assert singularity_analysis(0) == ()
    curve = CurveFamilyMember(Fraction(-1))
    assert not curve.is_elliptic
    assert set(curve.singular_points) == expected


def test_elliptic_member_is_nonsingular():
    assert solve_singular_points(2) == ()
    assert CurveFamilyMember(Fraction(2)).singular_points == ()


@pytest.mark.parametrize(
    ("a", "j"), [(-3, 0), (1, Fraction(16384, 5)), (-5, Fraction(21296, 25))]
)
def test_j_invariant(a, j):
    assert j_invariant(a) == j


@pytest.mark.parametrize("a", [0, -1, -9])
def test_j_invariant_singular(a):
    with pytest.raises(NotElliptic):
        j_invariant(a)


def test_legendre_check():
    assert abs(legendre_check(1).j_numeric - 3276.8) < 1e-6
    check = legendre_check(-5)
    assert abs(check.j_numeric.real - 851.84) < 1e-6
    assert abs(check.j_numeric.imag) < 1e-9
    assert check.residual <= 1e-9


def test_legendre_check_random(rng):
    for _ in range(100):
        a = Fraction(int(rng.integers(-400, 401)), 20)
        if a in (0, -1, -9):
            continue
        legendre_check(a)


def test_legendre_tolerance_exceeded(monkeypatch):
    monkeypatch.setattr("cevia.curve_engine.legendre_j", lambda lam, mu=None: 1.0 + 0j)
    with pytest.raises(ToleranceExceeded):
        legendre_check(1)


@pytest.mark.parametrize(
    "a", [10**6, Fraction(-1000001, 10**6), Fraction(-999999, 10**6), -10**6]
)
def test_legendre_check_extreme_parameters(a):
    alpha, beta = legendre_roots(a)
    assert abs(alpha * beta + float(a)) <= 1e-12 * abs(float(a))
    assert legendre_check(a).residual <= 1e-9


def test_curve_report_keeps_failed_legendre_check(monkeypatch):
    monkeypatch.setattr("cevia.curve_engine.legendre_j", lambda lam, mu=None: 1.0 + 0j)
    report = curve_report(CurveFamilyMember(Fraction(1)))
    assert report["j"] == "16384/5"
    assert report["legendre"]["passed"] is False
    assert float(report["legendre"]["residual"]) > 0.9


def test_lambda_symmetry():
    lam = legendre_check(Fraction(7, 2)).lam
    j = legendre_j(lam)
    assert abs(legendre_j(1 - lam) - j) / abs(j) < 1e-9
    assert abs(legendre_j(1 / lam) - j) / abs(j) < 1e-9


@pytest.mark.parametrize("a", [1, -5, Fraction(11, 4)])
def test_legendre_substitution(a):
    assert legendre_substitution_holds(a)


def test_j_invert_1728():
    intervals = j_invert(1728)
    expected = sorted(
        [
            -3 + 2 * math.sqrt(3),
            -3 - 2 * math.sqrt(3),
            -3 - math.sqrt(3) + math.sqrt(9 + 6 * math.sqrt(3)),
            -3 - math.sqrt(3) - math.sqrt(9 + 6 * math.sqrt(3)),
        ]
    )
    assert len(intervals) == 4
    for iv, root in zip(intervals, expected):
        assert abs(float(iv.midpoint) - root) < 1e-10


def test_j_invert_zero():
    intervals = j_invert(0)
    assert any(iv.contains(-3) for iv in intervals)
    cubic = [m for m in (iv.midpoint for iv in intervals) if not -3.5 < m < -2.5]
    assert len(cubic) == 1
    (m,) = cubic
    assert abs(m**3 + 9 * m**2 + 3 * m + 3) < 1e-9


def test_j_invert_round_trip(rng):
    assert any(iv.contains(1) for iv in j_invert(Fraction(16384, 5)))
    for _ in range(3):
        a = Fraction(int(rng.integers(1, 40)), int(rng.integers(1, 7)))
        assert any(iv.contains(a) for iv in j_invert(j_invariant(a)))


def test_torsion_points():
    curve = CurveFamilyMember(Fraction(5))
    assert [tp.point for tp in torsion_points(curve)] == list(TORSION)
    with pytest.raises(NotElliptic):
        torsion_points(CurveFamilyMember(Fraction(-9)))


def test_identity_law():
    curve = CurveFamilyMember(Fraction(2))
    O = CurvePoint(IDENTITY, curve)
    for p in torsion_points(curve):
        assert chord_tangent_add(curve, p, O) == p
        assert chord_tangent_add(curve, p, negate(curve, p)).point == IDENTITY


def test_generic_addition_stays_on_curve():
    p = CurvePoint(P, E_M11)
    O = CurvePoint(IDENTITY, E_M11)
    assert chord_tangent_add(E_M11, p, O).point == P
    doubled = chord_tangent_add(E_M11, p, p)
    assert E_M11.contains(doubled.point)
    tripled = chord_tangent_add(E_M11, doubled, p)
    assert E_M11.contains(tripled.point)
    assert chord_tangent_add(E_M11, p, doubled) == tripled


def test_third_intersection_on_side():
    # x = 0 meets every E_a in B, C and A_inf
    curve = CurveFamilyMember(Fraction(2))
    assert third_intersection(curve, bp(0, 1, 0), bp(0, 0, 1)) == A_INF
    # the tangent at A is y + z = 0
    assert third_intersection(curve, A, A) == A_INF


@pytest.mark.parametrize("a", [-11, 2, Fraction(1, 3), -5, Fraction(-20, 3)])
def test_torsion_group_is_cyclic_of_order_6(a):
    curve = CurveFamilyMember(Fraction(a))
    group = torsion_group(curve)
    assert set(group.table.values.ravel()) == set(TORSION_LABELS)
    assert group.commutative
    assert group.associative
    assert group.has_inverses
    assert group.cyclic
    assert sorted(group.orders.values()) == [1, 2, 3, 3, 6, 6]
    assert (group.table.loc["A_inf"] == list(TORSION_LABELS)).all()


def test_weierstrass_torsion_pairing():
    pairing = dict(torsion_pairing_minus3())
    assert pairing == {
        "A": None,
        "B": (0, -1),
        "C": (0, 1),
        "A_inf": (-1, 0),
        "B_inf": (2, 3),
        "C_inf": (2, -3),
    }
    for uv in pairing.values():
        if uv is not None:
            u, v = uv
            assert v * v == u**3 + 1


def test_weierstrass_inverse():
    assert weierstrass_inverse_minus3((Fraction(2), Fraction(3))).point == B_INF
    assert weierstrass_inverse_minus3(None).point == A
    assert weierstrass_inverse_minus3((Fraction(-1), Fraction(0))).point == A_INF
    with pytest.raises(NotOnCurve):
        weierstrass_inverse_minus3((Fraction(1), Fraction(1)))


def test_weierstrass_exact_round_trip():
    curve = CurveFamilyMember(Fraction(-3))
    for p in torsion_points(curve):
        assert weierstrass_inverse_minus3(weierstrass_map_minus3(p)) == p


def test_weierstrass_float_round_trip():
    rng = np.random.default_rng(3)
    for _ in range(100):
        assert weierstrass_roundtrip_error(random_real_point(-3, rng)) < 1e-9


def test_weierstrass_wrong_curve():
    with pytest.raises(WrongCurve):
        weierstrass_map_minus3(CurvePoint(P, E_M11))


def test_extremal_values(rng):
    report = extremal_check(rng, samples=200)
    assert report.violations == []
    assert len(report.critical_points) == 4
    assert report.shared_roots == 4
    assert report.ok
    assert critical_polynomial().degree == 6
    roots = real_roots(critical_polynomial(), Fraction(1, 10**6))
    assert sum(iv.hi < -9 for iv in roots) == 1
    assert sum(-9 < iv.lo and iv.hi < -1 for iv in roots) == 1


@pytest.mark.parametrize(
    "func",
    [j_invert, chord_tangent_add, refine, ratio_report, sample_curve],
    ids=lambda f: f.__name__,
)
def test_entry_points_document_parameters(func):
    doc = func.__doc__
    assert "Parameters\n    ----------" in doc
    assert "Returns\n    -------" in doc
