from fractions import Fraction

import pytest

from cevia.errors import (
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
from cevia.exact_geom import (
    A,
    A_INF,
    B,
    C,
    G,
    K,
    K_INV,
    LINE_AT_INFINITY,
    SIDE_LINES,
    BaryLine,
    BaryPoint,
    ProjMap,
    apply,
    are_collinear,
    canonical_integers,
    cross_ratio,
    eigenfactor,
    incidence,
    line_through,
    meet,
    midpoint,
    signed_ratio,
    to_absolute,
)

IDENTITY = ProjMap(((1, 0, 0), (0, 1, 0), (0, 0, 1)))


def test_projective_equality():
    assert BaryPoint((2, 4, 6)) == BaryPoint((1, 2, 3))
    assert BaryPoint((-1, -2, -3)) == BaryPoint((1, 2, 3))
    assert BaryPoint((Fraction(1, 2), 1, Fraction(3, 2))) == BaryPoint((1, 2, 3))
    assert BaryPoint((0, -2, 4)).coords == (0, 1, -2)


def test_zero_vector():
    with pytest.raises(ZeroVector):
        BaryPoint((0, 0, 0))
    with pytest.raises(ValueError, match="triple"):
        canonical_integers((1, 2))


def test_json_is_strings():
    assert BaryPoint((4, -2, 6)).to_json() == ["2", "-1", "3"]


def test_lines_and_meets():
    assert line_through(A, B) == SIDE_LINES[2]
    assert meet(SIDE_LINES[0], SIDE_LINES[1]) == C
    assert incidence(A_INF, LINE_AT_INFINITY) == 0
    assert A_INF.is_infinite
    assert G.is_ordinary


def test_coincident_errors():
    with pytest.raises(CoincidentPoints):
        line_through(G, BaryPoint((3, 3, 3)))
    with pytest.raises(CoincidentLines):
        meet(BaryLine((1, 1, 1)), BaryLine((2, 2, 2)))


def test_complement_pair():
    assert apply(K, A) == BaryPoint((0, 1, 1))
    assert (K @ K_INV).equivalent(IDENTITY)
    p = BaryPoint((1, 2, 3))
    assert apply(K_INV, apply(K, p)) == p


def test_inverse_and_singular():
    m = ProjMap(((1, 2, 0), (0, 1, 3), (4, 0, 1)))
    assert (m @ m.inverse()).equivalent(IDENTITY)
    assert m.adjugate().equivalent(m.inverse())
    with pytest.raises(SingularMap):
        ProjMap(((1, 2, 3), (2, 4, 6), (0, 0, 1)))


def test_equivalent_is_projective():
    m = ProjMap(((1, 2, 0), (0, 1, 3), (4, 0, 1)))
    scaled = ProjMap(
        tuple(tuple(Fraction(-3, 2) * e for e in row) for row in m.entries)
    )
    assert m.equivalent(scaled)
    assert not m.equivalent(IDENTITY)


def test_maps_to_zero():
    m = ProjMap(((1, 0, 0), (0, 0, 0), (0, 0, 0)), degenerate=True)
    assert apply(m, A) == A
    with pytest.raises(MapsToZero):
        apply(m, B)


def test_eigenfactor():
    assert eigenfactor(K, (1, 1, 1)) == 2
    with pytest.raises(NotEigenvector):
        eigenfactor(K, (1, 0, 0))


def test_to_absolute_rejects_infinite():
    assert sum(to_absolute(BaryPoint((5, 8, 9)))) == 1
    with pytest.raises(InfinitePoint):
        to_absolute(A_INF)


def test_signed_ratio_midpoint():
    a, b = BaryPoint((1, 2, 3)), BaryPoint((-4, 1, 7))
    assert signed_ratio(a, midpoint(a, b), b) == 1


def test_signed_ratio_chain():
    a = BaryPoint((1, 0, 0))
    b = BaryPoint((1, 1, 0))
    c = BaryPoint((1, 3, 0))
    product = signed_ratio(a, b, c) * signed_ratio(b, c, a) * signed_ratio(c, a, b)
    assert product == 1


def test_signed_ratio_errors():
    with pytest.raises(NotCollinear):
        signed_ratio(A, B, C)
    with pytest.raises(UndefinedRatio):
        signed_ratio(A, B, B)
    c_inf = BaryPoint((1, -1, 0))
    assert are_collinear(A, B, c_inf)
    with pytest.raises(InfinitePoint):
        signed_ratio(A, B, c_inf)


def test_cross_ratio_projective_invariance():
    pts = [BaryPoint(v) for v in [(1, 0, 0), (0, 1, 0), (1, 2, 0), (3, 1, 0)]]
    value = cross_ratio(*pts)
    m = ProjMap(((2, 1, 0), (1, 3, 1), (0, 1, 5)))
    moved = [apply(m, p) for p in pts]
    assert cross_ratio(*moved) == value
    # an infinite point is allowed
    with_inf = [A, B, BaryPoint((1, 1, 0)), BaryPoint((1, -1, 0))]
    assert cross_ratio(*with_inf) == -1


def test_cross_ratio_errors():
    with pytest.raises(DegenerateConfiguration):
        cross_ratio(A, B, A, BaryPoint((1, 1, 0)))
    with pytest.raises(NotCollinear):
        cross_ratio(A, B, BaryPoint((1, 1, 0)), C)
