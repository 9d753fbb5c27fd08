import math
from fractions import Fraction

import pytest

from cevia.errors import NotCertified, ZeroPolynomial
from cevia.real_roots import (
    IsolatingInterval,
    RatPolynomial,
    count_real_roots,
    isolate_roots,
    real_roots,
    refine,
    sign_variations,
    sturm_sequence,
)


def poly(*coeffs):
    return RatPolynomial.from_coeffs(coeffs)


QUADRATIC = poly(-3, 6, 1)  # x^2 + 6x - 3
QUARTIC = poly(9, 36, 30, 12, 1)  # x^4 + 12x^3 + 30x^2 + 36x + 9


def test_sturm_sequence_textbook():
    seq = sturm_sequence(poly(-1, 0, 1))
    assert [q.coeffs for q in seq] == [(-1, 0, 1), (0, 2), (1,)]


def test_zero_polynomial_rejected():
    zero = poly(0)
    assert zero.is_zero
    assert zero.degree == -1
    with pytest.raises(ZeroPolynomial):
        sturm_sequence(zero)
    with pytest.raises(ZeroPolynomial):
        isolate_roots(zero)


@pytest.mark.parametrize(
    ("p", "expected"),
    [(poly(1, 0, 1), 0), (QUADRATIC, 2), (QUARTIC, 2), (poly(-1, 3, -3, 1), 1)],
)
def test_count_real_roots(p, expected):
    assert count_real_roots(p) == expected
    assert len(isolate_roots(p)) == expected


def test_isolating_intervals_are_certified():
    for p in (QUADRATIC, QUARTIC, QUADRATIC * QUARTIC):
        intervals = isolate_roots(p)
        seq = sturm_sequence(p.square_free())
        for iv in intervals:
            assert iv.lo < iv.hi
            assert sign_variations(seq, iv.lo) - sign_variations(seq, iv.hi) == 1
            assert (p(iv.lo) > 0) != (p(iv.hi) > 0)
        pairs = zip(intervals, intervals[1:])
        assert all(left.hi <= right.lo for left, right in pairs)


def test_quartic_roots_are_negative():
    roots = real_roots(QUARTIC, Fraction(1, 10**6))
    assert len(roots) == 2
    assert all(iv.hi < 0 for iv in roots)


def test_repeated_root():
    cube = poly(-1, 3, -3, 1)  # (x - 1)^3
    (iv,) = isolate_roots(cube)
    assert iv.contains(1)


def test_refine_sqrt2():
    start = IsolatingInterval(Fraction(1), Fraction(2))
    iv = refine(poly(-2, 0, 1), start, Fraction(1, 1000))
    assert iv.width <= Fraction(1, 1000)
    assert iv.contains(math.sqrt(2))


def test_refine_wide_width_is_noop():
    start = IsolatingInterval(Fraction(1), Fraction(2))
    assert refine(poly(-2, 0, 1), start, Fraction(5)) == start


def test_refine_matches_radical():
    roots = real_roots(QUADRATIC, Fraction(1, 10**12))
    assert abs(float(roots[-1].midpoint) - (-3 + 2 * math.sqrt(3))) < 1e-10
    assert abs(float(roots[0].midpoint) - (-3 - 2 * math.sqrt(3))) < 1e-10


def test_refine_exact_rational_root():
    start = IsolatingInterval(Fraction(0), Fraction(1))
    iv = refine(poly(Fraction(-1, 4), 0, 1), start, Fraction(1, 100))
    assert iv.exact == Fraction(1, 2)
    assert iv.midpoint == Fraction(1, 2)


def test_refine_rejects_uncertified():
    no_root = IsolatingInterval(Fraction(2), Fraction(3))
    with pytest.raises(NotCertified):
        refine(poly(-2, 0, 1), no_root, Fraction(1, 10))
