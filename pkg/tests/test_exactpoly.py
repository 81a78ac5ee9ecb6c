from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from pellab import Poly, normal_indices, poly_divmod, sqrt_series, squarefree_split
from pellab.errors import (
    DivisionByZeroPoly,
    LeadingCoeffNotSquare,
    OddDegree,
    ZeroPolynomial,
)
from pellab.exactpoly import (
    ScaledPoly,
    SeriesAtInfinity,
    as_rat,
    poly_sqrt,
    rat_sqrt,
    reduce_sqrt,
)

from conftest import monic_polys

F = Fraction
X = Poly.x()


def P(*ascending):
    return Poly([as_rat(c) for c in ascending])


# -- rationals ----------------------------------------------------------------

def test_rat_parsing_round_trip():
    assert as_rat("-3/4") == F(-3, 4)
    assert str(as_rat("-3/4")) == "-3/4"
    assert as_rat("7") == 7
    assert rat_sqrt(F(9, 4)) == F(3, 2)
    assert rat_sqrt(F(2)) is None
    assert rat_sqrt(F(-1)) is None
    assert reduce_sqrt(F(4)) == (F(2), 1)
    assert reduce_sqrt(F(9, 16)) == (F(3, 4), 1)
    assert reduce_sqrt(F(8)) == (F(2), 2)


# -- division -----------------------------------------------------------------

def test_divmod_one_step():
    q, r = poly_divmod(P(1, 0, 1), X)
    assert (q, r) == (X, P(1))


def test_divmod_exact_factor():
    q, r = poly_divmod(P(-1, 0, 1), P(-1, 1))
    assert (q, r) == (P(1, 1), Poly.zero())


def test_divmod_long_division_by_hand():
    # (2x^3 + x) / (4x^2) = x/2 remainder x
    q, r = poly_divmod(P(0, 1, 0, 2), P(0, 0, 4))
    assert q == P(0, F(1, 2))
    assert r == X


def test_divmod_rejects_zero_divisor():
    with pytest.raises(DivisionByZeroPoly):
        poly_divmod(X, Poly.zero())


@given(monic_polys(max_deg=4), monic_polys(max_deg=4))
def test_divmod_reconstruction(a, b):
    q, r = poly_divmod(a, b)
    assert b * q + r == a
    assert r.degree < b.degree


# -- square root series ---------------------------------------------------------

def test_sqrt_series_x2_minus_1():
    s = sqrt_series(P(-1, 0, 1), 6)
    assert s.top_degree == 1
    assert list(s.coeffs) == [1, 0, F(-1, 2), 0, F(-1, 8), 0]


def test_sqrt_series_perfect_square():
    s = sqrt_series(P(0, 0, 1), 3)
    assert s.top_degree == 1
    assert s.coefficient(1) == 1 and s.coefficient(0) == 0 and s.coefficient(-1) == 0


def test_sqrt_series_x2_plus_4():
    s = sqrt_series(P(4, 0, 1), 5)
    assert [s.coefficient(k) for k in (1, 0, -1, -2, -3)] == [1, 0, 2, 0, -2]


def test_sqrt_series_errors():
    with pytest.raises(OddDegree):
        sqrt_series(P(0, 0, 0, 1), 3)
    with pytest.raises(LeadingCoeffNotSquare):
        sqrt_series(P(0, 0, 2), 3)
    with pytest.raises(LeadingCoeffNotSquare):
        sqrt_series(P(0, 0, -1), 3)


@given(monic_polys(max_deg=3), st.integers(2, 12))
def test_sqrt_series_squares_back(p, terms):
    r = p * p
    s = sqrt_series(r, terms)
    sq = s * s
    for k in range(sq.top_degree, sq.cutoff - 1, -1):
        assert sq.coefficient(k) == r.coefficient(k)


def test_sqrt_series_nonsquare_argument_squares_back():
    r = P(1, 2, 0, 0, 1)  # not a perfect square
    s = sqrt_series(r, 9)
    sq = s * s
    for k in range(sq.top_degree, sq.cutoff - 1, -1):
        assert sq.coefficient(k) == r.coefficient(k)


# -- squarefree split -----------------------------------------------------------

def test_squarefree_split_examples():
    core, sq = squarefree_split(P(0, 0, 4, 0, 1))
    assert (core, sq) == (P(4, 0, 1), X)
    assert squarefree_split(P(-1, 0, 1)) == (P(-1, 0, 1), Poly.one())
    cube = P(-1, 1) ** 3
    assert squarefree_split(cube) == (P(-1, 1), P(-1, 1))


def test_squarefree_split_zero_rejected():
    with pytest.raises(ZeroPolynomial):
        squarefree_split(Poly.zero())


@given(monic_polys(max_deg=2), monic_polys(max_deg=2), st.integers(-3, 3))
def test_squarefree_split_reconstructs(a, b, scale):
    if scale == 0:
        scale = 1
    p = scale * a * b * b
    core, sq = squarefree_split(p)
    assert core * sq * sq == p
    assert core.gcd(core.derivative()).is_constant()
    assert (core.lead > 0) == (p.lead > 0)


def test_poly_sqrt():
    assert poly_sqrt(P(0, 0, F(1, 4))) == P(0, F(1, 2))
    assert poly_sqrt(P(1, 2, 1)) == P(1, 1)
    assert poly_sqrt(P(1, 1)) is None
    assert poly_sqrt(P(2, 0, 1)) is None


# -- normal indices --------------------------------------------------------------

def test_normal_indices_free_jacobi_moments():
    assert normal_indices([1, 0, 1, 0, 2, 0], 3) == [1, 2, 3]


def test_normal_indices_block_degree_two():
    # moments of the 1-periodic block x^2 - 1: only even indices are normal
    assert normal_indices([0, 1, 0, 1, 0, 2, 0], 4) == [2, 4]


def test_normal_indices_first_moment():
    assert normal_indices([-1, 0, 0, 0], 1) == [1]


def test_normal_indices_skips_untestable_sizes():
    # index 4 would need seven moments; six are supplied
    assert normal_indices([0, 1, 0, 1, 0, 1], 4) == [2]


# -- series window bookkeeping ----------------------------------------------------

def test_series_normalization_and_cutoff():
    s = SeriesAtInfinity(3, [0, 0, 5, 1])
    assert s.top_degree == 1 and s.cutoff == 0
    z = SeriesAtInfinity(2, [0, 0, 0])
    assert z.is_zero_to_cutoff() and z.cutoff == 0


def test_series_reciprocal_window():
    # f = x + 1 + 1/x known on [-1, 1]; 1/f known on [-3, -1]
    f = SeriesAtInfinity(1, [1, 1, 1])
    g = f.reciprocal()
    assert g.top_degree == -1 and g.cutoff == -3
    prod = f * g
    for k in range(prod.top_degree, prod.cutoff - 1, -1):
        assert prod.coefficient(k) == (1 if k == 0 else 0)


def test_series_poly_part_requires_window():
    from pellab.errors import InsufficientWindow

    s = SeriesAtInfinity(2, [1, 1])
    with pytest.raises(InsufficientWindow):
        s.poly_part()
    assert SeriesAtInfinity(2, [1, 1, 1]).poly_part() == P(1, 1, 1)


def test_series_div_poly():
    s = SeriesAtInfinity.from_poly(P(0, 0, 0, 1), -4)  # x^3, known down to x^-4
    q = s.div_poly(P(1, 1))  # x^3/(x+1) = x^2 - x + 1 - 1/x + ...
    assert [q.coefficient(k) for k in (2, 1, 0, -1, -2)] == [1, -1, 1, -1, 1]


# -- scaled polynomials ------------------------------------------------------------

def test_scaled_poly_canonicalizes_square_scale():
    sp = ScaledPoly(P(5, 0, 1), F(4))
    assert sp.sqrt_scale == 1
    assert sp.poly == P(F(5, 2), 0, F(1, 2))


def test_scaled_poly_squarefree_reduction():
    sp = ScaledPoly(P(0, 3), F(8))
    assert sp.sqrt_scale == 2
    assert sp.poly == P(0, F(3, 2))
    assert ScaledPoly(P(0, 3), F(8)) == sp
