from fractions import Fraction

import pytest
from hypothesis import given, settings

from pellab import PeriodData, Poly, companion, resolvent_m, symmetrizator, truncate
from pellab.errors import IrrationalCoupling, NotMonic
from pellab.exactpoly import as_rat
from pellab.jacobi import is_symmetric, mat_mul, mat_transpose
from pellab.pfrac import PStep, recurrence

from conftest import charpoly_value, monic_polys, periods

F = Fraction
X = Poly.x()


def P(*ascending):
    return Poly([as_rat(c) for c in ascending])


def PS(p, eps, beta=1):
    return PStep(p, eps, F(beta))


def test_companion_fixtures():
    assert companion(X) == ((F(0),),)
    assert companion(P(3, 1)) == ((F(-3),),)
    assert companion(P(-1, 0, 1)) == ((F(0), F(1)), (F(1), F(0)))
    with pytest.raises(NotMonic):
        companion(P(1, 2))


def test_symmetrizator_fixtures():
    assert symmetrizator(X) == ((F(1),),)
    assert symmetrizator(P(-1, 0, 1)) == ((F(0), F(1)), (F(1), F(0)))
    assert symmetrizator(P(5, 2, 1)) == ((F(2), F(1)), (F(1), F(0)))
    with pytest.raises(NotMonic):
        symmetrizator(P(1, 2))


@given(monic_polys(max_deg=6, coeff=5))
def test_companion_charpoly_and_intertwining(p):
    C, E = companion(p), symmetrizator(p)
    for x in (F(0), F(1), F(-1), F(2), F(-3), F(1, 2), F(5, 3)):
        assert charpoly_value(C, x) == p(x)
    assert mat_mul(C, E) == mat_mul(E, mat_transpose(C))


def test_truncate_free_jacobi():
    pair = truncate(PeriodData((PS(X, 1),)), 3)
    assert pair.H == (
        (F(0), F(1), F(0)),
        (F(1), F(0), F(1)),
        (F(0), F(1), F(0)),
    )
    assert pair.G == tuple(
        tuple(F(1) if i == j else F(0) for j in range(3)) for i in range(3)
    )


def test_truncate_mixed_signs():
    pair = truncate(PeriodData((PS(X, 1), PS(X, -1))), 2)
    assert pair.H == ((F(0), F(-1)), (F(1), F(0)))
    assert pair.G == ((F(1), F(0)), (F(0), F(-1)))
    gh = mat_mul(pair.G, pair.H)
    assert gh == ((F(0), F(-1)), (F(-1), F(0)))
    assert is_symmetric(gh)


def test_truncate_degree_two_block():
    pair = truncate(PeriodData((PS(P(-1, 0, 1), 1),)), 2)
    A = ((F(0), F(1)), (F(1), F(0)))
    assert len(pair.H) == 4
    for o in (0, 2):
        for i in range(2):
            for j in range(2):
                assert pair.H[o + i][o + j] == A[i][j]
    # single-corner couplings
    assert pair.H[2][1] == 1 and pair.H[0][3] == 1
    assert pair.H[3][0] == 0 and pair.H[1][2] == 0
    assert is_symmetric(mat_mul(pair.G, pair.H))


def test_truncate_rejects_irrational_coupling():
    with pytest.raises(IrrationalCoupling):
        truncate(PeriodData((PS(X, 1, 2),)), 2)


def test_truncate_single_block_allows_any_beta():
    # no coupling enters a one-block truncation
    pair = truncate(PeriodData((PS(X, 1, 2),)), 1)
    assert pair.H == ((F(0),),)


@given(periods(max_s=3, max_deg=2))
@settings(max_examples=30)
def test_krein_symmetry_on_truncations(period):
    pair = truncate(period, 2 * period.s)
    gh = mat_mul(pair.G, pair.H)
    assert is_symmetric(gh)


@given(periods(max_s=3, max_deg=2))
@settings(max_examples=20)
def test_charpoly_connection(period):
    """det(xI - H_[0,j]) = Phat_{j+1} and det(xI - H_[1,j]) = eps_0 Qhat_{j+1}."""
    n_blocks = period.s + 1
    ext = [period.blocks[j % period.s] for j in range(n_blocks + 1)]
    rec = recurrence(ext)
    pts = [F(0), F(1), F(-1), F(2), F(-2), F(3), F(-3), F(1, 2), F(5, 2), F(7, 3), F(-7, 2), F(4), F(-4), F(5)]
    for j in range(1, n_blocks + 1):
        H = truncate(period, j).H
        deg = len(H)
        for x in pts[: deg + 1]:
            assert charpoly_value(H, x) == rec.Phat[j](x)
    rotated = PeriodData(period.blocks[1:] + period.blocks[:1])
    eps0 = period.blocks[0].epsilon
    for j in range(1, n_blocks):
        H1 = truncate(rotated, j).H
        deg = len(H1)
        for x in pts[: deg + 1]:
            assert charpoly_value(H1, x) == eps0 * rec.Qhat[j + 1](x)


def test_resolvent_free_jacobi_closed_form():
    val = resolvent_m(PeriodData((PS(X, 1),)), 200, 3.0)
    assert abs(val - (-3 + 5**0.5) / 2) < 1e-12


def test_resolvent_mixed_period_closed_form():
    val = resolvent_m(PeriodData((PS(X, 1), PS(X, -1))), 200, 4j)
    assert abs(val - 1j * (4 - 12**0.5) / 2) < 1e-12


def test_resolvent_far_point():
    val = resolvent_m(PeriodData((PS(X, 1),)), 200, 10.0)
    assert abs(val - (-10 + 96**0.5) / 2) < 1e-12
