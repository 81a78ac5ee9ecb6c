from fractions import Fraction

import pytest
from hypothesis import given, settings

from pellab import (
    PeriodData,
    Poly,
    algebraic_form,
    check_admissible,
    monodromy,
    reconstruct,
)
from pellab.errors import DegenerateTrace, NotAdmissible
from pellab.exactpoly import ScaledMatrixPoly, as_rat
from pellab.monodromy import j_unitarity_holds, solution_matrix_of
from pellab.pfrac import PStep

from conftest import periods

F = Fraction
X = Poly.x()


def P(*ascending):
    return Poly([as_rat(c) for c in ascending])


def PS(p, eps, beta=1):
    return PStep(p, eps, F(beta))


def M(entries, scale=1):
    return ScaledMatrixPoly(tuple(tuple(row) for row in entries), F(scale))


FREE = PeriodData((PS(X, 1),))
PER2 = PeriodData((PS(X, 1), PS(X, -1)))
MIX = PeriodData((PS(X, 1), PS(X, -1, 4)))


def test_monodromy_fixtures():
    t1 = monodromy(FREE)
    assert t1.m == ((Poly.zero(), P(-1)), (P(1), X)) and t1.scale == 1
    t2 = monodromy(PER2)
    assert t2.m == ((P(1), -X), (-X, P(1, 0, 1))) and t2.scale == 1
    t3 = monodromy(MIX)
    assert t3.m == ((P(4), -X), (P(0, -4), P(1, 0, 1))) and t3.scale == 4
    assert t3.det_poly() == P(4)


def test_check_admissible_fixtures():
    rep = check_admissible(monodromy(PER2))
    assert rep.verdict and rep.det_one and rep.degrees_ok
    assert rep.lead_t22_positive and rep.strict_leading_equality and rep.expandable

    rep2 = check_admissible(M([[Poly.zero(), P(1)], [P(-1), P(0, 2)]]))
    assert rep2.det_one and rep2.degrees_ok and not rep2.expandable
    assert not rep2.verdict

    rep3 = check_admissible(M([[Poly.zero(), P(-1)], [P(4), X]], 4))
    assert rep3.det_one and rep3.expandable and not rep3.strict_leading_equality
    assert rep3.verdict


def test_reconstruct_fixtures():
    assert reconstruct(monodromy(PER2)).blocks == PER2.blocks
    assert reconstruct(M([[Poly.zero(), P(-1)], [P(1), X]])).blocks == FREE.blocks
    got = reconstruct(M([[Poly.zero(), P(-1)], [P(4), X]], 4))
    assert got.blocks == (PS(X, 1, 4),)


def test_reconstruct_rejects_inadmissible():
    with pytest.raises(NotAdmissible):
        reconstruct(M([[Poly.zero(), P(1)], [P(-1), P(0, 2)]]))


def test_algebraic_form_worked_example():
    form, cert = algebraic_form(monodromy(PER2))
    assert form.R == P(4, 0, 1) and form.U == X and form.V == P(-2)
    assert cert.X == P(1, 0, F(1, 2)) and cert.Y == P(0, F(1, 2)) and cert.Z == X
    assert cert.sqrt_scale == 1


def test_algebraic_form_free_jacobi():
    form, cert = algebraic_form(monodromy(FREE))
    assert form.R == P(-4, 0, 1) and form.U == X and form.V == P(-2)
    assert cert.X == P(0, F(1, 2))
    # sign convention fixes lead(U) > 0, so Y = 1/2 and Z = -t21 = -1
    assert cert.Y == P(F(1, 2)) and cert.Z == P(-1)
    assert cert.X * cert.X - form.R * cert.Y * cert.Y == Poly.one()


def test_algebraic_form_squared_period():
    t = monodromy(FREE)
    form, cert = algebraic_form(t @ t)
    assert form.R == P(-4, 0, 1) and form.U == X
    assert form.V in (P(2), P(-2))
    assert cert.X * cert.X - form.R * cert.Y * cert.Y == Poly.one()
    assert (form.U * form.U - form.R) * cert.Y == form.V * cert.Z


def test_algebraic_form_nonsquare_scale():
    # period (x, +1, 1/2): scale 1/2 is not a rational square
    t = monodromy(PeriodData((PS(X, 1, F(1, 2)),)))
    form, cert = algebraic_form(t)
    assert cert.sqrt_scale == F(1, 2)
    assert cert.X * cert.X - form.R * cert.Y * cert.Y == Poly.const(F(1, 2))
    assert (form.U * form.U - form.R) * cert.Y == form.V * cert.Z


def test_algebraic_form_rejects_constant_trace():
    # [[1, x],[0, 1]] is not admissible anyway; build an admissible-like shape
    with pytest.raises((DegenerateTrace, NotAdmissible)):
        algebraic_form(M([[P(1), Poly.zero()], [Poly.zero(), P(1)]]))


@given(periods())
def test_monodromy_round_trip(period):
    T = monodromy(period)
    assert reconstruct(T).blocks == period.blocks


@given(periods())
def test_monodromy_identities(period):
    T = monodromy(period)
    assert T.det_poly() == Poly.const(T.scale)
    assert j_unitarity_holds(T)
    assert T == solution_matrix_of(period)
    rep = check_admissible(T)
    assert rep.verdict
    assert rep.degrees_ok and rep.lead_t22_positive


@given(periods(max_s=3, max_deg=2))
@settings(max_examples=30)
def test_algebraic_form_certificate_identities(period):
    T = monodromy(period)
    if T.trace_poly().degree < 1:
        return
    form, cert = algebraic_form(T)
    D = Poly.const(T.scale)
    assert cert.X * cert.X - form.R * cert.Y * cert.Y == D
    assert (form.U * form.U - form.R) * cert.Y == form.V * cert.Z
    assert form.R.degree % 2 == 0 and form.R.degree >= 2
    assert form.U.degree == form.R.degree // 2
    assert form.V.degree < form.U.degree
    core_gcd = form.R.gcd(form.R.derivative())
    assert core_gcd.is_constant()


def test_scaled_matrix_equality_mod_square_scale():
    a = monodromy(MIX)  # scale 4
    reduced = a.canonical()
    assert reduced.scale == 1
    assert a == reduced
    assert a != monodromy(PER2)
