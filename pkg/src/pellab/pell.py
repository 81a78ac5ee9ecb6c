"""Polynomial Pell solving and realizability of (sqrt(R) - U)/V.

Two independent routes decide whether the function is the m-function of a
periodic block operator: the certificate route builds candidate monodromy
matrices from Pell solutions (X^2 - R Y^2 = 1, (U^2 - R) Y = V Z) and
reconstructs; the direct route expands the surd itself and looks for an
exact period.  A realized report carries the period, its monodromy, a
certificate in the input's terms, and the agreement flag of the two routes.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

from .errors import (
    DegreeConstraintViolated,
    LeadingCoeffNotSquare,
    NoDecayingBranch,
    NonsquareObstruction,
    NotAdmissible,
    NotExpandable,
    NotNormalized,
    OddDegree,
    PerfectSquareR,
)
from .exactpoly import Poly, ScaledMatrixPoly, poly_sqrt, rat_sqrt, sqrt_series
from .jacobi import PeriodData
from .monodromy import (
    AlgebraicForm,
    InconsistentScale,
    PellCertificate,
    check_admissible,
    monodromy,
    reconstruct,
)
from .pfrac import Periodic, PrePeriodic, SurdTail, Terminated, Truncated, expand
from .spectral import m_eval

_ONE = Fraction(1)


@dataclass(frozen=True)
class SurdState:
    """State (Ucur, Vcur) of the surd recursion for sqrt(R); Vcur | R - Ucur^2."""

    Ucur: Poly
    Vcur: Poly
    R: Poly


@dataclass(frozen=True)
class SurdCfStep:
    a: Poly
    state: SurdState
    x: Poly
    y: Poly
    c: Optional[Fraction]


def _check_r(R: Poly) -> None:
    if R.degree < 2 or R.degree % 2:
        raise OddDegree("R must have even degree >= 2")
    if rat_sqrt(R.lead) is None:
        raise LeadingCoeffNotSquare(
            "leading coefficient of R must be the square of a positive rational"
        )
    if poly_sqrt(R) is not None:
        raise PerfectSquareR("R is a perfect square")


def _poly_part(num_series, V: Poly) -> Poly:
    return num_series.div_poly(V).poly_part()


def _surd_cf_steps(R: Poly):
    """Infinite generator behind :func:`surd_cf`."""
    _check_r(R)
    n = R.degree // 2
    S = sqrt_series(R, n + 1)  # coefficients of x^n .. x^0 suffice for all steps
    U, V = Poly.zero(), Poly.one()
    x_prev, x_cur = Poly.one(), None
    y_prev, y_cur = Poly.zero(), None
    while True:
        a = _poly_part(S.add_poly(U), V)
        if x_cur is None:
            x_cur, y_cur = a, Poly.one()
        else:
            x_cur, x_prev = a * x_cur + x_prev, x_cur
            y_cur, y_prev = a * y_cur + y_prev, y_cur
        e = x_cur * x_cur - R * y_cur * y_cur
        c = e.coefficient(0) if e.is_constant() and not e.is_zero() else None
        yield SurdCfStep(a=a, state=SurdState(U, V, R), x=x_cur, y=y_cur, c=c)
        U = a * V - U
        V = (R - U * U).exact_div(V)


def surd_cf(R: Poly, max_steps: int) -> list[SurdCfStep]:
    """Continued fraction of sqrt(R) with convergents x_j, y_j.

    a_j is the polynomial part of (sqrt(R) + U_j)/V_j; the states update by
    U_{j+1} = a_j V_j - U_j and V_{j+1} = (R - U_{j+1}^2)/V_j (exact).
    c_j is set whenever x_j^2 - R y_j^2 is a nonzero constant.
    """
    gen = _surd_cf_steps(R)
    return [next(gen) for _ in range(max_steps)]


def pell_fundamental(R: Poly, max_steps: int) -> Optional[tuple[Poly, Poly]]:
    """Minimal-degree nontrivial (X, Y) with X^2 - R Y^2 = 1, or None.

    Candidates come from the convergents: (x/d, y/d) when the convergent
    constant is a rational square d^2, and always the doubled solution
    ((x^2 + R y^2)/c, 2xy/c).  Signs are normalized so both leading
    coefficients are positive.  Convergent degrees grow strictly, so the
    scan stops once the current degree exceeds the best solution found.
    """
    best: Optional[tuple[Poly, Poly]] = None
    for _j, st in zip(range(max_steps), _surd_cf_steps(R)):
        if best is not None and st.x.degree > best[0].degree:
            break
        if st.c is None:
            continue
        cands = []
        d = rat_sqrt(st.c) if st.c > 0 else None
        if d:
            cands.append((st.x / d, st.y / d))
        cands.append(
            (
                (st.x * st.x + R * st.y * st.y) / st.c,
                (2 * st.x * st.y) / st.c,
            )
        )
        for X, Y in cands:
            if Y.is_zero():
                continue
            if X * X - R * Y * Y != Poly.one():
                continue
            if X.lead < 0:
                X = -X
            if Y.lead < 0:
                Y = -Y
            if best is None or X.degree < best[0].degree:
                best = (X, Y)
    return best


def pell_power(sol: tuple[Poly, Poly], R: Poly, k: int) -> tuple[Poly, Poly]:
    """k-th power under the group law X_k + Y_k sqrt(R) = (X + Y sqrt(R))^k."""
    if k < 1:
        raise ValueError("k must be >= 1")
    X, Y = sol
    Xk, Yk = X, Y
    for _ in range(k - 1):
        Xk, Yk = X * Xk + R * Y * Yk, X * Yk + Y * Xk
    return Xk, Yk


# ---------------------------------------------------------------------------
# realizability


@dataclass(frozen=True)
class Realized:
    kind = "realized"


@dataclass(frozen=True)
class NotRealizable:
    reason: str
    kind = "not_realizable"


@dataclass(frozen=True)
class Inconclusive:
    bound_hit: str
    kind = "inconclusive"


Status = Union[Realized, NotRealizable, Inconclusive]


@dataclass(frozen=True)
class RealizeReport:
    status: Status
    canonical_form: AlgebraicForm
    period: Optional[PeriodData] = None
    T: Optional[ScaledMatrixPoly] = None
    certificate: Optional[PellCertificate] = None
    cross_check: bool = False
    detail: str = ""


def _canonicalize_form(form: AlgebraicForm) -> AlgebraicForm:
    """Reduce common factors g | U, g | V with g^2 | R, then normalize the
    decaying branch to +sqrt(R) (flipping the signs of U and V if needed)."""
    R, U, V = form.R, form.U, form.V
    if V.is_zero():
        raise DegreeConstraintViolated("V must be nonzero")
    while True:
        g = U.gcd(V)
        if g.degree < 1:
            break
        q, r = R.divmod(g * g)
        if not r.is_zero():
            break
        R, U, V = q, U.exact_div(g), V.exact_div(g)
    _check_r(R)
    n = R.degree // 2
    if U.degree != n or V.degree >= n:
        raise DegreeConstraintViolated(
            f"need deg U = {n} and deg V < {n}; got deg U = {U.degree}, deg V = {V.degree}"
        )
    S = sqrt_series(R, n + 2)
    plus = S.add_poly(-U)
    minus = (-S).add_poly(-U)
    decay_plus = plus.is_zero_to_cutoff() or plus.top_degree < V.degree
    decay_minus = minus.is_zero_to_cutoff() or minus.top_degree < V.degree
    if decay_plus:
        return AlgebraicForm(R, U, V)
    if decay_minus:
        return AlgebraicForm(R, -U, -V)
    raise NoDecayingBranch(
        "neither branch of (sqrt(R) - U)/V tends to zero at infinity"
    )


def certificate_for_form(T: ScaledMatrixPoly, form: AlgebraicForm) -> PellCertificate:
    """Certificate (X, Y, Z) in the input form's own terms, from the half-trace.

    X is half the trace numerator; Y is the exact polynomial square root of
    (X^2 - scale)/R with positive leading coefficient; Z comes from the
    second identity.  Raises NonsquareObstruction when the divisions fail.
    """
    m = T.m
    X = (m[0][0] + m[1][1]) / 2
    W = X * X - Poly.const(T.scale)
    try:
        Y2 = W.exact_div(form.R)
    except ValueError as exc:
        raise NonsquareObstruction("X^2 - scale is not divisible by R") from exc
    Y = poly_sqrt(Y2)
    if Y is None:
        raise NonsquareObstruction("(X^2 - scale)/R is not a perfect square")
    try:
        Z = ((form.U * form.U - form.R) * Y).exact_div(form.V)
    except ValueError as exc:
        raise NonsquareObstruction("(U^2 - R) Y is not divisible by V") from exc
    return PellCertificate(X=X, Y=Y, Z=Z, sqrt_scale=T.scale)


def verify_certificate(form: AlgebraicForm, cert: PellCertificate) -> bool:
    """Exact check of both identities, in scaled form when sqrt_scale != 1."""
    pell1 = cert.X * cert.X - form.R * cert.Y * cert.Y == Poly.const(cert.sqrt_scale)
    pell2 = (form.U * form.U - form.R) * cert.Y == form.V * cert.Z
    return pell1 and pell2


def _spectral_radius_bound(period: PeriodData, form: AlgebraicForm) -> float:
    def cauchy(p: Poly) -> float:
        if p.degree < 1:
            return 1.0
        return 1.0 + max(abs(float(c / p.lead)) for c in p.coeffs[:-1])

    from .spectral import _period_polys

    _a, _b, _c, Ps, ebQ, D = _period_polys(period)
    band = (Ps - ebQ) * (Ps - ebQ) - Poly.const(4 * D)
    vals = [cauchy(band), cauchy(form.R), cauchy(form.V), cauchy(form.U)]
    return max(vals)


def _m_matches_form(period: PeriodData, form: AlgebraicForm, tol: float = 1e-9) -> bool:
    """Compare m_eval of the period with the decaying branch of the form at
    8 sample points far outside the spectrum."""
    radius = 10.0 * (1.0 + _spectral_radius_bound(period, form))
    for j in range(8):
        lam = radius * cmath.exp(2j * math.pi * (j + 0.5) / 8)
        try:
            m = m_eval(period, lam)
        except Exception:
            return False
        rv = complex(form.R(lam))
        uv, vv = complex(form.U(lam)), complex(form.V(lam))
        root = cmath.sqrt(rv)
        cands = [(root - uv) / vv, (-root - uv) / vv]
        phi = min(cands, key=abs)
        if abs(m - phi) > tol * max(1.0, abs(m)):
            return False
    return True


def _route_direct(form: AlgebraicForm, max_cf_steps: int):
    """Expand (sqrt(R) - U)/V itself; returns (period | None, obstruction | None)."""
    tail = SurdTail(-form.U, Poly.one(), form.V, form.R)
    try:
        pf = expand(tail, max_cf_steps)
    except NotNormalized as exc:
        return None, ("normalization obstruction", str(exc))
    except NotExpandable as exc:
        return None, ("expansion obstruction", str(exc))
    if isinstance(pf.terminal, Periodic):
        return PeriodData(pf.steps), None
    if isinstance(pf.terminal, PrePeriodic):
        return None, (
            "preperiodic expansion",
            f"cycle of length {pf.terminal.cycle_len} starting at step {pf.terminal.start}",
        )
    if isinstance(pf.terminal, Terminated):
        return None, ("terminating expansion", "the tail is rational")
    assert isinstance(pf.terminal, Truncated)
    return None, None  # bound hit


def _route_certificates(form: AlgebraicForm, max_cf_steps: int, max_power: int):
    """Search Pell-solution powers, signs, and off-diagonal orientations.

    Returns (period | None, structurally_exhausted: bool, detail).
    """
    fund = pell_fundamental(form.R, max_cf_steps)
    if fund is None:
        return None, False, "no Pell solution within max-steps bound"
    R, U, V = form.R, form.U, form.V
    failures_structural = True
    for k in range(1, max_power + 1):
        Xk, Yk = pell_power(fund, R, k)
        for tau in (1, -1):
            Y = Yk * tau
            try:
                Z = ((U * U - R) * Y).exact_div(V)
            except ValueError:
                failures_structural = False  # divisibility might appear at higher k
                continue
            for sigma in (1, -1):
                Xs, Ys, Zs = Xk * sigma, Y * sigma, Z * sigma
                t11, t22 = Xs - Ys * U, Xs + Ys * U
                for t12, t21 in ((Ys * V, -Zs), (-(Ys * V), Zs)):
                    T = ScaledMatrixPoly(((t11, t12), (t21, t22)), _ONE)
                    if not check_admissible(T).verdict:
                        continue
                    try:
                        period = reconstruct(T)
                    except (NotAdmissible, InconsistentScale):
                        continue
                    if _m_matches_form(period, form):
                        return period, False, f"certificate candidate k={k} accepted"
    return None, failures_structural, "certificate candidates exhausted"


def realize(
    form: AlgebraicForm, max_cf_steps: int = 64, max_power: int = 16
) -> RealizeReport:
    """Decide realizability of (sqrt(R) - U)/V as a periodic m-function.

    Route A searches monodromy candidates built from Pell solutions; route B
    expands the surd directly and is the independent oracle.  A structural
    expansion failure of route B (the expansion of a genuine m-function can
    never fail) yields NotRealizable; bounds produce Inconclusive, never a
    negative claim.
    """
    form = _canonicalize_form(form)
    period_b, obstruction_b = _route_direct(form, max_cf_steps)
    period_a, exhausted_a, detail_a = _route_certificates(form, max_cf_steps, max_power)

    period = period_b or period_a
    if period is not None:
        T = monodromy(period)
        cert = certificate_for_form(T, form)
        if not verify_certificate(form, cert):
            raise NonsquareObstruction("extracted certificate fails its identities")
        cross = (
            period_a is not None
            and period_b is not None
            and period_a.blocks == period_b.blocks
        )
        ok = _m_matches_form(period, form)
        if not ok:
            raise NonsquareObstruction(
                "m-function of the realized period does not match the form"
            )
        return RealizeReport(
            status=Realized(),
            canonical_form=form,
            period=period,
            T=T,
            certificate=cert,
            cross_check=cross,
            detail=detail_a if period_b is None else "direct expansion is periodic",
        )

    if obstruction_b is not None:
        reason, detail = obstruction_b
        note = detail_a if exhausted_a else f"certificate route: {detail_a}"
        return RealizeReport(
            status=NotRealizable(reason=reason),
            canonical_form=form,
            cross_check=exhausted_a,
            detail=f"{detail}; {note}",
        )

    return RealizeReport(
        status=Inconclusive(bound_hit=f"max_cf_steps={max_cf_steps}, max_power={max_power}"),
        canonical_form=form,
        detail=detail_a,
    )
