"""Monodromy matrices of periodic blocks and the two inverse directions.

The monodromy over one period is the product of the per-block transfer
matrices, kept in scaled rational form (M, D) with T = M/sqrt(D) and
det M = D.  ``reconstruct`` inverts the map for admissible matrices;
``algebraic_form`` extracts the triple (R, U, V) with its Pell certificate
(X, Y, Z) from the half-trace.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    DegenerateTrace,
    InconsistentScale,
    NonsquareObstruction,
    NotAdmissible,
    NotExpandable,
)
from .exactpoly import Poly, ScaledMatrixPoly, rat_sqrt
from .jacobi import PeriodData
from .pfrac import (
    PStep,
    RationalTail,
    Terminated,
    expand,
    recurrence,
    transfer_matrix,
)

_ONE = Fraction(1)

# constant matrix of the J-unitarity identity M J' M^T = det(M) J'
J_PRIME = (
    (Poly.zero(), Poly.const(-1)),
    (Poly.one(), Poly.zero()),
)


def monodromy(period: PeriodData) -> ScaledMatrixPoly:
    """Transfer-matrix product over one period; scale is the product of betas."""
    out = transfer_matrix(period.blocks[0])
    for blk in period.blocks[1:]:
        out = out @ transfer_matrix(blk)
    return out


def j_unitarity_holds(T: ScaledMatrixPoly) -> bool:
    """Exact check of M J' M^T = det(M) J' (always true for 2x2 matrices)."""
    m = T.m
    det = T.det_poly()
    # (M J' M^T)_{01} = -det, _{10} = det, diagonal zero
    a01 = m[0][0] * m[1][1] - m[0][1] * m[1][0]
    a00 = m[0][0] * m[0][1] - m[0][1] * m[0][0]
    a11 = m[1][0] * m[1][1] - m[1][1] * m[1][0]
    return a00.is_zero() and a11.is_zero() and a01 == det


@dataclass(frozen=True)
class AdmissibilityReport:
    det_one: bool
    degrees_ok: bool
    lead_t22_positive: bool
    strict_leading_equality: bool
    expandable: bool
    verdict: bool


def check_admissible(T: ScaledMatrixPoly) -> AdmissibilityReport:
    """Flags for the admissibility conditions of a scaled 2x2 matrix polynomial.

    The verdict uses the operational expandability of t12/t22 rather than the
    literal leading-coefficient equality, which is computed and reported
    separately (a 1-periodic matrix with beta != 1 violates the equality yet
    reconstructs perfectly).
    """
    m = T.m
    det_one = T.det_poly() == Poly.const(T.scale)
    t12, t21, t22 = m[0][1], m[1][0], m[1][1]
    degrees_ok = (not t22.is_zero()) and t12.degree < t22.degree and t21.degree < t22.degree
    lead_t22_positive = t22.lead > 0
    strict_leading_equality = abs(t21.lead) == abs(t22.lead)
    expandable = False
    if degrees_ok and not t12.is_zero():
        try:
            pf = expand(RationalTail(t12, t22), max_steps=t22.degree + 1)
            expandable = isinstance(pf.terminal, Terminated)
        except NotExpandable:
            expandable = False
    verdict = det_one and degrees_ok and lead_t22_positive and expandable
    return AdmissibilityReport(
        det_one=det_one,
        degrees_ok=degrees_ok,
        lead_t22_positive=lead_t22_positive,
        strict_leading_equality=strict_leading_equality,
        expandable=expandable,
        verdict=verdict,
    )


def reconstruct(T: ScaledMatrixPoly) -> PeriodData:
    """Period whose monodromy equals T (unique for admissible matrices).

    Expands t12/t22 into a terminating P-fraction to recover the blocks and
    all couplings but the last, then fixes the last beta by matching scales;
    the round trip monodromy(result) == T is verified exactly.
    """
    report = check_admissible(T)
    if not report.verdict:
        raise NotAdmissible(f"matrix fails admissibility: {report}")
    m = T.m
    pf = expand(RationalTail(m[0][1], m[1][1]), max_steps=m[1][1].degree + 1)
    steps = list(pf.steps)
    c = m[1][1].lead
    scale_needed = T.scale / (c * c)
    prod = _ONE
    for st in steps[:-1]:
        prod *= st.beta
    beta_last = scale_needed / prod
    if beta_last <= 0:
        raise InconsistentScale("no positive final beta matches the scale")
    steps[-1] = PStep(steps[-1].p, steps[-1].epsilon, beta_last)
    period = PeriodData(tuple(steps))
    if monodromy(period) != T:
        raise InconsistentScale(
            "expansion does not reproduce the matrix for any positive final beta"
        )
    return period


@dataclass(frozen=True)
class AlgebraicForm:
    """Triple (R, U, V): R of degree 2n (not a perfect square), U of degree n,
    V nonzero of degree < n, representing (sqrt(R) - U)/V."""

    R: Poly
    U: Poly
    V: Poly


@dataclass(frozen=True)
class PellCertificate:
    """Witness (X, Y, Z) with X^2 - R Y^2 = sqrt_scale and (U^2-R) Y = V Z.

    Dividing X, Y, Z by sqrt(sqrt_scale) recovers the unit-normalized
    identities; the stored polynomials are rational.
    """

    X: Poly
    Y: Poly
    Z: Poly
    sqrt_scale: Fraction = _ONE


def algebraic_form(T: ScaledMatrixPoly) -> tuple[AlgebraicForm, PellCertificate]:
    """Extract (R, U, V) and (X, Y, Z) from an admissible matrix.

    X is the half-trace; the squarefree split of X^2 - scale yields R
    (normalized monic) and Y up to sign, the sign being fixed so that the
    leading coefficient of U is positive.  All divisions must be exact,
    otherwise the matrix is not of periodic-m-function type.
    """
    report = check_admissible(T)
    if not report.verdict:
        raise NotAdmissible(f"matrix fails admissibility: {report}")
    m = T.m
    trace = m[0][0] + m[1][1]
    if trace.degree < 1:
        raise DegenerateTrace("constant trace admits no algebraic form")
    X = trace / 2
    W = X * X - Poly.const(T.scale)
    from .exactpoly import squarefree_split

    core, sq = squarefree_split(W)
    if core.is_constant():
        raise NonsquareObstruction("x^2 - scale is a perfect square up to a constant")
    lead_root = rat_sqrt(core.lead)
    if lead_root is None:
        raise NonsquareObstruction(
            "squarefree core has a non-square leading coefficient"
        )
    R = core / (lead_root * lead_root)
    Y = sq * lead_root
    diff_half = (m[1][1] - m[0][0]) / 2
    try:
        U = diff_half.exact_div(Y)
    except ValueError as exc:
        raise NonsquareObstruction(
            "half-difference of the diagonal is not divisible by Y"
        ) from exc
    if U.lead < 0:
        Y, U = -Y, -U
    try:
        V = m[0][1].exact_div(Y)
    except ValueError as exc:
        raise NonsquareObstruction("t12 is not divisible by Y") from exc
    Z = -m[1][0]
    cert = PellCertificate(X=X, Y=Y, Z=Z, sqrt_scale=T.scale)
    form = AlgebraicForm(R=R, U=U, V=V)
    if X * X - R * Y * Y != Poly.const(T.scale):
        raise NonsquareObstruction("certificate identity X^2 - R Y^2 = scale fails")
    if (U * U - R) * Y != V * Z:
        raise NonsquareObstruction("certificate identity (U^2 - R) Y = V Z fails")
    return form, cert


def solution_matrix_of(period: PeriodData) -> ScaledMatrixPoly:
    """Monodromy in recurrence form (cross-check against the product form)."""
    rec = recurrence(list(period.blocks))
    s = period.s
    eps, beta = period.blocks[-1].epsilon, period.blocks[-1].beta
    scale = _ONE
    for blk in period.blocks:
        scale *= blk.beta
    rows = (
        (-(eps * beta) * rec.Qhat[s - 1], -rec.Qhat[s]),
        ((eps * beta) * rec.Phat[s - 1], rec.Phat[s]),
    )
    return ScaledMatrixPoly(rows, scale)
