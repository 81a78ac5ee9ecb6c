"""Spectrum of the periodic operator and numeric m-function evaluation.

The essential spectrum is the preimage of [-2, 2] under the discriminant
(the trace of the monodromy matrix); eigenvalues sit at zeros of the
rescaled Phat_{s-1} subject to a strict modulus inequality.  The m-function
is the root of the scaled quadratic

    eps*beta*Phat_{s-1} m^2 + (Phat_s + eps*beta*Qhat_{s-1}) m + Qhat_s = 0

whose Floquet multiplier w = t21*m + t22 satisfies |w| > 1; this is the
unique branch decaying at infinity.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath
import numpy as np

from .errors import OnSpectrum, RootFindingFailure
from .exactpoly import Poly, ScaledPoly
from .jacobi import PeriodData
from .pfrac import recurrence


@dataclass(frozen=True)
class Discriminant:
    """Trace of the monodromy matrix as an exact scaled polynomial."""

    delta: ScaledPoly


@dataclass(frozen=True)
class Spectrum:
    band_endpoints: tuple[complex, ...]
    arcs: tuple[tuple[complex, ...], ...]
    eigenvalues: tuple[complex, ...]


def _period_polys(period: PeriodData):
    """(a, b, c, Ps, D): scaled quadratic coefficients and the scale."""
    rec = recurrence(list(period.blocks))
    s = period.s
    eps_beta = Fraction(period.blocks[-1].epsilon) * period.blocks[-1].beta
    a = eps_beta * rec.Phat[s - 1]
    b = rec.Phat[s] + eps_beta * rec.Qhat[s - 1]
    c = rec.Qhat[s]
    D = Fraction(1)
    for blk in period.blocks:
        D *= blk.beta
    return a, b, c, rec.Phat[s], eps_beta * rec.Qhat[s - 1], D


def discriminant(period: PeriodData) -> Discriminant:
    rec = recurrence(list(period.blocks))
    s = period.s
    eps_beta = Fraction(period.blocks[-1].epsilon) * period.blocks[-1].beta
    D = Fraction(1)
    for blk in period.blocks:
        D *= blk.beta
    return Discriminant(ScaledPoly(rec.Phat[s] - eps_beta * rec.Qhat[s - 1], D))


def _roots_refined(p: Poly, tol: float) -> list[complex]:
    """All complex roots of an exact polynomial, via simultaneous iteration.

    mpmath's polyroots on the exact coefficients, sorted deterministically.
    """
    if p.degree < 1:
        return []
    coeffs = [mpmath.mpf(c.numerator) / mpmath.mpf(c.denominator) for c in reversed(p.coeffs)]
    try:
        roots = mpmath.polyroots(coeffs, maxsteps=200, extraprec=120)
    except mpmath.libmp.libhyper.NoConvergence as exc:  # pragma: no cover
        raise RootFindingFailure(str(exc)) from exc
    out = [complex(r) for r in roots]
    scale = 1.0 + max(abs(z) for z in out)
    dp = p.derivative()
    for z in out:
        if abs(p(z)) > tol * max(1.0, abs(dp(z))) * scale:
            raise RootFindingFailure(f"root {z} did not converge to tolerance {tol}")
    return sorted(out, key=lambda z: (round(z.real, 12), round(z.imag, 12)))


def _chain_arcs(clouds: list[list[complex]], threshold: float) -> list[list[complex]]:
    """Greedy nearest-neighbor chaining of per-theta root clouds into arcs."""
    arcs: list[list[complex]] = []
    open_arcs: list[list[complex]] = []
    for cloud in clouds:
        cloud = sorted(cloud, key=lambda z: (z.real, z.imag))
        used = [False] * len(open_arcs)
        next_open: list[list[complex]] = []
        for z in cloud:
            best, best_d = None, threshold
            for i, arc in enumerate(open_arcs):
                if used[i]:
                    continue
                d = abs(arc[-1] - z)
                if d < best_d:
                    best, best_d = i, d
            if best is None:
                arc = [z]
            else:
                used[best] = True
                arc = open_arcs[best]
                arc.append(z)
            next_open.append(arc)
        for i, arc in enumerate(open_arcs):
            if not used[i]:
                arcs.append(arc)
        open_arcs = next_open
    arcs.extend(open_arcs)
    return arcs


def bands(period: PeriodData, grid: int = 512, tol: float = 1e-10) -> Spectrum:
    """Band endpoints, traced arcs, and eigenvalues of the periodic operator.

    Endpoints are the refined roots of the rational polynomial
    (trace numerator)^2 - 4D; arcs are traced by solving
    Delta(x) = 2 cos(theta) over a theta grid and chaining nearby roots;
    eigenvalues are roots z of Phat_{s-1} with
    |eps*beta*Qhat_{s-1}(z)| > |Phat_s(z)| (strict).
    """
    if grid < 2:
        raise ValueError("grid must be >= 2")
    a_poly, _b, _c, Ps, ebQ, D = _period_polys(period)
    trace_num = Ps - ebQ  # Delta = trace_num / sqrt(D)
    band_poly = trace_num * trace_num - Poly.const(4 * D)
    endpoints = _roots_refined(band_poly, tol)

    rec = recurrence(list(period.blocks))
    s = period.s
    eigenvalues = []
    ps_minus_1 = rec.Phat[s - 1]
    for z in _roots_refined(ps_minus_1, tol) if ps_minus_1.degree >= 1 else []:
        if abs(ebQ(z)) > abs(Ps(z)):
            eigenvalues.append(z)

    # trace the preimage of [-2, 2] under Delta
    float_coeffs = [float(c) for c in trace_num.coeffs]
    sqrt_d = math.sqrt(float(D))
    clouds = []
    for i in range(grid):
        theta = math.pi * i / (grid - 1)
        rhs = 2.0 * math.cos(theta) * sqrt_d
        cs = list(float_coeffs)
        cs[0] -= rhs
        roots = np.roots(list(reversed(cs)))
        clouds.append([complex(z) for z in roots])
    diameter = 1.0
    if endpoints:
        diameter = max(1.0, 2.0 * max(abs(z) for z in endpoints))
    threshold = 10.0 * diameter / grid * math.pi
    arcs = [tuple(arc) for arc in _chain_arcs(clouds, threshold) if len(arc) >= 2]

    return Spectrum(
        band_endpoints=tuple(endpoints),
        arcs=tuple(arcs),
        eigenvalues=tuple(eigenvalues),
    )


def m_eval(period: PeriodData, lam: complex, tol: float = 1e-10) -> complex:
    """Value of the m-function at a point off the spectrum.

    Solves the scaled quadratic and selects the root whose Floquet
    multiplier w = (eps*beta*Phat_{s-1}(lam) m + Phat_s(lam))/sqrt(D) has
    |w| > 1; points where both multipliers sit within ``tol`` of the unit
    circle are refused (OnSpectrum).  At zeros of Phat_{s-1} the quadratic
    degenerates and the linear root is returned (a documented path, not an
    error).  The returned root is polished so the relative residual of the
    quadratic is at most ``tol``.
    """
    a_poly, b_poly, c_poly, Ps, _ebQ, D = _period_polys(period)
    z = complex(lam)
    a, b, c = complex(a_poly(z)), complex(b_poly(z)), complex(c_poly(z))
    ps = complex(Ps(z))
    sqrt_d = math.sqrt(float(D))
    scale = max(abs(a), abs(b), abs(c), 1.0)

    if abs(a) <= 1e-14 * scale:
        # degenerate quadratic: one root escapes to infinity
        if abs(b) <= 1e-14 * scale:
            raise OnSpectrum("quadratic collapses entirely; evaluation refused")
        m = -c / b
        w = (a * m + ps) / sqrt_d
        if abs(w) <= 1.0 + tol:
            raise OnSpectrum(
                "finite root carries a non-expanding multiplier (eigenvalue or band)"
            )
        return m

    disc = b * b - 4.0 * a * c
    sq = cmath.sqrt(disc)
    if (b.conjugate() * sq).real < 0:
        sq = -sq
    q = -(b + sq) / 2.0
    if abs(q) <= 1e-300:
        roots = [cmath.sqrt(-c / a), -cmath.sqrt(-c / a)]
    else:
        roots = [q / a, c / q]

    def multiplier(m: complex) -> complex:
        return (a * m + ps) / sqrt_d

    ws = [multiplier(m) for m in roots]
    dist = [abs(abs(w) - 1.0) for w in ws]
    if max(dist) <= tol:
        raise OnSpectrum("both multipliers are on the unit circle within tolerance")
    m = roots[0] if abs(ws[0]) > abs(ws[1]) else roots[1]
    if abs(multiplier(m)) <= 1.0:
        raise OnSpectrum("no expanding multiplier; the point lies on the spectrum")

    # Newton polish on the quadratic
    for _ in range(3):
        f = (a * m + b) * m + c
        df = 2.0 * a * m + b
        if df == 0:
            break
        m -= f / df
    res_scale = max(abs(a) * abs(m) ** 2, abs(b) * abs(m), abs(c), 1.0)
    if abs((a * m + b) * m + c) > tol * res_scale:
        raise RootFindingFailure("quadratic residual did not reach tolerance")
    return m


def mfh2_residual(period: PeriodData, lam: complex, m: complex) -> float:
    """Relative residual of the quadratic at (lam, m)."""
    a_poly, b_poly, c_poly, _ps, _ebq, _d = _period_polys(period)
    z = complex(lam)
    a, b, c = complex(a_poly(z)), complex(b_poly(z)), complex(c_poly(z))
    scale = max(abs(a) * abs(m) ** 2, abs(b) * abs(m), abs(c), 1.0)
    return abs((a * m + b) * m + c) / scale
