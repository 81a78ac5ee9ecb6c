"""P-fraction expansion of function germs decaying at infinity.

One step rewrites a normalized tail phi as -1/phi = eps*p + beta*phi_next
with p monic, eps = +-1 and beta > 0, so that phi_next is again normalized
and decaying.  Tails are exact rational functions, quadratic surds
(a + b*sqrt(R))/d, or truncated moment series.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .errors import (
    NotExpandable,
    NotNormalized,
    PerfectSquareR,
    SeriesExhausted,
    InsufficientWindow,
)
from .exactpoly import (
    Poly,
    Rat,
    ScaledMatrixPoly,
    SeriesAtInfinity,
    as_rat,
    poly_sqrt,
    sqrt_series,
)

_ONE = Fraction(1)


@dataclass(frozen=True)
class PStep:
    """One partial quotient: monic p, sign eps, coupling beta = b**2 > 0."""

    p: Poly
    epsilon: int
    beta: Fraction

    def __post_init__(self):
        if self.epsilon not in (1, -1):
            raise ValueError("epsilon must be +1 or -1")
        object.__setattr__(self, "beta", as_rat(self.beta))
        if self.beta <= 0:
            raise ValueError("beta must be positive")
        if not self.p.is_monic() or self.p.degree < 1:
            raise ValueError("p must be monic of degree >= 1")


@dataclass(frozen=True)
class Terminated:
    kind = "terminated"


@dataclass(frozen=True)
class Periodic:
    period: int
    kind = "periodic"


@dataclass(frozen=True)
class PrePeriodic:
    start: int
    cycle_len: int
    kind = "preperiodic"


@dataclass(frozen=True)
class Truncated:
    kind = "truncated"


Terminal = Union[Terminated, Periodic, PrePeriodic, Truncated]


@dataclass(frozen=True)
class PFraction:
    steps: tuple[PStep, ...]
    terminal: Terminal


# ---------------------------------------------------------------------------
# tails


def _rat_gcd(*vals: Fraction) -> Fraction:
    import math

    num, den = 0, 1
    for v in vals:
        if v == 0:
            continue
        num = math.gcd(num, abs(v.numerator))
        den = den * v.denominator // math.gcd(den, v.denominator)
    return Fraction(num, den) if num else Fraction(0)


@dataclass(frozen=True)
class RationalTail:
    """num/den, canonicalized so gcd(num, den) is constant and den is monic."""

    num: Poly
    den: Poly

    def __post_init__(self):
        if self.den.is_zero():
            raise ValueError("zero denominator")
        num, den = self.num, self.den
        g = num.gcd(den)
        if g.degree >= 1:
            num, den = num.exact_div(g), den.exact_div(g)
        lead = den.lead
        if lead != 1:
            num, den = num / lead, den / lead
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def key(self):
        return ("rational", self.num.coeffs, self.den.coeffs)


@dataclass(frozen=True)
class SurdTail:
    """(a + b*sqrt(R))/d with b != 0 and R not a perfect square.

    Canonical form: a, b, d share no polynomial factor, the gcd of their
    rational contents is 1, and d has positive leading coefficient.
    """

    a: Poly
    b: Poly
    d: Poly
    R: Poly

    def __post_init__(self):
        if self.b.is_zero():
            raise ValueError("surd with b = 0 is a rational tail")
        if self.d.is_zero():
            raise ValueError("zero denominator")
        if poly_sqrt(self.R) is not None:
            raise PerfectSquareR("R is a perfect square; the tail is rational")
        a, b, d = self.a, self.b, self.d
        g = a.gcd(b).gcd(d)
        if g.degree >= 1:
            a, b, d = a.exact_div(g), b.exact_div(g), d.exact_div(g)
        c = _rat_gcd(a.content(), b.content(), d.content())
        if c not in (0, 1):
            a, b, d = a / c, b / c, d / c
        if d.lead < 0:
            a, b, d = -a, -b, -d
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "d", d)

    def is_zero(self) -> bool:
        return False

    def key(self):
        return ("surd", self.a.coeffs, self.b.coeffs, self.d.coeffs, self.R.coeffs)

    def neg_reciprocal(self) -> "SurdTail":
        # -1/((a+b*sqrt(R))/d) = (-d*a + d*b*sqrt(R)) / (a^2 - b^2 R)
        norm = self.a * self.a - self.b * self.b * self.R
        return SurdTail(-self.d * self.a, self.d * self.b, norm, self.R)

    def sub_poly(self, q: Poly) -> "SurdTail":
        return SurdTail(self.a - q * self.d, self.b, self.d, self.R)

    def div_scalar(self, c: Fraction) -> "SurdTail":
        return SurdTail(self.a, self.b, self.d * c, self.R)

    def valuation_floor(self) -> int:
        """Lower bound for the exponent of the first nonzero series term."""
        norm = self.a * self.a - self.b * self.b * self.R
        n = self.R.degree // 2
        top_num = max(self.a.degree, self.b.degree + n)
        return norm.degree - top_num - self.d.degree

    def to_series(self, down_to: int) -> SeriesAtInfinity:
        """Exact germ of the tail with window reaching the exponent down_to."""
        n = self.R.degree // 2
        terms = self.b.degree + n + 1 + self.d.degree - down_to + 2
        s = sqrt_series(self.R, max(terms, 1))
        num = s.mul_poly(self.b).add_poly(self.a)
        return num.div_poly(self.d)

    def leading(self) -> tuple[int, Fraction]:
        floor = self.valuation_floor()
        lead = self.to_series(floor).leading()
        if lead is None:
            raise AssertionError("a genuine surd cannot vanish identically")
        return lead


@dataclass(frozen=True)
class SeriesTail:
    series: SeriesAtInfinity

    def is_zero(self) -> bool:
        return self.series.is_zero_to_cutoff()

    def key(self):
        return ("series", self.series.top_degree, self.series.coeffs)


Tail = Union[RationalTail, SurdTail, SeriesTail]

_END = None


def step(tail: Tail) -> tuple[PStep, Optional[Tail]]:
    """One P-fraction step; the second element is None when the tail ends.

    Raises NotExpandable / NotNormalized / SeriesExhausted per the tail's
    structure.  The ending step carries beta = 1 (the value is irrelevant).
    """
    if isinstance(tail, RationalTail):
        return _step_rational(tail)
    if isinstance(tail, SurdTail):
        return _step_surd(tail)
    if isinstance(tail, SeriesTail):
        return _step_series(tail)
    raise TypeError(f"not a tail: {tail!r}")


def _check_leading(exponent: int, coeff: Fraction) -> None:
    if exponent >= 0:
        raise NotExpandable("tail does not decay at infinity")
    if abs(coeff) != 1:
        raise NotNormalized(
            f"first nonvanishing moment has modulus {abs(coeff)}, expected 1"
        )


def _split_quotient(q: Poly) -> tuple[int, Poly]:
    if q.degree < 1 or q.lead not in (1, -1):
        raise NotExpandable(
            "polynomial part of -1/tail is not plus or minus a monic polynomial"
        )
    eps = 1 if q.lead == 1 else -1
    return eps, q * eps


def _step_rational(tail: RationalTail) -> tuple[PStep, Optional[Tail]]:
    if tail.is_zero():
        raise NotExpandable("zero tail")
    num, den = tail.num, tail.den
    if num.degree >= den.degree:
        raise NotExpandable("tail does not decay at infinity")
    # den is monic, so the germ of num/den leads with lead(num) at x^(deg num - deg den)
    _check_leading(num.degree - den.degree, num.lead)
    q, r = (-den).divmod(num)
    eps, p = _split_quotient(q)
    if r.is_zero():
        return PStep(p, eps, _ONE), _END
    # remainder tail r/num has leading coefficient lead(r)/lead(num)
    beta = abs(r.lead / num.lead)
    return PStep(p, eps, beta), RationalTail(r / beta, num)


def _step_surd(tail: SurdTail) -> tuple[PStep, Optional[Tail]]:
    _check_leading(*tail.leading())
    w = tail.neg_reciprocal()
    q = w.to_series(0).poly_part()
    eps, p = _split_quotient(q)
    rem = w.sub_poly(q)
    exponent, coeff = rem.leading()
    if exponent >= 0:
        raise AssertionError("remainder of a P-fraction step must decay")
    beta = abs(coeff)
    return PStep(p, eps, beta), rem.div_scalar(beta)


def _step_series(tail: SeriesTail) -> tuple[PStep, Optional[Tail]]:
    s = tail.series
    if s.is_zero_to_cutoff():
        raise SeriesExhausted(
            "series tail is zero to its cutoff; cannot certify a step"
        )
    exponent, coeff = s.leading()
    _check_leading(exponent, coeff)
    try:
        w = -s.reciprocal()
        q = w.poly_part()
    except InsufficientWindow as exc:
        raise SeriesExhausted(str(exc)) from exc
    eps, p = _split_quotient(q)
    rem = w.sub_poly(q)
    if rem.is_zero_to_cutoff():
        raise SeriesExhausted(
            "too few coefficients to certify beta and the next tail"
        )
    _, coeff = rem.leading()
    beta = abs(coeff)
    return PStep(p, eps, beta), SeriesTail(rem.scale(1 / beta))


def expand(tail: Tail, max_steps: int) -> PFraction:
    """Iterate :func:`step`; detect exact periodicity for surd tails.

    Rational tails always terminate; surd tails are compared (in canonical
    form) against all earlier tails, distinguishing a pure return to the
    start (Periodic) from a later cycle (PrePeriodic).  After max_steps the
    expansion is reported Truncated.
    """
    if max_steps < 1:
        raise ValueError("max_steps must be >= 1")
    track = isinstance(tail, SurdTail)
    seen: dict = {}
    if track:
        seen[tail.key()] = 0
    steps: list[PStep] = []
    cur: Optional[Tail] = tail
    for i in range(1, max_steps + 1):
        st, nxt = step(cur)
        steps.append(st)
        if nxt is _END:
            return PFraction(tuple(steps), Terminated())
        if track:
            k = nxt.key()
            if k in seen:
                j = seen[k]
                if j == 0:
                    return PFraction(tuple(steps), Periodic(period=i))
                return PFraction(tuple(steps), PrePeriodic(start=j, cycle_len=i - j))
            seen[k] = i
        cur = nxt
    return PFraction(tuple(steps), Truncated())


# ---------------------------------------------------------------------------
# transfer matrices and the three-term recurrence


def transfer_matrix(step_: PStep) -> ScaledMatrixPoly:
    """W = [[0, -eps], [eps*beta, p]] / sqrt(beta); det equals the scale."""
    eps, beta = step_.epsilon, step_.beta
    rows = (
        (Poly.zero(), Poly.const(-eps)),
        (Poly.const(eps * beta), step_.p),
    )
    return ScaledMatrixPoly(rows, beta)


def product(ms: list[ScaledMatrixPoly]) -> ScaledMatrixPoly:
    """Left-to-right product; matrix parts multiply and scales multiply."""
    if not ms:
        raise ValueError("empty product")
    out = ms[0]
    for m in ms[1:]:
        out = out @ m
    return out


@dataclass(frozen=True)
class RecurrencePair:
    """Rescaled solutions Phat, Qhat of the three-term difference equation.

    Phat[0] = 1, Phat[1] = p_0, Qhat[0] = 0, Qhat[1] = eps_0, and
    u[j+1] = p_j u[j] - eps_{j-1} eps_j beta_{j-1} u[j-1].  Dividing
    Phat[j] by sqrt(beta_0 ... beta_{j-1}) recovers the unscaled solution.
    """

    Phat: tuple[Poly, ...]
    Qhat: tuple[Poly, ...]


def recurrence(steps: list[PStep]) -> RecurrencePair:
    if not steps:
        raise ValueError("empty step list")
    P = [Poly.one(), steps[0].p]
    Q = [Poly.zero(), Poly.const(steps[0].epsilon)]
    for j in range(1, len(steps)):
        c = steps[j - 1].epsilon * steps[j].epsilon * steps[j - 1].beta
        P.append(steps[j].p * P[j] - c * P[j - 1])
        Q.append(steps[j].p * Q[j] - c * Q[j - 1])
    return RecurrencePair(tuple(P), tuple(Q))


def solution_matrix(steps: list[PStep]) -> ScaledMatrixPoly:
    """The closed form of the transfer product built from the recurrence."""
    rec = recurrence(steps)
    s = len(steps)
    eps, beta = steps[-1].epsilon, steps[-1].beta
    rows = (
        (-(eps * beta) * rec.Qhat[s - 1], -rec.Qhat[s]),
        ((eps * beta) * rec.Phat[s - 1], rec.Phat[s]),
    )
    scale = _ONE
    for st in steps:
        scale *= st.beta
    return ScaledMatrixPoly(rows, scale)


# ---------------------------------------------------------------------------
# moments of the function represented by a (cyclically repeated) step list


def _riccati_back(step_: PStep, m: SeriesAtInfinity, floor: int) -> SeriesAtInfinity:
    den = SeriesAtInfinity.from_poly(step_.p, m.cutoff) + m.scale(
        step_.epsilon * step_.beta
    )
    return den.reciprocal().scale(-step_.epsilon).trim(floor)


def to_series(steps: list[PStep], n_moments: int) -> list[Rat]:
    """First moments s_j of the function encoded by cycling the step list.

    The tail approximation starts at exactly zero and each backward pass
    through the period doubles the certified window by the period degree,
    so the returned moments are exact.
    """
    if not steps:
        raise ValueError("empty step list")
    if n_moments < 1:
        return []
    floor = -(n_moments + 1)
    m = SeriesAtInfinity.zero(0)
    while m.cutoff > -n_moments:
        for st in reversed(steps):
            m = _riccati_back(st, m, floor)
    return [-m.coefficient(-j - 1) for j in range(n_moments)]


def series_tail(moments: list) -> SeriesTail:
    """Tail carrying -sum s_j x^(-j-1) with the supplied moments."""
    cs = [-as_rat(s) for s in moments]
    return SeriesTail(SeriesAtInfinity(-1, cs))
