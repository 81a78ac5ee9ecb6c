"""Exact rational scalars, dense polynomials, and Laurent series at infinity.

Coefficients live in Q throughout (``fractions.Fraction``); square roots of
positive rationals are never evaluated numerically but carried symbolically
as scale factors (:class:`ScaledPoly`, :class:`ScaledMatrixPoly`).
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import (
    DivisionByZeroPoly,
    InsufficientWindow,
    LeadingCoeffNotSquare,
    OddDegree,
    ZeroPolynomial,
)

Rat = Fraction

_ZERO = Fraction(0)
_ONE = Fraction(1)


def as_rat(x) -> Fraction:
    """Coerce ints / strings like ``-3/4`` to an exact rational."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.replace("−", "-").strip())
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def rat_sqrt(q: Fraction) -> Optional[Fraction]:
    """Exact square root of a nonnegative rational, or None if irrational."""
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def squarefree_int(n: int) -> tuple[int, int]:
    """Write ``n = f * g**2`` with f squarefree; returns ``(f, g)``. n >= 1."""
    f, g = 1, 1
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            if e % 2:
                f *= d
            g *= d ** (e // 2)
        d += 1 if d == 2 else 2
    return f * n, g


def reduce_sqrt(q: Fraction) -> tuple[Fraction, int]:
    """Write ``sqrt(q) = r * sqrt(f)`` with r rational > 0 and f squarefree.

    q must be a positive rational; returns ``(r, f)``.
    """
    if q <= 0:
        raise ValueError("scale must be positive")
    a, b = q.numerator, q.denominator
    f, g = squarefree_int(a * b)
    return Fraction(g, b), f


class Poly:
    """Dense polynomial over Q, coefficients ascending, no trailing zeros."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [as_rat(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, *a):
        raise AttributeError("Poly is immutable")

    # -- constructors -------------------------------------------------------

    @staticmethod
    def zero() -> "Poly":
        return Poly()

    @staticmethod
    def one() -> "Poly":
        return Poly([1])

    @staticmethod
    def x() -> "Poly":
        return Poly([0, 1])

    @staticmethod
    def const(c) -> "Poly":
        return Poly([as_rat(c)])

    @staticmethod
    def monomial(c, k: int) -> "Poly":
        return Poly([_ZERO] * k + [as_rat(c)])

    # -- basic queries -------------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else _ZERO

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def coefficient(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else _ZERO

    # -- ring operations -----------------------------------------------------

    def __add__(self, other: "Poly") -> "Poly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly(out)

    def __neg__(self) -> "Poly":
        return Poly([-c for c in self.coeffs])

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Poly):
            if not self.coeffs or not other.coeffs:
                return Poly()
            out = [_ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
            for i, a in enumerate(self.coeffs):
                if a:
                    for j, b in enumerate(other.coeffs):
                        out[i + j] += a * b
            return Poly(out)
        c = as_rat(other)
        return Poly([c * a for a in self.coeffs])

    __rmul__ = __mul__

    def __truediv__(self, scalar) -> "Poly":
        c = as_rat(scalar)
        if c == 0:
            raise ZeroDivisionError("division of polynomial by zero scalar")
        return Poly([a / c for a in self.coeffs])

    def __pow__(self, k: int) -> "Poly":
        out = Poly.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        """Exact Euclidean division: self = other*q + r with deg r < deg other."""
        if other.is_zero():
            raise DivisionByZeroPoly("polynomial division by zero")
        r = list(self.coeffs)
        db, lb = other.degree, other.lead
        q = [_ZERO] * max(len(r) - db, 0)
        while len(r) - 1 >= db and r:
            k = len(r) - 1 - db
            f = r[-1] / lb
            q[k] = f
            for i, c in enumerate(other.coeffs):
                r[k + i] -= f * c
            while r and r[-1] == 0:
                r.pop()
        return Poly(q), Poly(r)

    def __floordiv__(self, other: "Poly") -> "Poly":
        return self.divmod(other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return self.divmod(other)[1]

    def exact_div(self, other: "Poly") -> "Poly":
        """Division known to be exact; raises ValueError on nonzero remainder."""
        q, r = self.divmod(other)
        if not r.is_zero():
            raise ValueError("exact polynomial division has nonzero remainder")
        return q

    def gcd(self, other: "Poly") -> "Poly":
        """Monic gcd (constant 1 when coprime; zero only if both are zero)."""
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        if a.is_zero():
            return a
        return a / a.lead

    def derivative(self) -> "Poly":
        return Poly([i * c for i, c in enumerate(self.coeffs)][1:])

    def content(self) -> Fraction:
        """Positive rational content (0 for the zero polynomial)."""
        if not self.coeffs:
            return _ZERO
        num = 0
        den = 1
        for c in self.coeffs:
            num = math.gcd(num, c.numerator)
            den = den * c.denominator // math.gcd(den, c.denominator)
        return Fraction(num, den)

    def __call__(self, x):
        """Horner evaluation; works for Fraction, float, complex, mpmath."""
        out = 0 * x
        for c in reversed(self.coeffs):
            out = out * x + c
        return out

    # -- misc ---------------------------------------------------------------

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        if not self.coeffs:
            return "Poly(0)"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            elif i == 1:
                terms.append(f"{c}*x" if c != 1 else "x")
            else:
                terms.append(f"{c}*x^{i}" if c != 1 else f"x^{i}")
        return "Poly(" + " + ".join(reversed(terms)) + ")"


def poly_divmod(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    """Module-level spelling of exact Euclidean division."""
    return a.divmod(b)


def poly_sqrt(p: Poly) -> Optional[Poly]:
    """Exact polynomial square root with positive leading coefficient, or None."""
    if p.is_zero():
        return Poly.zero()
    if p.degree % 2:
        return None
    lead = rat_sqrt(p.lead)
    if lead is None:
        return None
    n = p.degree // 2
    s = [_ZERO] * (n + 1)
    s[n] = lead
    for k in range(n - 1, -1, -1):
        acc = p.coefficient(k + n)
        for i in range(k + 1, n):
            j = k + n - i
            if k + 1 <= j <= n:
                acc -= s[i] * s[j]
        s[k] = acc / (2 * lead)
    cand = Poly(s)
    return cand if cand * cand == p else None


class SeriesAtInfinity:
    """Truncated Laurent series at infinity.

    ``coeffs[0]`` is the coefficient of ``x**top_degree``; stored powers run
    down to the cutoff ``top_degree - len(coeffs) + 1``.  Everything above
    ``top_degree`` is exactly zero; everything below the cutoff is unknown.
    The leading stored coefficient is nonzero unless the series is
    identically zero down to its cutoff (then ``coeffs`` is empty and
    ``top_degree == cutoff - 1``).
    """

    __slots__ = ("top_degree", "coeffs")

    def __init__(self, top_degree: int, coeffs: Sequence):
        cs = [as_rat(c) for c in coeffs]
        while cs and cs[0] == 0:
            cs.pop(0)
            top_degree -= 1
        object.__setattr__(self, "top_degree", top_degree)
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, *a):
        raise AttributeError("SeriesAtInfinity is immutable")

    @staticmethod
    def zero(cutoff: int) -> "SeriesAtInfinity":
        return SeriesAtInfinity(cutoff - 1, ())

    @staticmethod
    def from_poly(p: Poly, cutoff: int) -> "SeriesAtInfinity":
        top = p.degree if not p.is_zero() else cutoff - 1
        if p.is_zero():
            return SeriesAtInfinity.zero(cutoff)
        cs = [p.coefficient(k) for k in range(top, cutoff - 1, -1)]
        return SeriesAtInfinity(top, cs)

    @property
    def cutoff(self) -> int:
        """Lowest exponent whose coefficient is known."""
        return self.top_degree - len(self.coeffs) + 1

    def is_zero_to_cutoff(self) -> bool:
        return not self.coeffs

    def coefficient(self, k: int) -> Fraction:
        if k > self.top_degree:
            return _ZERO
        if k < self.cutoff:
            raise InsufficientWindow(f"coefficient of x^{k} is below the cutoff")
        return self.coeffs[self.top_degree - k]

    def leading(self) -> Optional[tuple[int, Fraction]]:
        """(exponent, coefficient) of the first nonzero term, or None."""
        if not self.coeffs:
            return None
        return self.top_degree, self.coeffs[0]

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other: "SeriesAtInfinity") -> "SeriesAtInfinity":
        cut = max(self.cutoff, other.cutoff)
        top = max(self.top_degree, other.top_degree)
        if top < cut:
            return SeriesAtInfinity.zero(cut)
        cs = [self.coefficient(k) + other.coefficient(k) for k in range(top, cut - 1, -1)]
        return SeriesAtInfinity(top, cs)

    def __neg__(self) -> "SeriesAtInfinity":
        return SeriesAtInfinity(self.top_degree, [-c for c in self.coeffs])

    def __sub__(self, other: "SeriesAtInfinity") -> "SeriesAtInfinity":
        return self + (-other)

    def scale(self, c) -> "SeriesAtInfinity":
        c = as_rat(c)
        if c == 0:
            return SeriesAtInfinity.zero(self.cutoff)
        return SeriesAtInfinity(self.top_degree, [c * a for a in self.coeffs])

    def add_poly(self, p: Poly) -> "SeriesAtInfinity":
        return self + SeriesAtInfinity.from_poly(p, self.cutoff)

    def sub_poly(self, p: Poly) -> "SeriesAtInfinity":
        return self + SeriesAtInfinity.from_poly(-p, self.cutoff)

    def __mul__(self, other: "SeriesAtInfinity") -> "SeriesAtInfinity":
        cut = max(self.top_degree + other.cutoff, other.top_degree + self.cutoff)
        top = self.top_degree + other.top_degree
        if not self.coeffs or not other.coeffs:
            return SeriesAtInfinity.zero(cut)
        if top < cut:
            return SeriesAtInfinity.zero(cut)
        out = [_ZERO] * (top - cut + 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            ea = self.top_degree - i
            for j, b in enumerate(other.coeffs):
                e = ea + (other.top_degree - j)
                if e < cut:
                    break
                out[top - e] += a * b
        return SeriesAtInfinity(top, out)

    def mul_poly(self, p: Poly) -> "SeriesAtInfinity":
        # exact factor: relative window is preserved
        if p.is_zero():
            return SeriesAtInfinity.zero(self.cutoff + 0)
        cut = self.cutoff + p.degree
        top = self.top_degree + p.degree
        out = [_ZERO] * (top - cut + 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            ea = self.top_degree - i
            for k, b in enumerate(p.coeffs):
                e = ea + k
                if e >= cut:
                    out[top - e] += a * b
        return SeriesAtInfinity(top, out)

    def reciprocal(self) -> "SeriesAtInfinity":
        """1/self; the known window shrinks from [c, t] to [c - 2t, -t]."""
        if not self.coeffs:
            raise InsufficientWindow("cannot invert a series with no known nonzero term")
        t = self.top_degree
        a = self.coeffs
        n = len(a)
        g = [_ZERO] * n
        g[0] = 1 / a[0]
        for m in range(1, n):
            acc = _ZERO
            for i in range(1, m + 1):
                acc += a[i] * g[m - i]
            g[m] = -acc / a[0]
        return SeriesAtInfinity(-t, g)

    def div_poly(self, p: Poly) -> "SeriesAtInfinity":
        """self / p for an exact polynomial divisor (window shifts by deg p)."""
        if p.is_zero():
            raise DivisionByZeroPoly("series division by the zero polynomial")
        dp, lp = p.degree, p.lead
        cut = self.cutoff - dp
        top = self.top_degree - dp
        if not self.coeffs:
            return SeriesAtInfinity.zero(cut)
        rem = {self.top_degree - i: c for i, c in enumerate(self.coeffs)}
        out = []
        for e in range(top, cut - 1, -1):
            c = rem.get(e + dp, _ZERO) / lp
            out.append(c)
            if c:
                for k in range(dp):
                    key = e + k
                    if key >= self.cutoff:
                        rem[key] = rem.get(key, _ZERO) - c * p.coefficient(k)
        return SeriesAtInfinity(top, out)

    # -- structure ------------------------------------------------------------

    def poly_part(self) -> Poly:
        """Polynomial part (coefficients of nonnegative powers).

        Raises InsufficientWindow when the window does not reach x^0.
        """
        if self.top_degree < 0:
            return Poly.zero()
        if self.cutoff > 0:
            raise InsufficientWindow("window does not reach the constant term")
        return Poly([self.coefficient(k) for k in range(0, self.top_degree + 1)])

    def tail_part(self) -> "SeriesAtInfinity":
        """Strictly negative-power part; window unchanged below -1."""
        if self.top_degree < 0:
            return self
        cs = [self.coefficient(k) for k in range(-1, self.cutoff - 1, -1)]
        return SeriesAtInfinity(-1, cs)

    def trim(self, floor: int) -> "SeriesAtInfinity":
        """Forget coefficients below ``floor`` (weakens the window)."""
        if self.cutoff >= floor:
            return self
        if self.top_degree < floor:
            return SeriesAtInfinity.zero(floor)
        return SeriesAtInfinity(
            self.top_degree,
            self.coeffs[: self.top_degree - floor + 1],
        )

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SeriesAtInfinity)
            and self.top_degree == other.top_degree
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.top_degree, self.coeffs))

    def __repr__(self):
        ts = ", ".join(
            f"{c}*x^{self.top_degree - i}" for i, c in enumerate(self.coeffs) if c
        )
        return f"SeriesAtInfinity[{ts or '0'}; cutoff={self.cutoff}]"


def sqrt_series(R: Poly, terms: int) -> SeriesAtInfinity:
    """Branch of sqrt(R) at infinity with positive leading coefficient.

    R must have even degree 2n and a leading coefficient that is the square
    of a positive rational.  The result has top degree n and ``terms`` stored
    coefficients; squaring it reproduces R on every computed coefficient.
    """
    if R.is_zero():
        raise ZeroPolynomial("sqrt_series of the zero polynomial")
    if R.degree % 2:
        raise OddDegree(f"degree {R.degree} is odd; no square-root germ at infinity")
    lead = rat_sqrt(R.lead)
    if lead is None or lead == 0:
        raise LeadingCoeffNotSquare(
            "leading coefficient is not the square of a positive rational; "
            "coefficients stay in Q, the quadratic extension is not implemented"
        )
    if terms < 1:
        raise ValueError("terms must be >= 1")
    n = R.degree // 2
    s = [_ZERO] * terms  # s[i] is the coefficient of x^(n - i)
    s[0] = lead
    for i in range(1, terms):
        # coefficient of x^(2n - i) in S^2 must match R
        acc = R.coefficient(2 * n - i)
        for a in range(1, i):
            acc -= s[a] * s[i - a]
        s[i] = acc / (2 * lead)
    return SeriesAtInfinity(n, s)


def squarefree_split(p: Poly) -> tuple[Poly, Poly]:
    """Write ``p = core * square_part**2`` with core squarefree.

    ``square_part`` is monic, so core carries the leading coefficient of p.
    """
    if p.is_zero():
        raise ZeroPolynomial("squarefree_split of the zero polynomial")
    if p.is_constant():
        return p, Poly.one()
    g = p.gcd(p.derivative())
    if g.is_constant():
        return p, Poly.one()
    radical = p.exact_div(g)
    # g is monic, so core_g comes back monic as well
    core_g, sq_g = squarefree_split(g)
    # p = radical * g = (radical / core_g) * (core_g * sq_g)^2
    return radical.exact_div(core_g), core_g * sq_g


def hankel_det(s: Sequence[Fraction], n: int) -> Fraction:
    """Exact determinant of the n x n Hankel matrix (s[i+k])."""
    m = [[as_rat(s[i + k]) for k in range(n)] for i in range(n)]
    det = _ONE
    for col in range(n):
        piv = None
        for row in range(col, n):
            if m[row][col] != 0:
                piv = row
                break
        if piv is None:
            return _ZERO
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        det *= m[col][col]
        inv = 1 / m[col][col]
        for row in range(col + 1, n):
            f = m[row][col] * inv
            if f:
                for j in range(col, n):
                    m[row][j] -= f * m[col][j]
    return det


def normal_indices(s: Sequence, limit: int) -> list[int]:
    """Indices n <= limit with nonzero n x n Hankel determinant of the moments.

    Testing index n consumes moments s_0 .. s_{2n-2}; indices whose Hankel
    matrix would reach past the supplied moments are not reported.
    """
    ms = [as_rat(x) for x in s]
    out = []
    for n in range(1, limit + 1):
        if 2 * n - 1 > len(ms):
            break
        if hankel_det(ms, n) != 0:
            out.append(n)
    return out


class ScaledPoly:
    """A polynomial divided by the square root of a positive rational.

    Canonical form: the scale is a squarefree positive integer (square
    rational factors are absorbed into the polynomial).
    """

    __slots__ = ("poly", "sqrt_scale")

    def __init__(self, poly: Poly, sqrt_scale=1):
        q = as_rat(sqrt_scale)
        r, f = reduce_sqrt(q)
        # poly / sqrt(q) = (poly / r) / sqrt(f)
        object.__setattr__(self, "poly", poly / r if r != 1 else poly)
        object.__setattr__(self, "sqrt_scale", Fraction(f))

    def __setattr__(self, *a):
        raise AttributeError("ScaledPoly is immutable")

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ScaledPoly)
            and self.poly == other.poly
            and self.sqrt_scale == other.sqrt_scale
        )

    def __hash__(self):
        return hash((self.poly, self.sqrt_scale))

    def __call__(self, x):
        return self.poly(x) / math.sqrt(float(self.sqrt_scale))

    def square(self) -> Poly:
        """Exact rational polynomial (self)^2 * 1 = poly^2 / scale."""
        return (self.poly * self.poly) / self.sqrt_scale

    def __repr__(self):
        if self.sqrt_scale == 1:
            return f"ScaledPoly({self.poly!r})"
        return f"ScaledPoly({self.poly!r} / sqrt({self.sqrt_scale}))"


class ScaledMatrixPoly:
    """2x2 rational matrix polynomial M with positive rational scale D.

    Denotes T = M / sqrt(D).  For transfer-matrix products, det M equals D
    (the scaled form of det T = 1); arbitrary candidate matrices may violate
    this, which :func:`pellab.monodromy.check_admissible` reports.
    Equality compares canonical square-reduced forms, so representations
    differing by a rational square factor in D are identified.
    """

    __slots__ = ("m", "scale")

    def __init__(self, entries, scale=1):
        rows = tuple(tuple(e for e in row) for row in entries)
        if len(rows) != 2 or any(len(r) != 2 for r in rows):
            raise ValueError("ScaledMatrixPoly is 2x2")
        for row in rows:
            for e in row:
                if not isinstance(e, Poly):
                    raise TypeError("entries must be Poly")
        q = as_rat(scale)
        if q <= 0:
            raise ValueError("scale must be positive")
        object.__setattr__(self, "m", rows)
        object.__setattr__(self, "scale", q)

    def __setattr__(self, *a):
        raise AttributeError("ScaledMatrixPoly is immutable")

    def __getitem__(self, ij):
        i, j = ij
        return self.m[i][j]

    def det_poly(self) -> Poly:
        return self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]

    def trace_poly(self) -> Poly:
        return self.m[0][0] + self.m[1][1]

    def __matmul__(self, other: "ScaledMatrixPoly") -> "ScaledMatrixPoly":
        a, b = self.m, other.m
        rows = tuple(
            tuple(a[i][0] * b[0][j] + a[i][1] * b[1][j] for j in range(2))
            for i in range(2)
        )
        return ScaledMatrixPoly(rows, self.scale * other.scale)

    def canonical(self) -> "ScaledMatrixPoly":
        """Square-reduce the scale over Q (for comparisons)."""
        r, f = reduce_sqrt(self.scale)
        if r == 1 and self.scale == f:
            return self
        rows = tuple(tuple(e / r for e in row) for row in self.m)
        return ScaledMatrixPoly(rows, f)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ScaledMatrixPoly):
            return False
        a, b = self.canonical(), other.canonical()
        return a.m == b.m and a.scale == b.scale

    def __hash__(self):
        c = self.canonical()
        return hash((c.m, c.scale))

    def eval(self, x) -> tuple[tuple[complex, complex], tuple[complex, complex]]:
        """Numeric value of T = M/sqrt(D) at a complex point."""
        s = math.sqrt(float(self.scale))
        return tuple(tuple(complex(e(complex(x))) / s for e in row) for row in self.m)

    def __repr__(self):
        return f"ScaledMatrixPoly({self.m!r}, scale={self.scale})"
