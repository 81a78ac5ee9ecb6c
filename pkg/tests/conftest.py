import random
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from pellab import Poly, PeriodData
from pellab.pfrac import PStep

settings.register_profile(
    "pellab",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("pellab")

BETAS = [Fraction(1, 4), Fraction(1), Fraction(9, 4), Fraction(4)]


def random_monic(rng: random.Random, max_deg: int, lo: int = -3, hi: int = 3) -> Poly:
    deg = rng.randint(1, max_deg)
    return Poly([Fraction(rng.randint(lo, hi)) for _ in range(deg)] + [Fraction(1)])


def random_period(rng: random.Random, max_s: int = 4, max_deg: int = 3) -> PeriodData:
    s = rng.randint(1, max_s)
    blocks = tuple(
        PStep(
            random_monic(rng, max_deg),
            rng.choice([1, -1]),
            rng.choice(BETAS),
        )
        for _ in range(s)
    )
    return PeriodData(blocks)


@st.composite
def monic_polys(draw, max_deg=3, coeff=3):
    deg = draw(st.integers(1, max_deg))
    lower = draw(st.lists(st.integers(-coeff, coeff), min_size=deg, max_size=deg))
    return Poly([Fraction(c) for c in lower] + [Fraction(1)])


@st.composite
def psteps(draw, max_deg=2):
    return PStep(
        draw(monic_polys(max_deg=max_deg)),
        draw(st.sampled_from([1, -1])),
        draw(st.sampled_from(BETAS)),
    )


@st.composite
def periods(draw, max_s=3, max_deg=2):
    s = draw(st.integers(1, max_s))
    return PeriodData(tuple(draw(psteps(max_deg=max_deg)) for _ in range(s)))


def exact_det(mat) -> Fraction:
    """Exact determinant of a square matrix of Fractions (test oracle)."""
    n = len(mat)
    m = [list(row) for row in mat]
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        det *= m[col][col]
        inv = 1 / m[col][col]
        for r in range(col + 1, n):
            f = m[r][col] * inv
            if f:
                for j in range(col, n):
                    m[r][j] -= f * m[col][j]
    return det


def charpoly_value(H, x: Fraction) -> Fraction:
    """det(x*I - H) evaluated exactly at a rational point."""
    n = len(H)
    mat = [
        [(x if i == j else Fraction(0)) - H[i][j] for j in range(n)]
        for i in range(n)
    ]
    return exact_det(mat)


@pytest.fixture
def rng():
    return random.Random(20260810)
