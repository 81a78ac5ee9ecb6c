"""Dense truncations of periodic generalized Jacobi matrices.

Blocks are companion matrices of the monic partial quotients, coupled by
single-corner blocks with entries b_j and eps_j*eps_{j+1}*b_j.  The
block-diagonal Gram matrix G_j = eps_j * E_{p_j}^{-1} makes G*H symmetric
on every whole-block truncation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import IrrationalCoupling, NotMonic, SingularSystem
from .exactpoly import Poly, rat_sqrt
from .pfrac import PStep

_ZERO = Fraction(0)
_ONE = Fraction(1)

Matrix = tuple[tuple[Fraction, ...], ...]


@dataclass(frozen=True)
class PeriodData:
    """The period: s blocks (p_j, eps_j, beta_j), interpreted cyclically."""

    blocks: tuple[PStep, ...]

    def __post_init__(self):
        object.__setattr__(self, "blocks", tuple(self.blocks))
        if not self.blocks:
            raise ValueError("period must contain at least one block")
        for b in self.blocks:
            if not isinstance(b, PStep):
                raise TypeError("blocks must be PStep values")

    @property
    def s(self) -> int:
        return len(self.blocks)

    @property
    def period_degree(self) -> int:
        return sum(b.p.degree for b in self.blocks)


@dataclass(frozen=True)
class DenseKreinPair:
    H: Matrix
    G: Matrix


def companion(p: Poly) -> Matrix:
    """Companion matrix C_p with det(xI - C_p) = p(x)."""
    if not p.is_monic() or p.degree < 1:
        raise NotMonic("companion matrix requires a monic polynomial of degree >= 1")
    n = p.degree
    rows = [[_ZERO] * n for _ in range(n)]
    for i in range(n):
        rows[i][n - 1] = -p.coefficient(i)
    for i in range(1, n):
        rows[i][i - 1] = _ONE
    return tuple(tuple(r) for r in rows)


def symmetrizator(p: Poly) -> Matrix:
    """Anti-triangular E_p with C_p E_p = E_p C_p^T; entries p_1 .. p_n."""
    if not p.is_monic() or p.degree < 1:
        raise NotMonic("symmetrizator requires a monic polynomial of degree >= 1")
    n = p.degree
    rows = [
        tuple(p.coefficient(i + j + 1) if i + j + 1 <= n else _ZERO for j in range(n))
        for i in range(n)
    ]
    return tuple(rows)


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n, k, m = len(a), len(b), len(b[0])
    return tuple(
        tuple(sum((a[i][t] * b[t][j] for t in range(k)), _ZERO) for j in range(m))
        for i in range(n)
    )


def mat_transpose(a: Matrix) -> Matrix:
    return tuple(zip(*a))


def mat_inverse(a: Matrix) -> Matrix:
    """Exact inverse by Gauss-Jordan elimination."""
    n = len(a)
    m = [list(row) + [_ONE if i == j else _ZERO for j in range(n)] for i, row in enumerate(a)]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            raise SingularSystem("matrix is singular")
        m[col], m[piv] = m[piv], m[col]
        inv = 1 / m[col][col]
        m[col] = [v * inv for v in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [v - f * w for v, w in zip(m[r], m[col])]
    return tuple(tuple(row[n:]) for row in m)


def is_symmetric(a: Matrix) -> bool:
    n = len(a)
    return all(a[i][j] == a[j][i] for i in range(n) for j in range(i + 1, n))


def truncate(period: PeriodData, n_blocks: int) -> DenseKreinPair:
    """Exact dense pair (H, G) for the first n_blocks whole blocks.

    Requires every coupling b_j = sqrt(beta_j) entering the matrix to be
    rational; raises IrrationalCoupling otherwise.
    """
    if n_blocks < 1:
        raise ValueError("n_blocks must be >= 1")
    s = period.s
    blocks = [period.blocks[j % s] for j in range(n_blocks)]
    sizes = [b.p.degree for b in blocks]
    offsets = [0]
    for k in sizes:
        offsets.append(offsets[-1] + k)
    n = offsets[-1]

    bvals = []
    for j in range(n_blocks - 1):
        b = rat_sqrt(blocks[j].beta)
        if b is None:
            raise IrrationalCoupling(
                f"beta_{j} = {blocks[j].beta} is not the square of a rational"
            )
        bvals.append(b)

    H = [[_ZERO] * n for _ in range(n)]
    for j, blk in enumerate(blocks):
        Aj = companion(blk.p)
        o = offsets[j]
        for i in range(sizes[j]):
            for k in range(sizes[j]):
                H[o + i][o + k] = Aj[i][k]
    for j in range(n_blocks - 1):
        eps_next = period.blocks[(j + 1) % s].epsilon
        o, o2 = offsets[j], offsets[j + 1]
        # B_j sits below the diagonal, top-right entry b_j
        H[o2][o + sizes[j] - 1] = bvals[j]
        # tilde B_j sits above, top-right entry eps_j eps_{j+1} b_j
        H[o][o2 + sizes[j + 1] - 1] = blocks[j].epsilon * eps_next * bvals[j]

    G = [[_ZERO] * n for _ in range(n)]
    for j, blk in enumerate(blocks):
        Ginv = mat_inverse(symmetrizator(blk.p))
        o = offsets[j]
        for i in range(sizes[j]):
            for k in range(sizes[j]):
                G[o + i][o + k] = blk.epsilon * Ginv[i][k]

    return DenseKreinPair(tuple(map(tuple, H)), tuple(map(tuple, G)))


def resolvent_m(period: PeriodData, n_blocks: int, lam: complex) -> complex:
    """Truncated m-function (G (H - lam)^{-1} e, e) with e = (1, 0, ...)."""
    pair = truncate(period, n_blocks)
    n = len(pair.H)
    A = np.array([[complex(v) for v in row] for row in pair.H], dtype=complex)
    A -= complex(lam) * np.eye(n)
    e = np.zeros(n, dtype=complex)
    e[0] = 1.0
    try:
        x = np.linalg.solve(A, e)
    except np.linalg.LinAlgError as exc:
        raise SingularSystem(str(exc)) from exc
    g0 = np.array([complex(v) for v in pair.G[0]])
    return complex(g0 @ x)
