"""Smith normal form over the Laurent ring K[z, z^-1], K = Q(i).

K[z, z^-1] is a localization of the Euclidean domain K[z], hence a PID whose
units are the nonzero monomials.  Each row is first multiplied by a power of
``z`` so that every entry becomes an ordinary polynomial; the remaining work is
the usual Euclidean elimination in K[z], with the pivot always chosen of
minimal degree.  Finally each diagonal entry is made monic with nonzero
constant term by absorbing a unit ``c z^k`` into ``U``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .laurent import LaurentMatrix, LaurentPoly, poly_divmod


@dataclass(frozen=True)
class InvariantFactors:
    """Kernel rank and nonunit invariant factors (monic, each dividing the next)."""

    kernel_rank: int
    factors: tuple[LaurentPoly, ...]

    def summary(self) -> str:
        return f"kernel_rank={self.kernel_rank}; factors=[{', '.join(str(f) for f in self.factors)}]"

    def to_json(self) -> dict:
        return {"kernel_rank": self.kernel_rank, "factors": [str(f) for f in self.factors]}


class SNFResult(NamedTuple):
    U: LaurentMatrix
    D: LaurentMatrix
    V: LaurentMatrix
    invariants: InvariantFactors


def _deg(p: LaurentPoly) -> int:
    return p.max_exp


class _Work:
    def __init__(self, M: LaurentMatrix):
        self.r, self.c = M.shape
        self.A = [list(row) for row in M.entries]
        self.U = [[LaurentPoly(int(i == j)) for j in range(self.r)] for i in range(self.r)]
        self.V = [[LaurentPoly(int(i == j)) for j in range(self.c)] for i in range(self.c)]

    def scale_row(self, i, u):
        self.A[i] = [a * u for a in self.A[i]]
        self.U[i] = [a * u for a in self.U[i]]

    def swap_rows(self, i, j):
        if i != j:
            self.A[i], self.A[j] = self.A[j], self.A[i]
            self.U[i], self.U[j] = self.U[j], self.U[i]

    def swap_cols(self, i, j):
        if i != j:
            for M in (self.A, self.V):
                for row in M:
                    row[i], row[j] = row[j], row[i]

    def add_row(self, dst, src, q):
        """row_dst += q * row_src"""
        for M in (self.A, self.U):
            M[dst] = [a + q * b for a, b in zip(M[dst], M[src])]

    def add_col(self, dst, src, q):
        for M in (self.A, self.V):
            for row in M:
                row[dst] = row[dst] + q * row[src]


def _pivot_step(w: _Work, t: int) -> bool:
    """Bring a minimal-degree entry of the trailing block to (t, t).
    Returns False when the trailing block is zero."""
    best = None
    for i in range(t, w.r):
        for j in range(t, w.c):
            a = w.A[i][j]
            if a and (best is None or _deg(a) < best[0]):
                best = (_deg(a), i, j)
    if best is None:
        return False
    _, i, j = best
    w.swap_rows(t, i)
    w.swap_cols(t, j)
    return True


def _reduce(w: _Work, t: int) -> None:
    while True:
        p = w.A[t][t]
        moved = False
        for i in range(t + 1, w.r):
            if w.A[i][t]:
                q, rem = poly_divmod(w.A[i][t], p)
                w.add_row(i, t, -q)
                if rem:
                    w.swap_rows(t, i)
                    moved = True
                    break
        if moved:
            continue
        for j in range(t + 1, w.c):
            if w.A[t][j]:
                q, rem = poly_divmod(w.A[t][j], p)
                w.add_col(j, t, -q)
                if rem:
                    w.swap_cols(t, j)
                    moved = True
                    break
        if moved:
            continue
        # pivot must divide the whole trailing block
        bad = next(
            (i for i in range(t + 1, w.r) for j in range(t + 1, w.c)
             if w.A[i][j] and poly_divmod(w.A[i][j], p)[1]),
            None,
        )
        if bad is None:
            return
        w.add_row(t, bad, LaurentPoly(1))


def snf(M: LaurentMatrix) -> SNFResult:
    """Smith normal form ``U M V = D`` over the Laurent ring.

    ``U`` and ``V`` have unit determinant; ``D`` is diagonal with monic
    entries (zero allowed at the end), each dividing the next.
    """
    w = _Work(M)
    for i, row in enumerate(w.A):
        nz = [a.min_exp for a in row if a]
        if nz and min(nz) != 0:
            w.scale_row(i, LaurentPoly.monomial(-min(nz)))
    rank = 0
    for t in range(min(w.r, w.c)):
        if not _pivot_step(w, t):
            break
        _reduce(w, t)
        rank += 1
    factors = []
    for t in range(rank):
        monic, unit = w.A[t][t].normalized()
        w.scale_row(t, unit ** -1)
        if not monic.is_unit():
            factors.append(monic)
    U = LaurentMatrix(w.U)
    V = LaurentMatrix(w.V)
    D = LaurentMatrix(w.A)
    assert U @ M @ V == D, "Smith normal form verification failed"
    return SNFResult(U, D, V, InvariantFactors(w.c - rank, tuple(factors)))


def invariant_factors(M: LaurentMatrix) -> InvariantFactors:
    return snf(M).invariants


def homology_compare(B1: LaurentMatrix, B2: LaurentMatrix) -> bool:
    """True iff ``B1`` and ``B2`` have the same kernel rank and invariant
    factors, so the kernel and cokernel modules agree over K[z, z^-1]."""
    return invariant_factors(B1) == invariant_factors(B2)
