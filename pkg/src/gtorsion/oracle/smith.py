"""Smith normal form over the integers, exact arithmetic throughout."""

from __future__ import annotations

import math
from dataclasses import dataclass

from ..presentation import IntegerMatrix, Presentation, abelianization_matrix
from ..word import Word


@dataclass(frozen=True)
class SmithForm:
    """``D = U M V`` with ``D`` diagonal; ``factors`` is the diagonal of length
    ``min(rows, cols)`` in divisibility order, zeros last."""

    factors: tuple[int, ...]
    nrows: int
    ncols: int
    U: tuple[tuple[int, ...], ...]
    V: tuple[tuple[int, ...], ...]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.factors if d)

    def invariants(self) -> list[int]:
        """Cokernel as cyclic orders, 0 standing for a free Z summand: ``[5]`` is
        Z/5, ``[0]`` is Z, ``[]`` is trivial."""
        tors = [d for d in self.factors if d not in (0, 1)]
        free = (self.ncols - len(self.factors)) + sum(1 for d in self.factors if d == 0)
        return tors + [0] * free


def smith_normal_form(M: IntegerMatrix | list) -> SmithForm:
    if not isinstance(M, IntegerMatrix):
        rows = [list(r) for r in M]
        M = IntegerMatrix(tuple(tuple(r) for r in rows), len(rows[0]) if rows else 0)
    r, c = M.nrows, M.ncols
    A = [list(row) for row in M.rows]
    U = [[int(i == j) for j in range(r)] for i in range(r)]
    V = [[int(i == j) for j in range(c)] for i in range(c)]

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, k):  # row_dst += k * row_src
        A[dst] = [a + k * b for a, b in zip(A[dst], A[src])]
        U[dst] = [a + k * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, k):
        for row in A:
            row[dst] += k * row[src]
        for row in V:
            row[dst] += k * row[src]

    for t in range(min(r, c)):
        while True:
            best = None
            for i in range(t, r):
                for j in range(t, c):
                    if A[i][j] and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                break
            swap_rows(t, best[0])
            swap_cols(t, best[1])
            p = A[t][t]
            clean = True
            for i in range(t + 1, r):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // p))
                    clean = clean and A[i][t] == 0
            for j in range(t + 1, c):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // p))
                    clean = clean and A[t][j] == 0
            if not clean:
                continue
            bad = next(((i, j) for i in range(t + 1, r) for j in range(t + 1, c)
                        if A[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if A[t][t] < 0:
            A[t] = [-a for a in A[t]]
            U[t] = [-a for a in U[t]]

    diag = [A[i][i] for i in range(min(r, c))]
    # the loop leaves zeros at the tail and a divisibility chain among nonzeros
    return SmithForm(tuple(diag), r, c, tuple(map(tuple, U)), tuple(map(tuple, V)))


def h1_invariants(P: Presentation) -> list[int]:
    return smith_normal_form(abelianization_matrix(P)).invariants()


def vector_order(snf: SmithForm, v: list[int]) -> int:
    """Order of ``v`` in ``Z^cols / rowspace``; 0 means infinite."""
    y = [sum(v[i] * snf.V[i][j] for i in range(snf.ncols)) for j in range(snf.ncols)]
    order = 1
    for j, yj in enumerate(y):
        if yj == 0:
            continue
        d = snf.factors[j] if j < len(snf.factors) else 0
        if d == 0:
            return 0
        order = math.lcm(order, d // math.gcd(d, yj))
    return order


def element_order_in_h1(P: Presentation, w: Word, snf: SmithForm | None = None) -> int:
    if snf is None:
        snf = smith_normal_form(abelianization_matrix(P))
    return vector_order(snf, w.lift(P.alphabet).exponent_sums())
