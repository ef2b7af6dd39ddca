"""Alexander polynomial from a presentation by Fox calculus."""

from __future__ import annotations

from itertools import combinations

import sympy

from ..presentation import Presentation, abelianization_matrix
from .smith import smith_normal_form

T = sympy.Symbol("T")


def abelian_heights(P: Presentation) -> list[int]:
    """Image of each generator under ``H_1 = Z``; the meridian maps to +1."""
    snf = smith_normal_form(abelianization_matrix(P))
    inv = snf.invariants()
    if inv != [0]:
        raise ValueError(f"Fox calculus here needs H_1 = Z, got {inv}")
    free = [j for j in range(snf.ncols) if j >= len(snf.factors) or snf.factors[j] == 0]
    j0 = free[0]
    h = [snf.V[g][j0] for g in range(snf.ncols)]
    if P.meridian is not None:
        mh = sum(e * h[g] for g, e in P.meridian.syllables)
        if mh < 0:
            h = [-x for x in h]
    return h


def fox_matrix(P: Presentation) -> list[list]:
    h = abelian_heights(P)
    rows = []
    for r in P.relators:
        row = [sympy.Integer(0)] * len(P.alphabet)
        height = 0
        for g, e in r.syllables:
            step = 1 if e > 0 else -1
            for _ in range(abs(e)):
                if step > 0:
                    row[g] += T ** height
                    height += h[g]
                else:
                    height -= h[g]
                    row[g] -= T ** height
        rows.append([sympy.expand(x) for x in row])
    return rows


def alexander_polynomial(P: Presentation) -> tuple[int, ...]:
    """Symmetrized coefficients, lowest degree first, normalized so the sum is 1."""
    A = sympy.Matrix(fox_matrix(P))
    nr, nc = A.shape
    k = nc - 1
    g = sympy.Integer(0)
    for rows in combinations(range(nr), k):
        for cols in combinations(range(nc), k):
            m = sympy.expand(A.extract(list(rows), list(cols)).det())
            if m != 0:
                # Laurent minor; multiplying by a power of T is a unit
                g = sympy.gcd(g, sympy.fraction(sympy.together(m))[0])
    if g == 0:
        return (0,)
    poly = sympy.Poly(g, T)
    coeffs = list(reversed(poly.all_coeffs()))
    while coeffs and coeffs[0] == 0:
        coeffs.pop(0)
    total = sum(coeffs)
    if total < 0:
        coeffs = [-c for c in coeffs]
    return tuple(int(c) for c in coeffs)
