"""Bounded Todd-Coxeter coset enumeration (HLT strategy with lookahead).

Columns are ``2*g`` for generator ``g`` and ``2*g + 1`` for its inverse.  The
coset cap bounds the number of live cosets; when it is reached a lookahead
pass scans every relator without defining new cosets, and enumeration resumes
only if that pass freed some rows.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Sequence

from ..presentation import Presentation
from ..word import Word

DEFAULT_CAP = int(os.environ.get("GTORSION_COSET_CAP", 1_000_000))


class _Overflow(Exception):
    pass


class _Restart(Exception):
    """Lookahead freed rows; the coset being processed may have died."""


@dataclass
class CosetTable:
    status: str  # "complete" | "overflow"
    cap: int
    table: list[list[int]]  # complete tables only; rows indexed by coset, 0 = subgroup
    ngens: int
    defined: int  # total cosets ever defined

    @property
    def index(self) -> int | None:
        return len(self.table) if self.status == "complete" else None

    @property
    def complete(self) -> bool:
        return self.status == "complete"

    def to_json(self) -> dict:
        out = {"status": self.status, "cap": self.cap, "defined": self.defined}
        if self.complete:
            out["index"] = self.index
        return out


def _columns(w: Word) -> list[int]:
    cols = []
    for g, e in w.syllables:
        cols.extend([2 * g if e > 0 else 2 * g + 1] * abs(e))
    return cols


class _Enumerator:
    def __init__(self, ngens: int, cap: int):
        self.ncols = 2 * ngens
        self.cap = cap
        self.table: list[list[int]] = [[-1] * self.ncols]
        self.parent = [0]
        self.live = 1
        self.hard_limit = 4 * cap + 16

    def rep(self, k: int) -> int:
        p = self.parent
        root = k
        while p[root] != root:
            root = p[root]
        while p[k] != root:
            p[k], k = root, p[k]
        return root

    def alive(self, k: int) -> bool:
        return self.parent[k] == k

    def define(self, alpha: int, x: int):
        if self.live >= self.cap:
            self.lookahead()
            if self.live >= self.cap:
                raise _Overflow
            raise _Restart
        if len(self.table) >= self.hard_limit:
            raise _Overflow
        beta = len(self.table)
        self.table.append([-1] * self.ncols)
        self.parent.append(beta)
        self.live += 1
        self.table[alpha][x] = beta
        self.table[beta][x ^ 1] = alpha

    def _merge(self, k: int, lam: int, queue: list[int]):
        a, b = self.rep(k), self.rep(lam)
        if a != b:
            lo, hi = min(a, b), max(a, b)
            self.parent[hi] = lo
            self.live -= 1
            queue.append(hi)

    def coincidence(self, alpha: int, beta: int):
        queue: list[int] = []
        self._merge(alpha, beta, queue)
        T = self.table
        i = 0
        while i < len(queue):
            gamma = queue[i]
            i += 1
            for x in range(self.ncols):
                delta = T[gamma][x]
                if delta < 0:
                    continue
                T[delta][x ^ 1] = -1
                mu, nu = self.rep(gamma), self.rep(delta)
                if T[mu][x] >= 0:
                    self._merge(nu, T[mu][x], queue)
                elif T[nu][x ^ 1] >= 0:
                    self._merge(mu, T[nu][x ^ 1], queue)
                else:
                    T[mu][x] = nu
                    T[nu][x ^ 1] = mu

    def scan(self, alpha: int, word: Sequence[int], fill: bool):
        T = self.table
        f, b = alpha, alpha
        i, j = 0, len(word) - 1
        while True:
            while i <= j and T[f][word[i]] >= 0:
                f = T[f][word[i]]
                i += 1
            if i > j:
                if f != b:
                    self.coincidence(f, b)
                return
            while j >= i and T[b][word[j] ^ 1] >= 0:
                b = T[b][word[j] ^ 1]
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if i == j:
                T[f][word[i]] = b
                T[b][word[i] ^ 1] = f
                return
            if not fill:
                return
            self.define(f, word[i])

    def lookahead(self):
        rels = self.relators
        beta = 0
        while beta < len(self.table):
            if self.alive(beta):
                for r in rels:
                    if not self.alive(beta):
                        break
                    self.scan(beta, r, fill=False)
            beta += 1

    def run(self, relators: list[list[int]], subgroup: list[list[int]]):
        self.relators = relators
        while True:
            try:
                for w in subgroup:
                    self.scan(0, w, fill=True)
                break
            except _Restart:
                pass
        alpha = 0
        while alpha < len(self.table):
            try:
                self._process(alpha)
            except _Restart:
                continue
            alpha += 1

    def _process(self, alpha: int):
        for r in self.relators:
            if not self.alive(alpha):
                return
            self.scan(alpha, r, fill=True)
        if self.alive(alpha):
            for x in range(self.ncols):
                if self.table[alpha][x] < 0:
                    self.define(alpha, x)

    def compact(self) -> list[list[int]]:
        live = [k for k in range(len(self.table)) if self.alive(k)]
        new = {k: i for i, k in enumerate(live)}
        return [[new[self.rep(e)] for e in self.table[k]] for k in live]


def todd_coxeter(P: Presentation, subgroup_generators: Sequence[Word] = (),
                 cap: int = DEFAULT_CAP) -> CosetTable:
    if cap < 1:
        raise ValueError("coset cap must be positive")
    ngens = len(P.alphabet)
    rels = []
    for r in P.relators:
        cols = _columns(r)
        if cols:
            rels.append(cols)
    sub = [_columns(w.lift(P.alphabet)) for w in subgroup_generators]
    en = _Enumerator(ngens, cap)
    try:
        en.run(rels, [s for s in sub if s])
    except _Overflow:
        return CosetTable("overflow", cap, [], ngens, len(en.table))
    table = en.compact()
    # closure check: every entry defined and every relator a cycle at every coset
    for row in table:
        if any(e < 0 for e in row):
            raise AssertionError("coset table incomplete after enumeration")
    for k in range(len(table)):
        for r in rels:
            c = k
            for x in r:
                c = table[c][x]
            if c != k:
                raise AssertionError("relator does not close in coset table")
    return CosetTable("complete", cap, table, ngens, len(en.table))


def permutation_eval(t: CosetTable, w: Word) -> tuple[int, ...]:
    """Image of ``w`` acting on cosets from the right: entry ``k`` is ``k . w``."""
    if not t.complete:
        raise ValueError("permutation_eval needs a complete coset table")
    cols = _columns(w)
    out = []
    for k in range(len(t.table)):
        c = k
        for x in cols:
            c = t.table[c][x]
        out.append(c)
    return tuple(out)


def is_identity_perm(perm: Sequence[int]) -> bool:
    return all(i == v for i, v in enumerate(perm))
