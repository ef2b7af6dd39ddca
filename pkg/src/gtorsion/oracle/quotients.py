"""Brute-force homomorphisms to symmetric groups, used as a spot check.

Images are permutation tuples acting on ``range(degree)``; words act from the
right, consistent with coset tables.  The first generator's image runs over
cycle-type representatives only, so results are complete up to simultaneous
conjugation, which cannot change whether a word maps to the identity.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import permutations
from typing import Sequence

from ..presentation import Presentation
from ..word import Word

Perm = tuple[int, ...]
EXHAUSTIVE_DEGREE = 5
DEFAULT_SEED = 20201


def compose(a: Perm, b: Perm) -> Perm:
    """``a`` then ``b`` (right action)."""
    return tuple(b[i] for i in a)


def invert(a: Perm) -> Perm:
    out = [0] * len(a)
    for i, v in enumerate(a):
        out[v] = i
    return tuple(out)


def evaluate(images: Sequence[Perm], w: Word) -> Perm:
    n = len(images[0])
    cur = tuple(range(n))
    invs = {}
    for g, e in w.syllables:
        if e > 0:
            p = images[g]
        else:
            p = invs.get(g) or invs.setdefault(g, invert(images[g]))
        for _ in range(abs(e)):
            cur = compose(cur, p)
    return cur


def _cycle_type_reps(n: int) -> list[Perm]:
    seen, reps = set(), []
    for p in permutations(range(n)):
        seen_pts, ctype = set(), []
        for i in range(n):
            if i in seen_pts:
                continue
            j, length = i, 0
            while j not in seen_pts:
                seen_pts.add(j)
                j = p[j]
                length += 1
            ctype.append(length)
        key = tuple(sorted(ctype))
        if key not in seen:
            seen.add(key)
            reps.append(p)
    return reps


@dataclass
class QuotientSearch:
    degree: int
    homomorphisms: list[tuple[Perm, ...]]
    exhaustive: bool
    seed: int | None = None
    tried: int = 0
    notes: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        out = {"degree": self.degree, "found": len(self.homomorphisms),
               "exhaustive": self.exhaustive, "tried": self.tried}
        if self.seed is not None:
            out["seed"] = self.seed
        return out


def _relators_by_support(P: Presentation):
    """Relators grouped by the largest generator index they mention."""
    by_last: dict[int, list[Word]] = {}
    for r in P.relators:
        top = max(g for g, _ in r.syllables)
        by_last.setdefault(top, []).append(r)
    return by_last


def finite_quotient_search(P: Presentation, degree: int = 4, samples: int = 20000,
                           seed: int = DEFAULT_SEED) -> QuotientSearch:
    """Homomorphisms ``P -> S_degree``.

    Exhaustive (up to conjugation) for ``degree <= 5``; for 6 and 7 a fixed-seed
    random sample of ``samples`` generator tuples is tried instead.
    """
    if not 1 <= degree <= 7:
        raise ValueError("degree must be between 1 and 7")
    ngens = len(P.alphabet)
    ident = tuple(range(degree))
    by_last = _relators_by_support(P)
    found: list[tuple[Perm, ...]] = []

    def ok_upto(images, k):
        for r in by_last.get(k, ()):
            if evaluate(images, r) != ident:
                return False
        return True

    if degree <= EXHAUSTIVE_DEGREE:
        allp = list(permutations(range(degree)))
        firsts = _cycle_type_reps(degree)
        tried = 0
        if ngens == 0:
            return QuotientSearch(degree, [()], True, None, 0)

        def extend(images):
            nonlocal tried
            k = len(images)
            if k == ngens:
                found.append(tuple(images))
                return
            for p in (firsts if k == 0 else allp):
                tried += 1
                images.append(p)
                # pad with identity so evaluate can index every generator
                padded = images + [ident] * (ngens - len(images))
                if ok_upto(padded, k):
                    extend(images)
                images.pop()

        extend([])
        return QuotientSearch(degree, found, True, None, tried)

    rng = random.Random(seed)
    allp = list(permutations(range(degree)))
    seen = set()
    for _ in range(samples):
        images = tuple(rng.choice(allp) for _ in range(ngens))
        if images in seen:
            continue
        seen.add(images)
        if all(evaluate(images, r) == ident for r in P.relators):
            found.append(images)
    trivial = tuple([ident] * ngens)
    if trivial not in found:
        found.append(trivial)
    return QuotientSearch(degree, found, False, seed, len(seen))


def is_nonabelian(images: Sequence[Perm]) -> bool:
    for a in images:
        for b in images:
            if compose(a, b) != compose(b, a):
                return True
    return False
