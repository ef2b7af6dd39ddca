"""Finitely presented knot groups with peripheral structure.

Builders cover torus knots ``<x, y | x^p = y^q>``, the Lin presentation of the
double twist knots C[2p, 2q], Wirtinger presentations read off a crossing
list, and Dehn filling along a slope m/n.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from typing import Any, Sequence

from .word import Alphabet, Word, commutator


class PresentationError(ValueError):
    pass


class InfiniteSlope(PresentationError):
    pass


@dataclass(frozen=True)
class Slope:
    m: int
    n: int

    def __post_init__(self):
        if isinstance(self.m, bool) or isinstance(self.n, bool):
            raise PresentationError("slope components must be integers")
        if not isinstance(self.m, int) or not isinstance(self.n, int):
            raise PresentationError("slope components must be integers")
        if self.n < 1:
            raise PresentationError(f"slope denominator must be >= 1 (got {self.n})")
        if math.gcd(abs(self.m), self.n) != 1:
            raise PresentationError(f"slope {self.m}/{self.n} is not in lowest terms")

    @classmethod
    def parse(cls, text: str) -> "Slope":
        s = str(text).strip().lower().replace(" ", "")
        if s in ("inf", "infinity", "∞", "1/0", "-1/0", "+inf"):
            raise InfiniteSlope(
                "slope infinity is the trivial filling: pi_1(K(inf)) = pi_1(S^3) = {1}, "
                "which has no generalized torsion")
        mt = re.fullmatch(r"([+-]?\d+)(?:/(\d+))?", s)
        if not mt:
            raise PresentationError(f"cannot parse slope {text!r}; expected m or m/n")
        m, n = int(mt.group(1)), int(mt.group(2) or 1)
        if n == 0:
            raise InfiniteSlope("slope with zero denominator is the trivial filling")
        return cls(m, n)

    def __str__(self):
        return f"{self.m}/{self.n}"

    def __float__(self):
        return self.m / self.n


@dataclass(frozen=True)
class IntegerMatrix:
    rows: tuple[tuple[int, ...], ...]
    ncols: int

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(tuple(int(x) for x in r) for r in self.rows))
        for r in self.rows:
            if len(r) != self.ncols:
                raise ValueError("ragged integer matrix")

    @property
    def nrows(self):
        return len(self.rows)

    def tolist(self):
        return [list(r) for r in self.rows]


@dataclass(frozen=True)
class Presentation:
    alphabet: Alphabet
    relators: tuple[Word, ...]
    meridian: Word | None = None
    longitude: Word | None = None
    provenance: dict = field(default_factory=lambda: {"kind": "custom"}, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "relators", tuple(self.relators))
        for i, r in enumerate(self.relators):
            if r.alphabet != self.alphabet:
                raise PresentationError(f"relator {i} is over a different alphabet")
            if r.is_identity():
                raise PresentationError(f"relator {i} reduces to the identity")
        if (self.meridian is None) != (self.longitude is None):
            raise PresentationError("peripheral structure needs both meridian and longitude")
        for w in (self.meridian, self.longitude):
            if w is not None and w.alphabet != self.alphabet:
                raise PresentationError("peripheral word over a different alphabet")

    @property
    def generators(self) -> tuple[str, ...]:
        return self.alphabet.symbols

    @property
    def has_peripheral(self) -> bool:
        return self.meridian is not None

    def word(self, text: str) -> Word:
        return Word.parse(self.alphabet, text)

    def gen(self, symbol: str) -> Word:
        return self.alphabet.gen(symbol)

    def extended(self, new_generators: Sequence[str] = (), new_relators: Sequence[Word] = (),
                 provenance: dict | None = None) -> "Presentation":
        """Adjoin generators and relators; existing relators keep their indices."""
        alpha = self.alphabet.extend(new_generators)
        lift = lambda w: None if w is None else w.lift(alpha)
        rels = [r.lift(alpha) for r in self.relators] + [r.lift(alpha) for r in new_relators]
        return Presentation(alpha, tuple(rels), lift(self.meridian), lift(self.longitude),
                            provenance or dict(self.provenance))

    def to_json(self) -> dict:
        out: dict[str, Any] = {
            "generators": list(self.alphabet.symbols),
            "relators": [r.to_pairs() for r in self.relators],
        }
        if self.has_peripheral:
            out["meridian"] = self.meridian.to_pairs()
            out["longitude"] = self.longitude.to_pairs()
        out["provenance"] = self.provenance
        return out

    @classmethod
    def from_json(cls, data: dict) -> "Presentation":
        try:
            alpha = Alphabet(tuple(data["generators"]))
            rels = tuple(Word.from_pairs(alpha, r) for r in data["relators"])
            mer = data.get("meridian")
            lon = data.get("longitude")
            return cls(alpha, rels,
                       None if mer is None else Word.from_pairs(alpha, mer),
                       None if lon is None else Word.from_pairs(alpha, lon),
                       data.get("provenance", {"kind": "custom"}))
        except (KeyError, TypeError) as exc:
            raise PresentationError(f"malformed presentation JSON: {exc}") from exc

    def __str__(self):
        rels = ", ".join(str(r) for r in self.relators)
        return f"< {', '.join(self.alphabet.symbols)} | {rels} >"


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    if b == 0:
        return a, 1, 0
    g, x, y = _ext_gcd(b, a % b)
    return g, y, x - (a // b) * y


def torus_presentation(p: int, q: int) -> Presentation:
    """``<x, y | x^p y^-q>`` with meridian ``x^a y^b`` (aq + bp = 1) and
    longitude ``x^p mu^(-pq)``."""
    if not (2 <= p < q) or math.gcd(p, q) != 1:
        raise PresentationError(f"torus knot needs coprime 2 <= p < q, got ({p}, {q})")
    alpha = Alphabet(("x", "y"))
    x, y = alpha.gens()
    _, inv_q, _ = _ext_gcd(q % p, p)
    a = inv_q % p
    if 2 * a > p:
        a -= p
    b = (1 - a * q) // p
    assert a * q + b * p == 1
    mu = x ** a * y ** b
    lam = x ** p * mu ** (-p * q)
    # abelianization x -> q, y -> p must send mu to a generator and lam to 0
    ab = lambda w: w.exponent_sums()[0] * q + w.exponent_sums()[1] * p
    if ab(mu) != 1 or ab(lam) != 0:
        raise AssertionError("torus peripheral self-check failed")
    return Presentation(alpha, (x ** p * y ** (-q),), mu, lam,
                        {"kind": "torus", "p": p, "q": q})


def lin_presentation(p: int, q: int) -> Presentation:
    """Lin presentation of C[2p, 2q]:
    ``t a^p t^-1 = b^-1 a^p`` and ``t b^-q a^-1 t^-1 = b^-q``; meridian t,
    longitude ``[b^q, a^p]``."""
    if not isinstance(p, int) or not isinstance(q, int) or p <= 0 or q == 0:
        raise PresentationError(f"Lin presentation needs p > 0 and q != 0, got ({p}, {q})")
    alpha = Alphabet(("a", "b", "t"))
    a, b, t = alpha.gens()
    r1 = t * a ** p * t.inverse() * a ** (-p) * b
    r2 = t * b ** (-q) * a.inverse() * t.inverse() * b ** q
    return Presentation(alpha, (r1, r2), t, commutator(b ** q, a ** p),
                        {"kind": "lin", "p": p, "q": q})


def dehn_fill(P: Presentation, slope: Slope) -> Presentation:
    """Append the filling relator ``mu^m lambda^n``."""
    if not P.has_peripheral:
        raise PresentationError("Dehn filling needs a meridian and longitude")
    rel = P.meridian ** slope.m * P.longitude ** slope.n
    if rel.is_identity():
        raise PresentationError(f"filling relator for slope {slope} is trivial")
    return Presentation(P.alphabet, P.relators + (rel,), P.meridian, P.longitude,
                        {"kind": "filled", "parent": P.provenance, "m": slope.m, "n": slope.n})


def abelianization_matrix(P: Presentation) -> IntegerMatrix:
    return IntegerMatrix(tuple(tuple(r.exponent_sums()) for r in P.relators), len(P.alphabet))


# --------------------------------------------------------------------------
# Diagrams and Wirtinger presentations


@dataclass(frozen=True)
class Crossing:
    over: int
    inn: int
    out: int
    sign: int

    def to_json(self):
        return {"over": self.over, "in": self.inn, "out": self.out, "sign": self.sign}


@dataclass(frozen=True)
class Diagram:
    crossings: tuple[Crossing, ...]
    traversal: tuple[int, ...]
    base_overarc: int

    @property
    def arcs(self) -> int:
        return len(self.crossings)

    def validate(self):
        n = self.arcs
        if n == 0:
            raise PresentationError("diagram has no crossings")
        ends, starts = {}, {}
        for i, c in enumerate(self.crossings):
            if c.sign not in (1, -1):
                raise PresentationError(f"crossing {i}: sign must be +1 or -1")
            for a in (c.over, c.inn, c.out):
                if not (isinstance(a, int) and 0 <= a < n):
                    raise PresentationError(f"crossing {i}: arc id {a!r} out of range")
            if c.inn in ends or c.out in starts:
                raise PresentationError(f"crossing {i}: arc used twice as in/out")
            ends[c.inn] = i
            starts[c.out] = i
        if sorted(self.traversal) != list(range(n)):
            raise PresentationError("traversal must list every arc exactly once")
        for k, arc in enumerate(self.traversal):
            nxt = self.traversal[(k + 1) % n]
            if self.crossings[ends[arc]].out != nxt:
                raise PresentationError(
                    f"traversal inconsistent: arc {arc} does not continue into arc {nxt}")
        if not 0 <= self.base_overarc < n:
            raise PresentationError("base_overarc out of range")

    @property
    def writhe(self) -> int:
        return sum(c.sign for c in self.crossings)

    def to_json(self) -> dict:
        return {"crossings": [c.to_json() for c in self.crossings],
                "traversal": list(self.traversal), "base_overarc": self.base_overarc}

    @classmethod
    def from_json(cls, data: dict) -> "Diagram":
        try:
            cs = tuple(Crossing(int(c["over"]), int(c["in"]), int(c["out"]), int(c["sign"]))
                       for c in data["crossings"])
            trav = tuple(int(a) for a in data.get("traversal", range(len(cs))))
            d = cls(cs, trav, int(data.get("base_overarc", trav[0] if trav else 0)))
        except (KeyError, TypeError, ValueError) as exc:
            raise PresentationError(f"malformed diagram JSON: {exc}") from exc
        d.validate()
        return d


def trefoil_diagram(sign: int = 1) -> Diagram:
    """Standard 3-crossing trefoil; ``sign=+1`` gives the positive diagram."""
    cs = tuple(Crossing(over=(i + 2) % 3, inn=i, out=(i + 1) % 3, sign=sign) for i in range(3))
    return Diagram(cs, (0, 1, 2), 0)


def figure_eight_diagram() -> Diagram:
    """Alternating 4-crossing figure-eight diagram (writhe 0)."""
    # arcs 0..3 along the knot; under-crossing at the end of arc i
    cs = tuple(Crossing((i + 2) % 4, i, (i + 1) % 4, 1 if i % 2 == 0 else -1)
               for i in range(4))
    return Diagram(cs, (0, 1, 2, 3), 0)


@dataclass(frozen=True)
class OverarcData:
    crossings: int  # p
    negatives: int  # k
    writhe: int
    single_run: bool  # every negative crossing passes under the base overarc
    generator_of_arc: dict
    # (over arc, sign) met at the end of each arc, traversal order from the base arc
    longitude_factors: tuple[tuple[int, int], ...]
    # (over arc, in arc, out arc, sign) per crossing, same order
    steps: tuple[tuple[int, int, int, int], ...]


def wirtinger(d: Diagram) -> tuple[Presentation, OverarcData]:
    """One generator per arc, named ``t1, t2, ...`` along the knot starting at
    the base overarc; one relator ``t_out^-1 t_over^-s t_in t_over^s`` per crossing.

    The longitude is ``t1^-w`` times the over-arc generators (exponent = crossing
    sign) met at each under-crossing, read along the knot from the base arc.
    """
    d.validate()
    n = d.arcs
    start = d.traversal.index(d.base_overarc)
    order = d.traversal[start:] + d.traversal[:start]
    gen_of = {arc: i for i, arc in enumerate(order)}
    alpha = Alphabet(tuple(f"t{i + 1}" for i in range(n)))
    g = alpha.gens()
    T = lambda arc: g[gen_of[arc]]
    end_at = {c.inn: c for c in d.crossings}

    relators = []
    for c in d.crossings:
        r = T(c.out).inverse() * T(c.over) ** (-c.sign) * T(c.inn) * T(c.over) ** c.sign
        if not r.is_identity():
            relators.append(r)

    steps = []
    for arc in order:
        c = end_at[arc]
        steps.append((c.over, c.inn, c.out, c.sign))
    w = d.writhe
    lam = g[0] ** (-w)
    for over, _, _, s in steps:
        lam = lam * T(over) ** s
    negs = [c for c in d.crossings if c.sign < 0]
    single = all(c.over == d.base_overarc for c in negs)
    data = OverarcData(n, len(negs), w, single, gen_of,
                       tuple((o, s) for o, _, _, s in steps), tuple(steps))
    P = Presentation(alpha, tuple(relators), g[0], lam,
                     {"kind": "wirtinger", "diagram": d.to_json()})
    return P, data
