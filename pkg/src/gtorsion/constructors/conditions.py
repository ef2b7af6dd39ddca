"""Slope conditions per knot family, plus two closed-form utilities.

:func:`classify` lists every construction that applies to a family at a slope,
with the arithmetic it checked.  Results backed by a builder in this package
carry a handle that builds the certificate; results that rest on outside
arguments (Seifert-fibered pieces, clasp disks we cannot draw) are marked
``external_citation`` and never produce a certificate.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass, field
from typing import Any, Callable, Sequence

from ..presentation import Diagram, Presentation, Slope, lin_presentation, wirtinger
from .builders import (PreconditionError, genus1_cert, positive_diagram_cert,
                       singular_disk_cert, torus_commutator_cert)

FAMILIES = ("torus", "cable", "composite", "genus1", "diagram", "axiomatic_disk",
            "whitehead", "montesinos")


@dataclass(frozen=True)
class FamilySpec:
    kind: str
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in FAMILIES:
            raise ValueError(f"unknown family {self.kind!r}; expected one of {FAMILIES}")

    def to_json(self) -> dict:
        out: dict[str, Any] = {"family": self.kind}
        for k, v in self.params.items():
            if isinstance(v, (Diagram, Presentation)):
                v = v.to_json()
            out[k] = v
        return out

    @classmethod
    def from_json(cls, data: dict) -> "FamilySpec":
        data = dict(data)
        kind = data.pop("family")
        data.pop("slope", None)
        if kind == "diagram" and isinstance(data.get("diagram"), dict):
            data["diagram"] = Diagram.from_json(data["diagram"])
        if kind == "axiomatic_disk" and isinstance(data.get("presentation"), dict):
            data["presentation"] = Presentation.from_json(data["presentation"])
        return cls(kind, data)


@dataclass
class Applicable:
    result: str
    condition: str
    holds: bool
    evidence: str  # "certificate" | "external_citation"
    note: str = ""
    build: Callable[[], Any] | None = field(default=None, repr=False, compare=False)

    def to_json(self) -> dict:
        out = {"result": self.result, "condition": self.condition, "holds": self.holds,
               "evidence": self.evidence}
        if self.note:
            out["note"] = self.note
        if self.build is not None:
            out["buildable"] = True
        return out


@dataclass
class ClassificationReport:
    family: FamilySpec
    slope: Slope
    results: list[Applicable]

    @property
    def applies(self) -> bool:
        return any(r.holds for r in self.results)

    def to_json(self) -> dict:
        return {"family": self.family.to_json(), "slope": str(self.slope),
                "applies": self.applies, "results": [r.to_json() for r in self.results]}


def _cert(holds: bool, build: Callable[[], Any]):
    return build if holds else None


def classify(f: FamilySpec, s: Slope) -> ClassificationReport:
    m, n = s.m, s.n
    P = f.params
    out: list[Applicable] = []
    if f.kind == "torus":
        p, q = int(P["p"]), int(P["q"])
        out.append(Applicable(
            "torus-knot commutator", "m/n != infinity", True, "certificate",
            "the commutator certificate lives in the knot group; if its image dies the "
            "quotient is cyclic and has ordinary torsion",
            lambda: torus_commutator_cert(p, q, s)))
    elif f.kind == "cable":
        p, q = int(P["p"]), int(P["q"])
        d = abs(p * q * n - m)
        note = "filled cable space is Seifert fibered with an index-|pqn-m| fiber"
        if d == 0:
            note = "filled cable space has a lens-space summand, giving ordinary torsion"
        out.append(Applicable("cable knot", f"|pqn - m| = {d} != 1", d != 1,
                              "external_citation", note))
    elif f.kind == "composite":
        out.append(Applicable("composite knot", f"n = {n} not in {{0, 1}}", n not in (0, 1),
                              "external_citation",
                              "the composing space filled at a non-integral slope is Seifert fibered"))
    elif f.kind == "genus1":
        p, q = int(P["p"]), int(P["q"])
        conds = [
            (1, f"m >= (2n-1)p: {m} >= {(2 * n - 1) * p}", m >= (2 * n - 1) * p),
            (2, f"q > 0 and m <= -(2n-1)q: q={q}, {m} <= {-(2 * n - 1) * q}",
             q > 0 and m <= -(2 * n - 1) * q),
            (3, f"q < 0 and m >= -(2n-1)q: q={q}, {m} >= {-(2 * n - 1) * q}",
             q < 0 and m >= -(2 * n - 1) * q),
        ]
        for c, text, holds in conds:
            holds = holds and m != 0
            out.append(Applicable(f"genus-one two-bridge case {c}", text, holds, "certificate",
                                  build=_cert(holds, lambda c=c: genus1_cert(p, q, s, c))))
    elif f.kind == "diagram":
        d = P["diagram"]
        _, data = wirtinger(d)
        p, k = data.crossings, data.negatives
        holds = data.single_run and p >= 3 and m >= 1 and m - n * (p - k) >= 0
        cond = f"m - n(p - k) = {m - n * (p - k)} >= 0 with p={p}, k={k}"
        if not data.single_run:
            cond += "; negative crossings not all under the base overarc"
        out.append(Applicable("diagram with negatives under one overarc", cond, holds,
                              "certificate", build=_cert(holds, lambda: positive_diagram_cert(d, s))))
    elif f.kind == "axiomatic_disk":
        pc, qc = int(P.get("p_count", 0)), int(P.get("q_count", 0))
        if pc:
            holds, cond = m >= pc * n, f"m/n >= {pc}"
        else:
            holds, cond = m <= -qc * n, f"m/n <= {-qc}"
        out.append(Applicable("singular spanning disk", cond, holds, "certificate",
                              build=_cert(holds, lambda: singular_disk_cert(
                                  P["presentation"], pc, qc, s, P.get("conjugators")))))
    elif f.kind == "whitehead":
        w = int(P["omega"])
        if w >= 0:
            out.append(Applicable("generalized Whitehead double", "omega < 0", False,
                                  "external_citation"))
        else:
            holds = m >= 2 * abs(w) * n
            out.append(Applicable(
                "generalized Whitehead double", f"r >= 2|omega| = {2 * abs(w)}", holds,
                "external_citation",
                f"read as a (2|omega|, 0) clasp disk; the literal bound r >= 2*omega = {2 * w} "
                "would hold for almost every slope"))
    elif f.kind == "montesinos":
        mr = montesinos_c(P["tangles"])
        holds = mr.condition_star and m >= mr.c * n
        out.append(Applicable("Montesinos clasp disk", f"tangle-shape condition and r >= c(K) = {mr.c}",
                              holds, "external_citation",
                              f"literal signed formula gives {mr.c_literal}"))
    return ClassificationReport(f, s, out)


# --------------------------------------------------------------------------
# Montesinos tangles


@dataclass(frozen=True)
class MontesinosReport:
    c: int
    c_literal: int
    condition_star: bool
    clauses: dict

    def to_json(self) -> dict:
        return {"c": self.c, "c_literal": self.c_literal, "condition_star": self.condition_star,
                "clauses": self.clauses, "threshold": f"r >= {self.c}"}


def montesinos_c(tangles: Sequence[Sequence[int]]) -> MontesinosReport:
    """Clasp count and the tangle-shape condition for ``M(R_1, ..., R_m)``.

    Entries are indexed from 1 within each tangle, so "odd" and "even" refer to
    positions 1, 3, ... and 2, 4, ...
    """
    if not tangles:
        raise ValueError("need at least one tangle")
    rows = []
    for i, t in enumerate(tangles):
        if not t or not all(isinstance(a, int) and not isinstance(a, bool) for a in t):
            raise ValueError(f"tangle {i} must be a non-empty list of integers")
        rows.append(list(t))
    inner, last = rows[:-1], rows[-1]
    odd = lambda t: t[0::2]
    even = lambda t: t[1::2]

    c1 = all(len(t) % 2 == 1 for t in inner) and len(last) % 2 == 0
    c2 = all(all(a % 2 == 0 for a in t) and all(a < 0 for a in even(t)) for t in inner)
    pos = all(a > 0 and a % 2 == 0 for a in odd(last)) and all(a % 2 == 1 for a in even(last))
    neg = all(a < 0 and a % 2 == 0 for a in odd(last)) and all(a % 2 == 0 for a in even(last))
    c3 = pos or neg
    literal = sum(sum(even(t)) for t in inner) + sum(abs(a) for a in odd(last))
    magnitude = sum(sum(abs(a) for a in even(t)) for t in inner) + sum(abs(a) for a in odd(last))
    clauses = {"types": c1, "odd_tangles": c2, "even_tangle": c3}
    return MontesinosReport(magnitude, literal, c1 and c2 and c3, clauses)


# --------------------------------------------------------------------------
# Alexander polynomial of the double twist knots


@dataclass(frozen=True)
class AlexanderReport:
    p: int
    q: int
    coefficients: tuple[int, int, int]  # closed form, t^-1, 1, t
    fox_coefficients: tuple[int, ...]  # computed from the Lin presentation
    roots: tuple[complex, complex]
    classification: str

    @property
    def closed_form_agrees(self) -> bool:
        return tuple(self.coefficients) == tuple(self.fox_coefficients)

    def to_json(self) -> dict:
        fmt = lambda z: [round(z.real, 12), round(z.imag, 12)]
        return {"p": self.p, "q": self.q, "coefficients": list(self.coefficients),
                "fox_coefficients": list(self.fox_coefficients),
                "closed_form_agrees": self.closed_form_agrees,
                "roots": [fmt(z) for z in self.roots], "classification": self.classification}


def classify_quadratic_roots(c0: int, c1: int, c2: int) -> tuple[tuple[complex, complex], str]:
    """Roots of ``c2 t^2 + c1 t + c0`` by the quadratic formula."""
    if c2 == 0:
        raise ValueError("leading coefficient vanishes")
    disc = c1 * c1 - 4 * c0 * c2
    r = cmath.sqrt(disc)
    roots = ((-c1 + r) / (2 * c2), (-c1 - r) / (2 * c2))
    if disc < 0:
        return roots, "no real roots"
    real = sorted(z.real for z in roots)
    if all(x > 0 for x in real):
        return roots, "all roots positive real"
    if all(x < 0 for x in real):
        return roots, "all roots negative real"
    return roots, "real roots of mixed sign"


def alexander_genus1(p: int, q: int) -> AlexanderReport:
    """Closed-form coefficients ``(-pq, 2pq - 1, -pq)`` next to the polynomial
    computed by Fox calculus; the root classification uses the computed one."""
    from ..oracle.fox import alexander_polynomial

    if not isinstance(p, int) or not isinstance(q, int) or p <= 0 or q == 0:
        raise PreconditionError(f"need p > 0 and q != 0, got ({p}, {q})")
    closed = (-p * q, 2 * p * q - 1, -p * q)
    fox = alexander_polynomial(lin_presentation(p, q))
    if len(fox) != 3:
        raise AssertionError(f"unexpected Alexander polynomial {fox}")
    roots, label = classify_quadratic_roots(fox[0], fox[1], fox[2])
    return AlexanderReport(p, q, closed, fox, roots, label)
