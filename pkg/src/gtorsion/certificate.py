"""Conjugate products and membership / generalized-torsion certificates.

A :class:`ConjugateProduct` with base ``g`` and conjugators ``x_1..x_k`` stands
for ``(x_1 g x_1^-1) ... (x_k g x_k^-1)``.  A :class:`MembershipCertificate`
claims ``target`` equals that product in a presented group and carries a
derivation log for ``realize * target^-1``.  A torsion certificate is the case
``target = 1`` plus a tag saying why the base is not itself trivial.

:class:`Member` is the builder used by the constructors: it keeps the product
and an :class:`~gtorsion.derivation.Equation` ``realize = element`` side by side,
so every combination step stays machine-checkable until it is flattened to a
log by :meth:`Member.certificate`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Sequence

from .derivation import (DEFAULT_MAX_LENGTH, DerivationLog, Equation, ProofError,
                         ReplayReport, replay)
from .presentation import Presentation, PresentationError
from .word import AlphabetMismatch, Word, commutator


class CertificateError(ValueError):
    """A certificate could not be built or decoded."""


# --------------------------------------------------------------------------
# conjugate products


@dataclass(frozen=True)
class ConjugateProduct:
    base: Word
    conjugators: tuple[Word, ...]

    def __post_init__(self):
        object.__setattr__(self, "conjugators", tuple(self.conjugators))
        for c in self.conjugators:
            if c.alphabet != self.base.alphabet:
                raise AlphabetMismatch("conjugator over a different alphabet than the base")

    @property
    def k(self) -> int:
        return len(self.conjugators)

    def realize(self) -> Word:
        acc = self.base.alphabet.identity()
        for x in self.conjugators:
            acc = acc * x * self.base * x.inverse()
        return acc

    def to_json(self) -> dict:
        return {"base": self.base.to_pairs(), "conjugators": [c.to_pairs() for c in self.conjugators]}


def realize(cp: ConjugateProduct) -> Word:
    return cp.realize()


def conjugate_product(cp: ConjugateProduct, y: Word) -> ConjugateProduct:
    """``y * cp * y^-1`` as a product: every conjugator is prefixed by ``y``."""
    return ConjugateProduct(cp.base, tuple(y * x for x in cp.conjugators))


def concat_products(c1: ConjugateProduct, c2: ConjugateProduct) -> ConjugateProduct:
    if c1.base != c2.base:
        raise CertificateError(f"cannot concatenate products with bases {c1.base} and {c2.base}")
    return ConjugateProduct(c1.base, c1.conjugators + c2.conjugators)


def power_product(g: Word, h: Word, n: int) -> ConjugateProduct:
    """``g^n h^n`` as ``n`` conjugates of ``gh``: conjugators ``g^(n-1), ..., g, 1``.

    Pure free-group identity; no relators are involved.
    """
    if n < 1:
        raise CertificateError(f"power must be positive, got {n}")
    return ConjugateProduct(g * h, tuple(g ** i for i in range(n - 1, -1, -1)))


# --------------------------------------------------------------------------
# certificates


@dataclass(frozen=True)
class Evidence:
    """Why the base element is non-trivial.

    ``abelian_order``: the base has order ``m`` in the abelianization.
    ``finite_quotient_witness``: permutation images of the generators that
    satisfy every relator and move the base.  ``assumed``: not machine-checked.
    """
    kind: str
    m: int | None = None
    images: tuple[tuple[int, ...], ...] | None = None
    note: str = ""

    KINDS = ("abelian_order", "finite_quotient_witness", "assumed")

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise CertificateError(f"unknown evidence kind {self.kind!r}")

    def to_json(self) -> dict:
        out: dict[str, Any] = {"kind": self.kind}
        if self.m is not None:
            out["m"] = self.m
        if self.images is not None:
            out["images"] = [list(p) for p in self.images]
        if self.note:
            out["note"] = self.note
        return out

    @classmethod
    def from_json(cls, data: dict) -> "Evidence":
        try:
            images = data.get("images")
            return cls(data["kind"], data.get("m"),
                       None if images is None else tuple(tuple(int(i) for i in p) for p in images),
                       data.get("note", ""))
        except (KeyError, TypeError) as exc:
            raise CertificateError(f"malformed evidence: {exc}") from exc


@dataclass(frozen=True)
class MembershipCertificate:
    presentation: Presentation
    target: Word
    product: ConjugateProduct
    proof: DerivationLog

    kind = "membership"

    def to_json(self) -> dict:
        return {"type": self.kind, "presentation": self.presentation.to_json(),
                "base": self.product.base.to_pairs(),
                "conjugators": [c.to_pairs() for c in self.product.conjugators],
                "target": self.target.to_pairs(), "proof": self.proof.to_json()}


@dataclass(frozen=True)
class TorsionCertificate:
    membership: MembershipCertificate
    evidence: Evidence
    meta: dict = field(default_factory=dict, compare=False)

    kind = "torsion"

    @property
    def presentation(self) -> Presentation:
        return self.membership.presentation

    @property
    def product(self) -> ConjugateProduct:
        return self.membership.product

    @property
    def proof(self) -> DerivationLog:
        return self.membership.proof

    @property
    def target(self) -> Word:
        return self.membership.target

    @property
    def k(self) -> int:
        return self.product.k

    def to_json(self) -> dict:
        out = self.membership.to_json()
        out["type"] = self.kind
        out["evidence"] = self.evidence.to_json()
        if self.meta:
            out["meta"] = self.meta
        return out


AnyCertificate = MembershipCertificate | TorsionCertificate


def certificate_from_json(data: dict) -> AnyCertificate:
    try:
        P = Presentation.from_json(data["presentation"])
        a = P.alphabet
        product = ConjugateProduct(Word.from_pairs(a, data["base"]),
                                   tuple(Word.from_pairs(a, c) for c in data["conjugators"]))
        target = Word.from_pairs(a, data.get("target", []))
        proof = DerivationLog.from_json(P, data["proof"])
    except (KeyError, TypeError, PresentationError, AlphabetMismatch) as exc:
        raise CertificateError(f"malformed certificate: {exc}") from exc
    except ValueError as exc:
        raise CertificateError(f"malformed certificate: {exc}") from exc
    mc = MembershipCertificate(P, target, product, proof)
    kind = data.get("type", "torsion" if "evidence" in data else "membership")
    if kind == "membership":
        return mc
    if kind != "torsion":
        raise CertificateError(f"unknown certificate type {kind!r}")
    ev = Evidence.from_json(data.get("evidence", {"kind": "assumed"}))
    return TorsionCertificate(mc, ev, data.get("meta", {}))


def lift_certificate(cert: AnyCertificate, Q: Presentation) -> AnyCertificate:
    """Re-home ``cert`` into ``Q``, whose relator list must extend the original's
    (as for a Dehn filling), so the proof log stays valid verbatim."""
    P = cert.presentation
    if Q.alphabet != P.alphabet or Q.relators[:len(P.relators)] != P.relators:
        raise CertificateError("target presentation does not extend the certificate's")
    mc = cert.membership if isinstance(cert, TorsionCertificate) else cert
    moved = MembershipCertificate(Q, mc.target, mc.product, mc.proof)
    if isinstance(cert, TorsionCertificate):
        return TorsionCertificate(moved, cert.evidence, cert.meta)
    return moved


# --------------------------------------------------------------------------
# builder


class Member:
    """``element`` lies in the semigroup generated by conjugates of ``base``,
    witnessed by ``product`` and an equation ``realize(product) = element``."""

    __slots__ = ("P", "base", "conjugators", "eq")

    def __init__(self, P: Presentation, base: Word, conjugators: Sequence[Word], eq: Equation):
        self.P, self.base, self.conjugators, self.eq = P, base, tuple(conjugators), eq

    @property
    def element(self) -> Word:
        return self.eq.rhs

    @property
    def product(self) -> ConjugateProduct:
        return ConjugateProduct(self.base, self.conjugators)

    @property
    def k(self) -> int:
        return len(self.conjugators)

    @classmethod
    def generator(cls, P: Presentation, base: Word) -> "Member":
        return cls(P, base, (P.alphabet.identity(),), Equation(P, base, base))

    @classmethod
    def empty(cls, P: Presentation, base: Word) -> "Member":
        e = P.alphabet.identity()
        return cls(P, base, (), Equation(P, e, e))

    @classmethod
    def base_power(cls, P: Presentation, base: Word, k: int) -> "Member":
        if k < 0:
            raise CertificateError(f"negative power {k} of the base is not a positive product")
        w = base ** k
        return cls(P, base, (P.alphabet.identity(),) * k, Equation(P, w, w))

    @classmethod
    def from_certificate(cls, cert: AnyCertificate) -> "Member":
        """Re-open a certificate for further building; the proof is replayed."""
        mc = cert.membership if isinstance(cert, TorsionCertificate) else cert
        P, cp = mc.presentation, mc.product
        r = cp.realize()
        if mc.proof.start != r * mc.target.inverse():
            raise CertificateError("proof does not start at realize * target^-1")
        try:
            closed = Equation.from_log(P, mc.proof)
        except ProofError as exc:
            raise CertificateError(f"invalid certificate: {exc}") from exc
        return cls(P, cp.base, cp.conjugators, Equation(P, r, mc.target, closed.factors))

    def _same(self, other: "Member"):
        if self.base != other.base:
            raise CertificateError(f"bases differ: {self.base} vs {other.base}")

    def __mul__(self, other: "Member") -> "Member":
        self._same(other)
        return Member(self.P, self.base, self.conjugators + other.conjugators, self.eq * other.eq)

    def conj(self, y: Word) -> "Member":
        return Member(self.P, self.base, tuple(y * x for x in self.conjugators), self.eq.conj(y))

    def inverted(self) -> "Member":
        """Membership for ``element^-1`` over the base ``base^-1``."""
        return Member(self.P, self.base.inverse(), tuple(reversed(self.conjugators)),
                      self.eq.inv())

    def rewrite(self, eq: Equation) -> "Member":
        """Follow ``element = eq.rhs`` given ``eq: element = something``."""
        return Member(self.P, self.base, self.conjugators, self.eq.then(eq))

    def to(self, target: Word, relator: int | None = None, note: str = "") -> "Member":
        """Rewrite the element to ``target`` by free reduction or one relator."""
        if self.element == target:
            return self
        return self.rewrite(Equation.by_relator(self.P, self.element, target, relator, note))

    def noted(self, note: str) -> "Member":
        return Member(self.P, self.base, self.conjugators, self.eq.noted(note))

    def certificate(self) -> MembershipCertificate:
        if not self.eq.check():
            raise AssertionError("builder equation witness is inconsistent")
        return MembershipCertificate(self.P, self.element, self.product, self.eq.to_log())

    def torsion(self, evidence: Evidence, meta: dict | None = None) -> TorsionCertificate:
        if not self.element.is_identity():
            raise CertificateError(f"element {self.element} is not the identity")
        return TorsionCertificate(self.certificate(), evidence, meta or {})


def product_of(members: Sequence[Member]) -> Member:
    out = members[0]
    for m in members[1:]:
        out = out * m
    return out


def power_pair(member: Member, g: Word, h: Word, n: int) -> Member:
    """From ``gh`` in the semigroup, ``g^n h^n`` in the semigroup."""
    if n < 1:
        raise CertificateError(f"power must be positive, got {n}")
    if member.element != g * h:
        raise CertificateError(f"member element {member.element} is not g*h = {g * h}")
    out = product_of([member.conj(g ** i) for i in range(n - 1, -1, -1)])
    return out.rewrite(Equation.free(member.P, out.element, g ** n * h ** n))


def commutator_powers(member: Member, g: Word, h: Word, n: int, m: int) -> Member:
    """From ``[g, h]`` in the semigroup, ``[g^n, h^m]`` in the semigroup."""
    if n < 1 or m < 1:
        raise CertificateError(f"powers must be positive, got ({n}, {m})")
    if member.element != commutator(g, h):
        raise CertificateError(f"member element {member.element} is not [g, h]")
    # [g, h] = g^-1 (h^-1 g h)
    step = power_pair(member, g.inverse(), h.inverse() * g * h, n)
    # g^-n (h^-1 g h)^n = (g^-n h^-1 g^n) h
    out = power_pair(step, g ** (-n) * h.inverse() * g ** n, h, m)
    return out.rewrite(Equation.free(member.P, out.element, commutator(g ** n, h ** m)))


def power_pair_certificate(cert: MembershipCertificate, g: Word, h: Word, n: int) -> MembershipCertificate:
    """``gh`` certified in the semigroup implies ``g^n h^n`` is.  The split of
    the target into ``g`` and ``h`` must be given; it is not unique."""
    return power_pair(Member.from_certificate(cert), g, h, n).certificate()


def commutator_powers_certificate(cert: MembershipCertificate, g: Word, h: Word, n: int, m: int) -> MembershipCertificate:
    return commutator_powers(Member.from_certificate(cert), g, h, n, m).certificate()


# --------------------------------------------------------------------------
# verification


@dataclass
class VerificationReport:
    verdict: str  # accepted | rejected | overflow
    kind: str
    k: int
    reasons: list[str] = field(default_factory=list)
    steps: int = 0
    max_length: int = 0
    failed_step: int | None = None
    h1_order: int | None = None
    claimed_order: int | None = None
    evidence: dict | None = None
    oracles: dict | None = None
    lengths: list[int] = field(default_factory=list, repr=False)

    @property
    def accepted(self) -> bool:
        return self.verdict == "accepted"

    def to_json(self) -> dict:
        out: dict[str, Any] = {"verdict": self.verdict, "type": self.kind, "k": self.k,
                               "steps": self.steps, "max_length": self.max_length,
                               "reasons": list(self.reasons)}
        if self.failed_step is not None:
            out["failed_step"] = self.failed_step
        if self.h1_order is not None:
            # the generalized-torsion order is at least the abelian order and at most k
            out["order_lower_bound"] = self.h1_order
            out["order_upper_bound"] = self.k
        if self.claimed_order is not None:
            out["claimed_order"] = self.claimed_order
        if self.evidence is not None:
            out["evidence"] = self.evidence
        if self.oracles is not None:
            out["oracles"] = self.oracles
        return out


def _check_quotient_witness(P: Presentation, base: Word, images) -> str | None:
    from .oracle.quotients import evaluate

    if images is None or len(images) != len(P.alphabet):
        return "finite quotient witness needs one permutation per generator"
    n = len(images[0])
    if any(sorted(p) != list(range(n)) for p in images):
        return "finite quotient witness contains a non-permutation"
    ident = tuple(range(n))
    if any(evaluate(images, r) != ident for r in P.relators):
        return "finite quotient witness does not satisfy every relator"
    if evaluate(images, base) == ident:
        return "finite quotient witness sends the base to the identity"
    return None


def verify(cert: AnyCertificate, max_length: int = DEFAULT_MAX_LENGTH, oracles: bool = False,
           trace: bool = False, coset_cap: int = 10_000, quotient_degree: int = 4,
           check_shadow: bool = False) -> VerificationReport:
    """Check a certificate; every failure is reported as a verdict, never raised."""
    from .oracle.smith import element_order_in_h1

    torsion = isinstance(cert, TorsionCertificate)
    mc = cert.membership if torsion else cert
    P, cp = mc.presentation, mc.product
    rep = VerificationReport("rejected", "torsion" if torsion else "membership", cp.k,
                             max_length=0)

    if cp.k == 0:
        rep.reasons.append("non-empty product required")
        return rep
    if torsion and cp.base.is_identity():
        rep.reasons.append("base element is the identity")
        return rep
    if torsion and not mc.target.is_identity():
        rep.reasons.append("torsion certificate target must be the identity")
        return rep
    try:
        expected = cp.realize() * mc.target.inverse()
    except AlphabetMismatch as exc:
        rep.reasons.append(f"alphabet mismatch: {exc}")
        return rep
    if mc.proof.start != expected:
        rep.reasons.append("proof does not start at realize * target^-1")
        return rep

    rr: ReplayReport = replay(P, mc.proof, max_length, check_shadow=check_shadow, trace=trace)
    rep.steps, rep.max_length, rep.lengths = rr.steps, rr.max_length, rr.lengths
    if not rr.accepted:
        rep.verdict = rr.verdict
        rep.failed_step = rr.failed_step
        rep.reasons.append(rr.error or "replay failed")
        return rep
    rep.reasons.append(f"replay reached the identity in {rr.steps} moves")

    if torsion:
        order = element_order_in_h1(P, cp.base)
        rep.h1_order = order
        rep.evidence = cert.evidence.to_json()
        if order == 0 or cp.k % order:
            rep.reasons.append(f"k * [base] != 0 in H_1 (order {order or 'infinite'}, k = {cp.k})")
            return rep
        ev = cert.evidence
        if ev.kind == "abelian_order":
            if ev.m != order:
                rep.reasons.append(f"claimed abelian order {ev.m} but H_1 order is {order}")
                return rep
            if order == 1:
                rep.reasons.append("abelian order 1 does not show the base is non-trivial")
                return rep
            if cp.k == ev.m:
                rep.claimed_order = ev.m
        elif ev.kind == "finite_quotient_witness":
            err = _check_quotient_witness(P, cp.base, ev.images)
            if err:
                rep.reasons.append(err)
                return rep
        else:
            rep.reasons.append("non-triviality of the base is assumed, not machine-checked")

    if oracles:
        rep.oracles = oracle_report(P, cp, mc.target, coset_cap, quotient_degree)
        if rep.oracles.get("contradiction"):
            rep.reasons.append("oracle contradiction: " + rep.oracles["contradiction"])
            return rep
    rep.verdict = "accepted"
    return rep


def oracle_report(P: Presentation, cp: ConjugateProduct, target: Word, coset_cap: int,
                  quotient_degree: int = 4, max_quotient_generators: int = 4) -> dict:
    """Independent cross-checks: the claimed equality must hold in every
    quotient the oracles can see."""
    from .oracle.coset import is_identity_perm, permutation_eval, todd_coxeter
    from .oracle.quotients import evaluate, finite_quotient_search
    from .oracle.smith import h1_invariants

    claim = cp.realize() * target.inverse()
    out: dict[str, Any] = {"h1": {"factors": h1_invariants(P)}}
    table = todd_coxeter(P, cap=coset_cap)
    coset: dict[str, Any] = {"status": table.status, "cap": coset_cap}
    if table.complete:
        coset["index"] = table.index
        if not is_identity_perm(permutation_eval(table, claim)):
            out["contradiction"] = "claimed identity acts non-trivially on cosets"
        coset["base_nontrivial"] = not is_identity_perm(permutation_eval(table, cp.base))
    out["coset"] = coset
    if len(P.alphabet) <= max_quotient_generators:
        qs = finite_quotient_search(P, degree=quotient_degree)
        ident = tuple(range(quotient_degree))
        bad = sum(1 for im in qs.homomorphisms if evaluate(im, claim) != ident)
        out["quotient_checks"] = len(qs.homomorphisms)
        out["quotient_degree"] = quotient_degree
        out["base_nontrivial_in_quotients"] = sum(
            1 for im in qs.homomorphisms if evaluate(im, cp.base) != ident)
        if bad and "contradiction" not in out:
            out["contradiction"] = f"claimed identity fails in {bad} permutation quotients"
    else:
        out["quotient_checks"] = 0
        out["quotient_note"] = f"skipped: more than {max_quotient_generators} generators"
    return out
