"""Replayable triviality proofs.

A :class:`DerivationLog` starts from a word and repeatedly splices in a
conjugated relator ``c r^e c^-1`` at a letter position, freely reducing after
every move.  Each move leaves the group element unchanged, so a log whose
replay ends at the empty word proves ``start = 1`` in the presented group.

:class:`Equation` is the builder-side counterpart: an equality ``lhs = rhs``
carried together with a list of conjugated relators whose free product is
``lhs rhs^-1``.  Equations compose (product, inverse, conjugation,
transitivity) and flatten to a log with :meth:`Equation.to_log`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .presentation import Presentation
from .word import AlphabetMismatch, Word, conjugator_to

DEFAULT_MAX_LENGTH = 1_000_000


class ProofError(ValueError):
    """A claimed equality could not be justified."""


class MoveError(ValueError):
    def __init__(self, message, step=None):
        super().__init__(message)
        self.step = step


@dataclass(frozen=True)
class Move:
    position: int
    relator_index: int
    exponent: int
    conjugator: Word
    note: str = ""

    def to_json(self) -> dict:
        out = {"pos": self.position, "rel": self.relator_index, "exp": self.exponent,
               "conj": self.conjugator.to_pairs()}
        if self.note:
            out["note"] = self.note
        return out

    @classmethod
    def from_json(cls, P: Presentation, data: dict) -> "Move":
        try:
            return cls(int(data["pos"]), int(data["rel"]), int(data["exp"]),
                       Word.from_pairs(P.alphabet, data.get("conj", [])), data.get("note", ""))
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed move: {exc}") from exc


@dataclass(frozen=True)
class DerivationLog:
    start: Word
    moves: tuple[Move, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "moves", tuple(self.moves))

    def __len__(self):
        return len(self.moves)

    def to_json(self) -> dict:
        return {"start": self.start.to_pairs(), "moves": [m.to_json() for m in self.moves]}

    @classmethod
    def from_json(cls, P: Presentation, data: dict) -> "DerivationLog":
        try:
            start = Word.from_pairs(P.alphabet, data["start"])
            moves = tuple(Move.from_json(P, m) for m in data.get("moves", []))
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed derivation log: {exc}") from exc
        return cls(start, moves)


@dataclass
class ReplayReport:
    accepted: bool
    final: Word
    steps: int
    max_length: int
    verdict: str  # "accepted" | "rejected" | "overflow"
    error: str | None = None
    failed_step: int | None = None
    lengths: list[int] = field(default_factory=list)

    def to_json(self) -> dict:
        out = {"verdict": self.verdict, "accepted": self.accepted, "steps": self.steps,
               "max_length": self.max_length, "final_length": len(self.final)}
        if self.error:
            out["error"] = self.error
        if self.failed_step is not None:
            out["failed_step"] = self.failed_step
        return out


def _move_word(P: Presentation, mv: Move) -> Word:
    if not 0 <= mv.relator_index < len(P.relators):
        raise MoveError(f"relator index {mv.relator_index} out of range")
    if mv.exponent not in (1, -1):
        raise MoveError(f"move exponent must be +1 or -1, got {mv.exponent}")
    if mv.conjugator.alphabet != P.alphabet:
        raise MoveError("conjugator over a different alphabet")
    c = mv.conjugator
    return c * P.relators[mv.relator_index] ** mv.exponent * c.inverse()


def apply_move(P: Presentation, w: Word, mv: Move) -> Word:
    ins = _move_word(P, mv)
    if not 0 <= mv.position <= len(w):
        raise MoveError(f"position {mv.position} outside [0, {len(w)}]")
    return w.insert(mv.position, ins)


def replay(P: Presentation, log: DerivationLog, max_length: int = DEFAULT_MAX_LENGTH,
           check_shadow: bool = False, trace: bool = False) -> ReplayReport:
    """Replay ``log`` in ``P``.

    ``check_shadow`` additionally tracks the unreduced product of conjugated
    relators and asserts ``current == (F_k ... F_1) * start`` freely at the end.
    """
    if log.start.alphabet != P.alphabet:
        return ReplayReport(False, log.start, 0, len(log.start), "rejected",
                            "start word over a different alphabet", 0)
    w = log.start
    peak = len(w)
    lengths = [peak] if trace else []
    shadow: list[Word] = []
    if peak > max_length:
        return ReplayReport(False, w, 0, peak, "overflow",
                            f"start length {peak} exceeds ceiling {max_length}", 0, lengths)
    for i, mv in enumerate(log.moves):
        try:
            if check_shadow:
                ins = _move_word(P, mv)
                if not 0 <= mv.position <= len(w):
                    raise MoveError(f"position {mv.position} outside [0, {len(w)}]")
                pre = w.prefix(mv.position)
                shadow.append(pre * ins * pre.inverse())
            w = apply_move(P, w, mv)
        except (MoveError, IndexError, AlphabetMismatch) as exc:
            return ReplayReport(False, w, i, peak, "rejected", f"step {i}: {exc}", i, lengths)
        n = len(w)
        peak = max(peak, n)
        if trace:
            lengths.append(n)
        if n > max_length:
            return ReplayReport(False, w, i + 1, peak, "overflow",
                                f"step {i}: length {n} exceeds ceiling {max_length}", i, lengths)
    if check_shadow:
        acc = log.start
        for f in shadow:
            acc = f * acc
        if acc != w:
            raise AssertionError("replay shadow mismatch: a move changed the group element")
    if w.is_identity():
        return ReplayReport(True, w, len(log.moves), peak, "accepted", lengths=lengths)
    return ReplayReport(False, w, len(log.moves), peak, "rejected",
                        f"final word {w} is not the identity", None, lengths)


def normalized_factors(P: Presentation, log: DerivationLog) -> list["Factor"]:
    """Rewrite every move as a position-0 insertion ``F_i``; the product
    ``F_k ... F_1 * start`` freely equals the replay result."""
    w = log.start
    out = []
    for i, mv in enumerate(log.moves):
        try:
            pre = w.prefix(mv.position)
            w = apply_move(P, w, mv)
        except (MoveError, IndexError) as exc:
            raise MoveError(f"step {i}: {exc}", i) from exc
        out.append(Factor(pre * mv.conjugator, mv.relator_index, mv.exponent, mv.note))
    return out


def compose_logs(P: Presentation, l1: DerivationLog, l2: DerivationLog) -> DerivationLog:
    """Log for ``start1 * start2``: ``l1``'s moves moved to position 0, then ``l2`` verbatim."""
    if l1.start.alphabet != l2.start.alphabet or l1.start.alphabet != P.alphabet:
        raise AlphabetMismatch("logs over different alphabets")
    moves = [Move(0, f.relator_index, f.exponent, f.conjugator, f.note)
             for f in normalized_factors(P, l1)]
    return DerivationLog(l1.start * l2.start, tuple(moves) + l2.moves)


# --------------------------------------------------------------------------
# Equation algebra


@dataclass(frozen=True)
class Factor:
    """``conjugator * relator^exponent * conjugator^-1``."""
    conjugator: Word
    relator_index: int
    exponent: int
    note: str = ""

    def word(self, P: Presentation) -> Word:
        c = self.conjugator
        return c * P.relators[self.relator_index] ** self.exponent * c.inverse()

    def conj(self, x: Word) -> "Factor":
        return Factor(x * self.conjugator, self.relator_index, self.exponent, self.note)

    def inv(self) -> "Factor":
        return Factor(self.conjugator, self.relator_index, -self.exponent, self.note)


class Equation:
    """``lhs = rhs`` in ``P``, witnessed by ``lhs rhs^-1 == prod(factors)`` freely."""

    __slots__ = ("P", "lhs", "rhs", "factors")

    def __init__(self, P: Presentation, lhs: Word, rhs: Word, factors: Sequence[Factor] = ()):
        self.P, self.lhs, self.rhs, self.factors = P, lhs, rhs, tuple(factors)

    # sources ----------------------------------------------------------------

    @classmethod
    def free(cls, P: Presentation, lhs: Word, rhs: Word) -> "Equation":
        if lhs != rhs:
            raise ProofError(f"not freely equal: {lhs}  vs  {rhs}")
        return cls(P, lhs, rhs)

    @classmethod
    def by_relator(cls, P: Presentation, lhs: Word, rhs: Word, relator: int | None = None,
                   note: str = "") -> "Equation":
        """Justify ``lhs = rhs`` when ``lhs rhs^-1`` is a conjugate of one relator^(+-1)."""
        w = lhs * rhs.inverse()
        if w.is_identity():
            return cls(P, lhs, rhs)
        indices = range(len(P.relators)) if relator is None else [relator]
        for i in indices:
            for e in (1, -1):
                c = conjugator_to(w, P.relators[i] ** e)
                if c is not None:
                    return cls(P, lhs, rhs, (Factor(c, i, e, note),))
        raise ProofError(f"{lhs} = {rhs} is not a single relator consequence")

    @classmethod
    def from_log(cls, P: Presentation, log: DerivationLog) -> "Equation":
        """``start = 1`` from an accepting log."""
        rep = replay(P, log)
        if not rep.accepted:
            raise ProofError(f"log does not replay to the identity: {rep.error}")
        fs = normalized_factors(P, log)
        return cls(P, log.start, P.alphabet.identity(), tuple(f.inv() for f in fs))

    # combinators ------------------------------------------------------------

    def then(self, other: "Equation") -> "Equation":
        """``a = b`` and ``b = c`` give ``a = c``."""
        if self.rhs != other.lhs:
            raise ProofError(f"cannot chain: {self.rhs}  vs  {other.lhs}")
        return Equation(self.P, self.lhs, other.rhs, self.factors + other.factors)

    def __mul__(self, other: "Equation") -> "Equation":
        # l1 l2 (r1 r2)^-1 = l1 (l2 r2^-1) l1^-1 . (l1 r1^-1)
        fs = tuple(f.conj(self.lhs) for f in other.factors) + self.factors
        return Equation(self.P, self.lhs * other.lhs, self.rhs * other.rhs, fs)

    def inv(self) -> "Equation":
        # l^-1 (r^-1)^-1 = l^-1 (l r^-1)^-1 l
        li = self.lhs.inverse()
        fs = tuple(f.inv().conj(li) for f in reversed(self.factors))
        return Equation(self.P, li, self.rhs.inverse(), fs)

    def conj(self, x: Word) -> "Equation":
        xi = x.inverse()
        return Equation(self.P, x * self.lhs * xi, x * self.rhs * xi,
                        tuple(f.conj(x) for f in self.factors))

    def flip(self) -> "Equation":
        """``b = a`` from ``a = b``; ``b a^-1`` is the inverse of the witness."""
        return Equation(self.P, self.rhs, self.lhs, tuple(f.inv() for f in reversed(self.factors)))

    def power(self, k: int) -> "Equation":
        if k < 0:
            return self.inv().power(-k)
        out = Equation(self.P, self.P.alphabet.identity(), self.P.alphabet.identity())
        for _ in range(k):
            out = out * self
        return out

    def noted(self, note: str) -> "Equation":
        return Equation(self.P, self.lhs, self.rhs,
                        tuple(Factor(f.conjugator, f.relator_index, f.exponent, f.note or note)
                              for f in self.factors))

    # checks and export ------------------------------------------------------

    def witness_word(self) -> Word:
        acc = self.P.alphabet.identity()
        for f in self.factors:
            acc = acc * f.word(self.P)
        return acc

    def check(self) -> bool:
        return self.witness_word() == self.lhs * self.rhs.inverse()

    def to_log(self) -> DerivationLog:
        """Log starting at ``lhs rhs^-1`` that cancels each witness factor in turn."""
        moves = tuple(Move(0, f.relator_index, -f.exponent, f.conjugator, f.note)
                      for f in self.factors)
        return DerivationLog(self.lhs * self.rhs.inverse(), moves)

    def __repr__(self):
        return f"Equation({self.lhs} = {self.rhs}; {len(self.factors)} factors)"


def chain(*eqs: Equation) -> Equation:
    out = eqs[0]
    for e in eqs[1:]:
        out = out.then(e)
    return out


def relator_uses(factors: Iterable[Factor]) -> dict[int, int]:
    out: dict[int, int] = {}
    for f in factors:
        out[f.relator_index] = out.get(f.relator_index, 0) + 1
    return out
