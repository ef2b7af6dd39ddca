"""Free-group words in syllable (run-length) form.

A word is a tuple of ``(generator index, exponent)`` pairs over an
:class:`Alphabet`.  Adjacent syllables always carry distinct generators and
no exponent is zero, so structural equality coincides with equality in the
free group.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

Syllable = tuple[int, int]


class AlphabetMismatch(ValueError):
    pass


@dataclass(frozen=True)
class Generator:
    symbol: str
    index: int


@dataclass(frozen=True)
class Alphabet:
    """Ordered, interned generator names.  Distinct symbols get distinct ids."""

    symbols: tuple[str, ...]
    _index: dict = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        symbols = tuple(self.symbols)
        object.__setattr__(self, "symbols", symbols)
        for s in symbols:
            if not isinstance(s, str) or not s or "^" in s or any(c.isspace() for c in s):
                raise ValueError(f"invalid generator symbol {s!r}")
        index = {s: i for i, s in enumerate(symbols)}
        if len(index) != len(symbols):
            raise ValueError(f"duplicate generator symbols in {symbols}")
        object.__setattr__(self, "_index", index)

    def __len__(self):
        return len(self.symbols)

    def __iter__(self):
        return iter(self.symbols)

    def __contains__(self, symbol):
        return symbol in self._index

    def index(self, symbol: str) -> int:
        try:
            return self._index[symbol]
        except KeyError:
            raise AlphabetMismatch(f"unknown generator {symbol!r}") from None

    def generator(self, symbol: str) -> Generator:
        return Generator(symbol, self.index(symbol))

    def extend(self, symbols: Iterable[str]) -> "Alphabet":
        return Alphabet(self.symbols + tuple(symbols))

    def gen(self, symbol: str) -> "Word":
        return Word(self, ((self.index(symbol), 1),))

    def gens(self) -> list["Word"]:
        return [Word(self, ((i, 1),)) for i in range(len(self.symbols))]

    def identity(self) -> "Word":
        return Word(self, ())


def _reduce(syllables: Iterable[Syllable]) -> tuple[Syllable, ...]:
    out: list[Syllable] = []
    for g, e in syllables:
        if e == 0:
            continue
        if out and out[-1][0] == g:
            s = out[-1][1] + e
            if s:
                out[-1] = (g, s)
            else:
                out.pop()
        else:
            out.append((g, e))
    return tuple(out)


class Word:
    """Reduced word in the free group on ``alphabet``.

    The constructor always normalizes, so any raw syllable sequence is
    accepted.  Words are immutable and hashable.
    """

    __slots__ = ("alphabet", "syllables", "_hash")

    def __init__(self, alphabet: Alphabet, syllables: Iterable[Syllable] = ()):
        self.alphabet = alphabet
        syl = _reduce(syllables)
        n = len(alphabet)
        for g, _ in syl:
            if not 0 <= g < n:
                raise AlphabetMismatch(f"generator index {g} outside alphabet of size {n}")
        self.syllables = syl
        self._hash = None

    # construction helpers -------------------------------------------------

    @classmethod
    def from_pairs(cls, alphabet: Alphabet, pairs: Iterable[Sequence]) -> "Word":
        syl = []
        for pair in pairs:
            sym, exp = pair
            if not isinstance(exp, int) or isinstance(exp, bool):
                raise ValueError(f"exponent must be an integer, got {exp!r}")
            syl.append((alphabet.index(sym), exp))
        return cls(alphabet, syl)

    @classmethod
    def parse(cls, alphabet: Alphabet, text: str) -> "Word":
        """Parse ``"a^3 t^-1 b"``; ``"1"`` or blank is the identity."""
        text = text.strip()
        if text in ("", "1"):
            return cls(alphabet, ())
        syl = []
        for tok in re.split(r"[\s*]+", text):
            if not tok:
                continue
            sym, _, exp = tok.partition("^")
            syl.append((alphabet.index(sym), int(exp) if exp else 1))
        return cls(alphabet, syl)

    @classmethod
    def from_letters(cls, alphabet: Alphabet, letters: Iterable[int]) -> "Word":
        """Letters are signed 1-based generator ids: ``+(i+1)`` or ``-(i+1)``."""
        return cls(alphabet, ((abs(x) - 1, 1 if x > 0 else -1) for x in letters))

    # views ------------------------------------------------------------------

    def to_pairs(self) -> list[list]:
        return [[self.alphabet.symbols[g], e] for g, e in self.syllables]

    def letters(self) -> list[int]:
        out = []
        for g, e in self.syllables:
            s = g + 1 if e > 0 else -(g + 1)
            out.extend([s] * abs(e))
        return out

    def __len__(self):
        return sum(abs(e) for _, e in self.syllables)

    def is_identity(self) -> bool:
        return not self.syllables

    def exponent_sums(self) -> list[int]:
        sums = [0] * len(self.alphabet)
        for g, e in self.syllables:
            sums[g] += e
        return sums

    # algebra ----------------------------------------------------------------

    def _check(self, other: "Word"):
        if not isinstance(other, Word):
            raise TypeError(f"expected Word, got {type(other).__name__}")
        if other.alphabet is not self.alphabet and other.alphabet != self.alphabet:
            raise AlphabetMismatch(
                f"alphabets differ: {self.alphabet.symbols} vs {other.alphabet.symbols}")

    def __mul__(self, other: "Word") -> "Word":
        self._check(other)
        return Word(self.alphabet, self.syllables + other.syllables)

    def inverse(self) -> "Word":
        return Word(self.alphabet, ((g, -e) for g, e in reversed(self.syllables)))

    __invert__ = inverse

    def __pow__(self, k: int) -> "Word":
        if k < 0:
            return self.inverse() ** (-k)
        if k == 0 or not self.syllables:
            return Word(self.alphabet, ())
        if len(self.syllables) == 1:
            g, e = self.syllables[0]
            return Word(self.alphabet, ((g, e * k),))
        return Word(self.alphabet, self.syllables * k)

    def insert(self, position: int, other: "Word") -> "Word":
        """Splice ``other`` in at a letter position, then reduce."""
        self._check(other)
        if not 0 <= position <= len(self):
            raise IndexError(f"position {position} outside [0, {len(self)}]")
        head, tail, seen = [], list(self.syllables), 0
        while tail and seen + abs(tail[0][1]) <= position:
            head.append(tail.pop(0))
            seen += abs(head[-1][1])
        if seen < position:
            g, e = tail.pop(0)
            sgn = 1 if e > 0 else -1
            cut = position - seen
            head.append((g, sgn * cut))
            tail.insert(0, (g, e - sgn * cut))
        return Word(self.alphabet, tuple(head) + other.syllables + tuple(tail))

    def prefix(self, position: int) -> "Word":
        return Word.from_letters(self.alphabet, self.letters()[:position])

    def lift(self, alphabet: Alphabet) -> "Word":
        """Re-express over a larger alphabet, matching generators by symbol."""
        if alphabet == self.alphabet:
            return self
        syms = self.alphabet.symbols
        return Word(alphabet, ((alphabet.index(syms[g]), e) for g, e in self.syllables))

    # comparisons and display -----------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Word):
            return NotImplemented
        return self.syllables == other.syllables and self.alphabet == other.alphabet

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.alphabet.symbols, self.syllables))
        return self._hash

    def __str__(self):
        if not self.syllables:
            return "1"
        syms = self.alphabet.symbols
        return " ".join(syms[g] if e == 1 else f"{syms[g]}^{e}" for g, e in self.syllables)

    def __repr__(self):
        return f"Word({str(self)!r})"


def free_reduce(alphabet: Alphabet, syllables: Iterable[Syllable]) -> Word:
    return Word(alphabet, syllables)


def inverse(w: Word) -> Word:
    return w.inverse()


def concat(u: Word, v: Word) -> Word:
    return u * v


def conjugate(g: Word, x: Word) -> Word:
    """Reduced ``x g x^-1``."""
    return x * g * x.inverse()


def commutator(g: Word, h: Word) -> Word:
    """Reduced ``g^-1 h^-1 g h``."""
    return g.inverse() * h.inverse() * g * h


def power(w: Word, k: int) -> Word:
    return w ** k


def product(words: Iterable[Word], alphabet: Alphabet | None = None) -> Word:
    words = list(words)
    if not words:
        if alphabet is None:
            raise ValueError("empty product needs an alphabet")
        return Word(alphabet, ())
    alpha = alphabet or words[0].alphabet
    syl: list[Syllable] = []
    for w in words:
        if w.alphabet != alpha:
            raise AlphabetMismatch("alphabets differ in product")
        syl.extend(w.syllables)
    return Word(alpha, syl)


def cyclic_reduction(w: Word) -> tuple[Word, Word]:
    """Split ``w = u c u^-1`` with ``c`` cyclically reduced; return ``(u, c)``."""
    letters = w.letters()
    i, j = 0, len(letters) - 1
    while i < j and letters[i] == -letters[j]:
        i += 1
        j -= 1
    a = w.alphabet
    return Word.from_letters(a, letters[:i]), Word.from_letters(a, letters[i:j + 1])


def conjugator_to(w: Word, r: Word) -> Word | None:
    """Find ``c`` with ``w == c r c^-1`` in the free group, or ``None``."""
    w._check(r)
    u, w0 = cyclic_reduction(w)
    v, r0 = cyclic_reduction(r)
    lw, lr = w0.letters(), r0.letters()
    if len(lw) != len(lr):
        return None
    if not lw:
        return u * v.inverse()
    doubled = lr + lr
    n = len(lr)
    for s in range(n):
        if doubled[s:s + n] == lw:
            # w0 = s1^-1 r0 s1 where s1 = first s letters of r0
            s1 = Word.from_letters(w.alphabet, lr[:s])
            return u * s1.inverse() * v.inverse()
    return None
