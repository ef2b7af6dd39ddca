import random

import pytest
from hypothesis import strategies as st

from gtorsion.word import Alphabet, Word

AB = Alphabet(("x", "y"))
XYZ = Alphabet(("x", "y", "z"))


def words(alphabet=AB, max_size=12):
    n = len(alphabet)
    letter = st.integers(1, n).flatmap(lambda g: st.sampled_from((g, -g)))
    return st.lists(letter, max_size=max_size).map(lambda ls: Word.from_letters(alphabet, ls))


def random_word(rng: random.Random, alphabet=AB, max_len=10) -> Word:
    n = len(alphabet)
    letters = [rng.choice((1, -1)) * rng.randint(1, n) for _ in range(rng.randint(0, max_len))]
    return Word.from_letters(alphabet, letters)


@pytest.fixture
def rng():
    return random.Random(20201)


ACCEPTANCE_LINES: dict[int, str] = {}


def record_criterion(number: int, ok: bool, detail: str) -> str:
    line = f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
    ACCEPTANCE_LINES[number] = line
    print(line)
    return line


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[n])
