"""Free-group words as tuples of nonzero integers.

Letter ``i`` (1-based) stands for the i-th generator and ``-i`` for its
inverse.  Words are always kept freely reduced; the empty tuple is the
identity.
"""

from __future__ import annotations

import re
from typing import Iterable, Sequence

Word = tuple

_TOKEN = re.compile(r"^([a-z]+)(\d+)(?:\^(-?\d+))?$")


class WordSyntaxError(ValueError):
    """Raised when a word or braid string contains an unknown token."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (token {position})")
        self.position = position


def reduce_word(letters: Iterable[int]) -> Word:
    out: list[int] = []
    for x in letters:
        if x == 0:
            raise ValueError("letter 0 is not a generator")
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def mul(*words: Sequence[int]) -> Word:
    return reduce_word(x for w in words for x in w)


def inv(word: Sequence[int]) -> Word:
    return tuple(-x for x in reversed(word))


def power(word: Sequence[int], n: int) -> Word:
    base = tuple(word) if n >= 0 else inv(word)
    return reduce_word(base * abs(n))


def conj(word: Sequence[int], by: Sequence[int]) -> Word:
    """Return ``by * word * by^-1``."""
    return mul(by, word, inv(by))


def comm(a: Sequence[int], b: Sequence[int]) -> Word:
    """Commutator ``a b a^-1 b^-1``."""
    return mul(a, b, inv(a), inv(b))


def gen(i: int) -> Word:
    return (i,)


def cyclic_reduce(word: Sequence[int]) -> Word:
    w = list(reduce_word(word))
    while len(w) > 1 and w[0] == -w[-1]:
        w = w[1:-1]
    return tuple(w)


def substitute(word: Sequence[int], images: Sequence[Sequence[int]]) -> Word:
    """Apply the endomorphism sending generator i to ``images[i-1]``."""
    out: list[int] = []
    for x in word:
        img = images[abs(x) - 1]
        out.extend(img if x > 0 else inv(img))
    return reduce_word(out)


def exponent_sums(word: Sequence[int], n: int) -> list[int]:
    sums = [0] * n
    for x in word:
        sums[abs(x) - 1] += 1 if x > 0 else -1
    return sums


def parse_word(text: str, prefix: str = "a") -> Word:
    """Parse ``a1 a2^-1 a3^2`` (``1`` or empty string is the identity)."""
    letters: list[int] = []
    tokens = text.split()
    if tokens == ["1"]:
        return ()
    for pos, tok in enumerate(tokens, 1):
        m = _TOKEN.match(tok)
        if not m or m.group(1) != prefix or int(m.group(2)) < 1:
            raise WordSyntaxError(f"unknown token {tok!r}", pos)
        e = int(m.group(3)) if m.group(3) is not None else 1
        g = int(m.group(2))
        letters.extend([g if e > 0 else -g] * abs(e))
    return reduce_word(letters)


def format_word(word: Sequence[int], prefix: str = "a") -> str:
    if not word:
        return "1"
    parts = []
    i = 0
    while i < len(word):
        j = i
        while j < len(word) and word[j] == word[i]:
            j += 1
        g, e = abs(word[i]), (j - i) * (1 if word[i] > 0 else -1)
        parts.append(f"{prefix}{g}" if e == 1 else f"{prefix}{g}^{e}")
        i = j
    return " ".join(parts)
