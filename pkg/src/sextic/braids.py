"""The braid group on three strands and its action on the free group F3.

A braid is stored as ``(degree, reduced)`` where ``reduced`` is its image in
``B3 / <(s1 s2)^3>``, the free product of ``<x | x^2>`` and ``<y | y^3>`` with
``x = s1 s2 s1`` and ``y = s1 s2``.  The reduced part is an alternating
sequence of syllables: ``0`` for ``x``, ``1`` for ``y`` and ``2`` for ``y^2``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .words import Word, WordSyntaxError, comm, conj, inv, mul, power, reduce_word, substitute

X, Y, YY = 0, 1, 2
_SYLLABLE_DEGREE = {X: 3, Y: 2, YY: 4}
_SYLLABLE_WORD = {X: (1, 2, 1), Y: (1, 2), YY: (1, 2, 1, 2)}

A1, A2, A3 = (1,), (2,), (3,)
RHO = (1, 2, 3)


def _reduce_syllables(seq: Iterable[int]) -> tuple:
    out: list[int] = []
    for s in seq:
        if not out:
            out.append(s)
            continue
        t = out[-1]
        if s == X and t == X:
            out.pop()
        elif s != X and t != X:
            k = (s + t) % 3
            out.pop()
            if k:
                out.append(k)
        else:
            out.append(s)
    return tuple(out)


def _invert_syllables(seq: Sequence[int]) -> tuple:
    return tuple(X if s == X else 3 - s for s in reversed(seq))


@dataclass(frozen=True)
class Braid3:
    degree: int
    reduced: tuple = ()

    def __post_init__(self):
        d0 = sum(_SYLLABLE_DEGREE[s] for s in self.reduced)
        if (self.degree - d0) % 6:
            raise ValueError("degree is inconsistent with the reduced part")

    def __mul__(self, other: "Braid3") -> "Braid3":
        return Braid3(self.degree + other.degree, _reduce_syllables(self.reduced + other.reduced))

    def inverse(self) -> "Braid3":
        return Braid3(-self.degree, _invert_syllables(self.reduced))

    def __pow__(self, n: int) -> "Braid3":
        base = self if n >= 0 else self.inverse()
        out = IDENTITY
        for _ in range(abs(n)):
            out = out * base
        return out

    def conjugate(self, by: "Braid3") -> "Braid3":
        """``by * self * by^-1``."""
        return by * self * by.inverse()

    @property
    def reduced_part(self) -> "Braid3":
        """A lift of the reduced image (the lowest-degree one with that image)."""
        return Braid3(sum(_SYLLABLE_DEGREE[s] for s in self.reduced), self.reduced)

    def word(self) -> tuple:
        """A braid word (letters +-1, +-2) representing this braid."""
        letters: list[int] = []
        for s in self.reduced:
            letters.extend(_SYLLABLE_WORD[s])
        d0 = sum(_SYLLABLE_DEGREE[s] for s in self.reduced)
        k = (self.degree - d0) // 6
        twist = (1, 2) * 3 if k > 0 else (-2, -1) * 3
        letters.extend(twist * abs(k))
        return tuple(letters)

    def act(self, w: Sequence[int]) -> Word:
        return act_word(self.word(), w)

    def images(self) -> tuple:
        return tuple(self.act(g) for g in (A1, A2, A3))

    def relators(self) -> list:
        """The braid relations ``b(a_i) a_i^-1`` for ``i = 1, 2, 3``."""
        return [mul(img, inv(g)) for img, g in zip(self.images(), (A1, A2, A3))]

    def to_text(self) -> str:
        return format_braid(self.word())


IDENTITY = Braid3(0, ())
FULL_TWIST = Braid3(6, ())  # (s1 s2)^3, central


def sigma(i: int) -> Braid3:
    """``s_i`` with ``i`` read mod 3, where ``s3 = s1^-1 s2 s1``."""
    i = (i - 1) % 3 + 1
    if i == 1:
        return Braid3(1, (YY, X))
    if i == 2:
        return Braid3(1, (X, YY))
    return sigma(1).inverse() * sigma(2) * sigma(1)


def from_word(word: Sequence[int]) -> Braid3:
    """Normal form of a braid word over letters +-1, +-2, +-3 (``3`` is s3)."""
    out = IDENTITY
    for x in word:
        b = sigma(abs(x))
        out = out * (b if x > 0 else b.inverse())
    return out


braid_normal_form = from_word


def braid(*letters: int) -> Braid3:
    return from_word(letters)


# images of the generators under s1^{+-1}, s2^{+-1}
_ACTION = {
    1: ((1, 2, -1), (1,), (3,)),
    -1: ((2,), (-2, 1, 2), (3,)),
    2: ((1,), (2, 3, -2), (2,)),
    -2: ((1,), (3,), (-3, 2, 3)),
}


@lru_cache(maxsize=None)
def _expand_sigma3(word: tuple) -> tuple:
    out: list[int] = []
    for x in word:
        if abs(x) == 3:
            out.extend((-1, 2, 1) if x > 0 else (-1, -2, 1))
        else:
            out.append(x)
    return tuple(out)


def act_word(braid_word: Sequence[int], w: Sequence[int]) -> Word:
    """Left action of a braid word on a free word: the rightmost letter acts first."""
    out = reduce_word(w)
    for x in reversed(_expand_sigma3(tuple(braid_word))):
        out = substitute(out, _ACTION[x])
    return out


def braid_act(b: Braid3 | Sequence[int], w: Sequence[int]) -> Word:
    if isinstance(b, Braid3):
        return b.act(w)
    return act_word(b, w)


# ---------------------------------------------------------------- transport

def edge_transport(start_index: int, end_index: int) -> Braid3:
    """Reduced monodromy along a skeleton edge of type ``[start, end]``."""
    i = (start_index - 1) % 3 + 1
    j = (end_index - 1) % 3 + 1
    if j == i % 3 + 1:
        return sigma(i).reduced_part
    if i == j % 3 + 1:
        return sigma(j).inverse().reduced_part
    return (sigma(i) * sigma(i - 1) * sigma(i)).reduced_part


class UnmarkedVertex(ValueError):
    pass


def transport(edge_types: Iterable[tuple], encompassed: int | None = None) -> Braid3:
    """Monodromy along a path given as a list of edge types ``(i, j)``.

    Transport is an anti-homomorphism of paths: each new edge multiplies
    on the left, so the last edge traversed is the leftmost factor.  Without
    ``encompassed`` the result is the lowest-degree lift of the reduced
    monodromy; for a closed path the caller supplies the total multiplicity
    of the encompassed fibers, which fixes the degree.
    """
    out = IDENTITY
    for pair in edge_types:
        if pair is None or None in pair:
            raise UnmarkedVertex("path passes through an unmarked vertex")
        out = edge_transport(*pair) * out
    if encompassed is None:
        return out.reduced_part
    return with_degree(out, encompassed)


def with_degree(b: Braid3, degree: int) -> Braid3:
    return Braid3(degree, b.reduced)


# --------------------------------------------------------- local monodromy

class InvalidValency(ValueError):
    pass


def local_monodromy(kind: str, valency: int = 1, marking_index: int = 1) -> Braid3:
    """Monodromy about a singular fiber, in the canonical basis of the marked vertex.

    ``kind`` is ``"A"`` or ``"D"`` for a region of the skeleton with
    ``valency`` black corners reached through the solid edge with index
    ``marking_index``; ``"E6"`` and ``"E8"`` are the triple-point fibers over
    singular black vertices, given here as full-twist powers before transport.
    """
    if kind in ("A", "D"):
        if valency < 1:
            raise InvalidValency(f"valency must be positive, got {valency}")
        b = sigma(marking_index + 1) ** valency
        return b * FULL_TWIST if kind == "D" else b
    if kind == "E6":
        return braid(1, 2) ** 4
    if kind == "E8":
        return braid(1, 2) ** 5
    raise ValueError(f"unknown fiber kind {kind!r}")


# ------------------------------------------------------ packages at infinity

class BranchRequired(ValueError):
    pass


@dataclass(frozen=True)
class InfinityPackage:
    e_type: str
    branch: int | None
    relators: tuple
    m_infinity: Braid3
    note: str = ""


def _e7_relators(branch: int) -> list:
    r3 = power(RHO, 3)
    rels = [comm(A2, A3)]
    rels += [comm(g, r3) for g in (A1, A2, A3)]
    twisted = mul(A2, A2, A3) if branch == 2 else mul(A2, A3, A3)
    rels += [comm(g, twisted) for g in (A1, A2, A3)]
    target = A2 if branch == 2 else A3
    rels.append(mul(RHO, RHO, A1, inv(target)))
    return rels


def infinity_package(e_type: str, branch: int | None = None) -> InfinityPackage:
    """Relations at infinity and the monodromy at infinity for a distinguished point.

    For ``E7`` the branch is the generator (2 or 3) attached to the
    distinguished branch of the node in the distinguished fiber.
    """
    if e_type == "E7":
        if branch not in (2, 3):
            raise BranchRequired("E7 needs branch 2 or 3")
        m = braid(1, 2) ** 9 * sigma(2) ** -2
        return InfinityPackage("E7", branch, tuple(_e7_relators(branch)), m)
    if e_type == "E8":
        rels = [
            mul(power(RHO, 3), inv(mul(A1, A2, A2))),
            mul(A3, inv(conj(A1, A2))),
            comm(A1, power(A2, 3)),
        ]
        m = braid(1, 2) ** 9 * braid(1, 2, 1).inverse()
        return InfinityPackage("E8", None, tuple(rels), m)
    if e_type == "E6":
        rels = [mul(power(RHO, 4), inv(power(mul(A2, A3), 3)))]
        m = braid(1, 2) ** 12 * sigma(2) ** -6
        return InfinityPackage("E6", None, tuple(rels), m,
                               note="the braid relations of m_infinity follow from the relator")
    raise ValueError(f"unknown point type {e_type!r}")


def m_infinity_relators(e_type: str) -> list:
    """Braid relations of the monodromy at infinity, unsimplified."""
    r3 = power(RHO, 3)
    if e_type == "E7":
        return [comm(A1, r3)] + [comm(g, mul(inv(r3), A2, A3)) for g in (A2, A3)]
    if e_type == "E8":
        a12 = mul(A1, A2)
        return [
            mul(A1, inv(conj(conj(A3, a12), inv(r3)))),
            comm(A2, mul(inv(r3), A1)),
            mul(A3, inv(conj(A1, inv(r3)))),
        ]
    if e_type == "E6":
        r4 = power(RHO, 4)
        return [comm(A1, r4)] + [comm(g, mul(r4, inv(power(mul(A2, A3), 3)))) for g in (A2, A3)]
    raise ValueError(f"unknown point type {e_type!r}")


def inclusion_images(e_type: str, basis: str = "c") -> tuple:
    """Images of the Milnor-ball generators in the basis ``a1, a2, a3``.

    ``basis="b"`` (E7 only) gives the images of ``b1, b2, b3``, the basis in
    which the local perturbation relations are written.
    """
    a23 = mul(A2, A3)
    if e_type == "E7":
        if basis == "b":
            return (
                (1, -2, 1, 3, -1, 2, -1),
                (1, -2, 1, 2, -1),
                (1,),
            )
        return (A1, A3, conj(A1, inv(a23)))
    if basis != "c":
        raise ValueError("the b basis exists only for E7")
    if e_type == "E8":
        return (conj(A3, mul(A1, A2)), A1, A3)
    if e_type == "E6":
        return (conj(A1, RHO), A1, conj(A1, inv(a23)))
    raise ValueError(f"unknown point type {e_type!r}")


def b_basis_from_c(images: Sequence[Sequence[int]]) -> tuple:
    """Express ``b1, b2, b3`` through images of ``c1, c2, c3``."""
    c1, c2, c3 = images
    c123 = mul(c1, c2, c3)
    return (conj(c2, c123), conj(c3, mul(c1, c2)), tuple(c1))


# --------------------------------------------------------------- text I/O

_BRAID_TOKEN = re.compile(r"^s([123])(?:\^(-?\d+))?$")


def parse_braid(text: str) -> tuple:
    letters: list[int] = []
    if text.strip() == "1":
        return ()
    for pos, tok in enumerate(text.split(), 1):
        m = _BRAID_TOKEN.match(tok)
        if not m:
            raise WordSyntaxError(f"unknown braid token {tok!r}", pos)
        g = int(m.group(1))
        e = int(m.group(2)) if m.group(2) is not None else 1
        letters.extend([g if e > 0 else -g] * abs(e))
    return tuple(letters)


def format_braid(word: Sequence[int]) -> str:
    if not word:
        return "1"
    parts = []
    for x in word:
        parts.append(f"s{abs(x)}" if x > 0 else f"s{abs(x)}^-1")
    return " ".join(parts)
