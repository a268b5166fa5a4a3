"""Class-2 nilpotent quotients ``G / gamma_3(G)``.

Elements of the free class-2 group on ``n`` generators are pairs ``(e, c)``:
``e`` is the exponent vector and ``c`` the coordinates over the central
symbols ``t_ij = [x_i, x_j]`` (``i < j``), in the normal form
``x_1^e_1 ... x_n^e_n * prod t_ij^c_ij``.  Moving ``x_j`` past ``x_i`` to
the right costs ``t_ij^-1``, which gives the product rule used below.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import gcd
from typing import Sequence

from .group import AbelianInvariants, abelianization
from .presentation import FpPresentation
from .snf import diagonal, smith_normal_form


class Class2Group:
    def __init__(self, n: int):
        self.n = n
        self.pairs = list(combinations(range(n), 2))
        self.m = len(self.pairs)

    def identity(self):
        return (0,) * self.n, (0,) * self.m

    def mul(self, a, b):
        e, c = a
        f, d = b
        out = [x + y for x, y in zip(c, d)]
        for k, (i, j) in enumerate(self.pairs):
            out[k] -= e[j] * f[i]
        return tuple(x + y for x, y in zip(e, f)), tuple(out)

    def inverse(self, a):
        e, c = a
        out = [-x for x in c]
        for k, (i, j) in enumerate(self.pairs):
            out[k] -= e[j] * e[i]
        return tuple(-x for x in e), tuple(out)

    def power(self, a, k: int):
        if k < 0:
            a, k = self.inverse(a), -k
        result = self.identity()
        while k:
            if k & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            k >>= 1
        return result

    def letter(self, x: int):
        e = [0] * self.n
        e[abs(x) - 1] = 1 if x > 0 else -1
        return tuple(e), (0,) * self.m

    def evaluate(self, word: Sequence[int]):
        out = self.identity()
        for x in word:
            out = self.mul(out, self.letter(x))
        return out

    def wedge(self, u, v):
        return tuple(u[i] * v[j] - u[j] * v[i] for i, j in self.pairs)


def _kernel_rows(rows: list[list[int]]) -> list[list[int]]:
    """Basis of ``{y : y * rows == 0}`` over the integers."""
    if not rows:
        return []
    u, d, _ = smith_normal_form(rows)
    rank = sum(1 for x in diagonal(d) if x)
    return [u[i] for i in range(rank, len(rows))]


def _solve_left(rows: list[list[int]], target: Sequence[int]):
    """Integer ``y`` with ``y * rows == target``, or ``None``."""
    if not rows:
        return [] if not any(target) else None
    u, d, v = smith_normal_form(rows)
    tv = [sum(t * v[k][j] for k, t in enumerate(target)) for j in range(len(v))]
    z = [0] * len(rows)
    for j, val in enumerate(tv):
        dj = d[j][j] if j < len(d) else 0
        if dj == 0:
            if val:
                return None
        elif val % dj:
            return None
        else:
            z[j] = val // dj
    return [sum(z[i] * u[i][k] for i in range(len(rows))) for k in range(len(rows))]


@dataclass
class Class2Quotient:
    """Result of :func:`class2_quotient`."""

    generator_count: int
    abelianization: AbelianInvariants
    commutant: AbelianInvariants
    pairing: dict = field(default_factory=dict)
    _group: Class2Group = field(default=None, repr=False)
    _relators: list = field(default_factory=list, repr=False)
    _transform: list = field(default_factory=list, repr=False)
    _moduli: list = field(default_factory=list, repr=False)

    @property
    def is_abelian(self) -> bool:
        return self.commutant.is_trivial

    def central_class(self, vector: Sequence[int]) -> tuple:
        """Coordinates of a central vector in the commutant's invariant factors."""
        y = [sum(x * self._transform[k][j] for k, x in enumerate(vector))
             for j in range(len(self._transform))]
        out = []
        for val, mod in zip(y, self._moduli):
            if mod == 1:
                continue
            out.append(val % mod if mod else val)
        return tuple(out)

    def commutator_class(self, word: Sequence[int]):
        """Class in the quotient's commutant of a word with trivial abelian image.

        Returns ``None`` when the word does not lie in the commutant.
        """
        grp = self._group
        e, c = grp.evaluate(word)
        rows = [list(r[0]) for r in self._relators]
        y = _solve_left(rows, e)
        if y is None:
            return None
        prod = grp.identity()
        for k, r in zip(y, self._relators):
            prod = grp.mul(prod, grp.power(r, k))
        rest = grp.mul((e, c), grp.inverse(prod))
        assert not any(rest[0])
        return self.central_class(rest[1])

    def class_order(self, cls: tuple) -> int:
        """Order of an element of the commutant given by its coordinates (0 = infinite)."""
        mods = [m for m in self._moduli if m != 1]
        out = 1
        for val, mod in zip(cls, mods):
            if mod == 0:
                if val:
                    return 0
                continue
            o = mod // gcd(val, mod)
            out = out * o // gcd(out, o)
        return out

    def as_dict(self) -> dict:
        return {
            "abelianization": self.abelianization.as_dict(),
            "commutant": self.commutant.as_dict(),
            "pairing": {f"{i},{j}": list(v) for (i, j), v in sorted(self.pairing.items())},
        }


def class2_quotient(p: FpPresentation) -> Class2Quotient:
    n = p.generator_count
    grp = Class2Group(n)
    rels = [grp.evaluate(r) for r in p.relators]
    units = [tuple(int(k == i) for k in range(n)) for i in range(n)]
    central = [list(grp.wedge(u, e)) for u in units for e, _ in rels]
    for y in _kernel_rows([list(e) for e, _ in rels]):
        prod = grp.identity()
        for k, r in zip(y, rels):
            prod = grp.mul(prod, grp.power(r, k))
        assert not any(prod[0])
        central.append(list(prod[1]))
    central = [row for row in central if any(row)]
    m = grp.m
    if m == 0:
        return Class2Quotient(n, abelianization(p), AbelianInvariants((), 0), {}, grp, rels, [], [])
    if central:
        _, d, v = smith_normal_form(central)
        moduli = [d[j][j] if j < min(len(d), m) else 0 for j in range(m)]
    else:
        v = [[int(i == j) for j in range(m)] for i in range(m)]
        moduli = [0] * m
    torsion = tuple(x for x in moduli if x > 1)
    free = sum(1 for x in moduli if x == 0)
    result = Class2Quotient(n, abelianization(p), AbelianInvariants(torsion, free),
                            {}, grp, rels, v, moduli)
    for k, (i, j) in enumerate(grp.pairs):
        vec = [0] * m
        vec[k] = 1
        result.pairing[(i + 1, j + 1)] = result.central_class(vec)
    return result
