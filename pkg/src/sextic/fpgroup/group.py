"""Exact computations on finitely presented groups."""

from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass
from typing import Sequence

from ..words import Word, cyclic_reduce, inv, reduce_word
from . import _coset_py
from .presentation import FpPresentation
from .snf import abelian_invariants, primary_factors, smith_normal_form

LimitExceeded = _coset_py.LimitExceeded

if os.environ.get("SEXTIC_PURE_PYTHON"):
    _kernel = _coset_py
    KERNEL = "python"
else:
    try:
        from . import _coset as _kernel  # type: ignore[attr-defined]

        KERNEL = "compiled"
    except ImportError:  # extension not built
        _kernel = _coset_py
        KERNEL = "python"

DEFAULT_MAX_COSETS = 2_000_000


def _columns(word: Sequence[int]) -> list[int]:
    return [2 * (x - 1) if x > 0 else 2 * (-x - 1) + 1 for x in word]


@dataclass(frozen=True)
class CosetTable:
    """Complete, standardized coset table; coset 0 is the subgroup."""

    generator_count: int
    coset_count: int
    table: tuple
    complete: bool = True

    @property
    def ncols(self) -> int:
        return 2 * self.generator_count

    def image(self, coset: int, col: int) -> int:
        return self.table[coset * self.ncols + col]

    def act(self, coset: int, word: Sequence[int]) -> int:
        for col in _columns(word):
            coset = self.table[coset * self.ncols + col]
        return coset

    def rows(self) -> list[list[int]]:
        n = self.ncols
        return [list(self.table[c * n:(c + 1) * n]) for c in range(self.coset_count)]


def coset_enumerate(p: FpPresentation, subgroup_generators: Sequence[Word] = (),
                    max_cosets: int = DEFAULT_MAX_COSETS, kernel=None,
                    strategy: str = "relator_first") -> CosetTable:
    """Enumerate the cosets of the subgroup generated by ``subgroup_generators``.

    Raises :class:`LimitExceeded` if more than ``max_cosets`` cosets are live
    at any time; that outcome does not prove the index is infinite.
    """
    if strategy not in ("relator_first", "row_filling"):
        raise ValueError(f"unknown strategy {strategy!r}")
    impl = kernel or _kernel
    rels = [_columns(r) for r in p.relators]
    sub = [_columns(reduce_word(w)) for w in subgroup_generators]
    index, table = impl.enumerate_cosets(2 * p.generator_count, rels, sub, max_cosets,
                                         strategy == "row_filling")
    return CosetTable(p.generator_count, index, tuple(table))


def is_closed(table: CosetTable, p: FpPresentation, subgroup_generators: Sequence[Word] = ()) -> bool:
    """Every relator closes at every coset and every subgroup generator fixes coset 0."""
    n = table.ncols
    for c in range(table.coset_count):
        for col in range(n):
            d = table.image(c, col)
            if not 0 <= d < table.coset_count or table.image(d, col ^ 1) != c:
                return False
        for r in p.relators:
            if table.act(c, r) != c:
                return False
    return all(table.act(0, w) == 0 for w in subgroup_generators)


def order(p: FpPresentation, max_cosets: int = DEFAULT_MAX_COSETS) -> int:
    return coset_enumerate(p, (), max_cosets).coset_count


def index(p: FpPresentation, subgroup_generators: Sequence[Word],
          max_cosets: int = DEFAULT_MAX_COSETS) -> int:
    return coset_enumerate(p, subgroup_generators, max_cosets).coset_count


def element_order(p: FpPresentation, word: Sequence[int], max_cosets: int = DEFAULT_MAX_COSETS) -> int:
    """Order of ``word`` in a finite group, as ``|G| / [G : <word>]``."""
    if not reduce_word(word):
        return 1
    total = order(p, max_cosets)
    return total // index(p, [tuple(word)], max_cosets)


@dataclass(frozen=True)
class AbelianInvariants:
    torsion: tuple
    free_rank: int

    @property
    def is_trivial(self) -> bool:
        return not self.torsion and self.free_rank == 0

    @property
    def order(self):
        """Group order, or ``None`` when the free rank is positive."""
        if self.free_rank:
            return None
        out = 1
        for d in self.torsion:
            out *= d
        return out

    def primary(self) -> list[int]:
        return primary_factors(list(self.torsion))

    def as_dict(self) -> dict:
        return {"torsion": list(self.torsion), "free_rank": self.free_rank}


def relation_matrix(p: FpPresentation) -> list[list[int]]:
    n = p.generator_count
    rows = []
    for r in p.relators:
        row = [0] * n
        for x in r:
            row[abs(x) - 1] += 1 if x > 0 else -1
        rows.append(row)
    return rows


def abelianization(p: FpPresentation) -> AbelianInvariants:
    torsion, free = abelian_invariants(relation_matrix(p), p.generator_count)
    return AbelianInvariants(tuple(torsion), free)


def abelian_quotient_table(p: FpPresentation) -> CosetTable:
    """Coset table of the derived subgroup, built from the finite abelianization."""
    n = p.generator_count
    a = relation_matrix(p) or [[0] * n]
    _, d, v = smith_normal_form(a)
    mods = [d[i][i] if i < len(d) else 0 for i in range(n)]
    if any(m == 0 for m in mods):
        raise ValueError("abelianization is infinite; derived subgroup has infinite index")
    images = [[v[k][i] % mods[i] for i in range(n)] for k in range(n)]
    start = tuple([0] * n)
    seen = {start: 0}
    elems = [start]
    k = 0
    while k < len(elems):
        e = elems[k]
        k += 1
        for g in range(n):
            for sgn in (1, -1):
                f = tuple((x + sgn * y) % m for x, y, m in zip(e, images[g], mods))
                if f not in seen:
                    seen[f] = len(elems)
                    elems.append(f)
    table = []
    for e in elems:
        for g in range(n):
            for sgn in (1, -1):
                f = tuple((x + sgn * y) % m for x, y, m in zip(e, images[g], mods))
                table.append(seen[f])
    return CosetTable(n, len(elems), tuple(table))


def _schreier_tree(table: CosetTable) -> tuple[dict, list]:
    """BFS spanning tree: returns tree edges and coset representatives."""
    reps: list = [None] * table.coset_count
    reps[0] = ()
    tree = set()
    q = deque([0])
    while q:
        c = q.popleft()
        for col in range(table.ncols):
            d = table.image(c, col)
            if reps[d] is None:
                g = col // 2 + 1
                letter = g if col % 2 == 0 else -g
                reps[d] = reps[c] + (letter,)
                # store as the positive edge (source, generator)
                tree.add((c, g) if letter > 0 else (d, g))
                q.append(d)
    return tree, reps


def reidemeister_schreier(p: FpPresentation, table: CosetTable) -> tuple[FpPresentation, dict]:
    """Presentation of the subgroup whose coset table is ``table``.

    Returns the presentation on the Schreier generators together with a map
    from generator number to the word ``rep(c) g rep(c.g)^-1`` it stands for.
    """
    tree, reps = _schreier_tree(table)
    number: dict = {}
    meaning: dict = {}
    for c in range(table.coset_count):
        for g in range(1, p.generator_count + 1):
            if (c, g) not in tree:
                number[(c, g)] = len(number) + 1
                d = table.image(c, 2 * (g - 1))
                meaning[number[(c, g)]] = reduce_word(reps[c] + (g,) + inv(reps[d]))
    rels = []
    for c in range(table.coset_count):
        for r in p.relators:
            out = []
            cur = c
            for x in r:
                g = abs(x)
                if x > 0:
                    s = number.get((cur, g))
                    if s:
                        out.append(s)
                    cur = table.image(cur, 2 * (g - 1))
                else:
                    prev = table.image(cur, 2 * (g - 1) + 1)
                    s = number.get((prev, g))
                    if s:
                        out.append(-s)
                    cur = prev
            rels.append(reduce_word(out))
    if not number:
        return FpPresentation(1, ((1,),)), meaning
    return FpPresentation(len(number), tuple(rels)), meaning


def _canonical_relator(r: Word) -> Word:
    r = cyclic_reduce(r)
    if not r:
        return r
    candidates = []
    for w in (r, inv(r)):
        for i in range(len(w)):
            candidates.append(w[i:] + w[:i])
    return min(candidates, key=lambda w: (len(w), w))


def simplify(p: FpPresentation, max_length: int = 4) -> FpPresentation:
    """Tietze elimination of generators that occur exactly once in a short relator.

    Eliminating through long relators makes the remaining relators long, which
    hurts coset enumeration far more than a few extra generators do.
    """
    n = p.generator_count
    rels = {_canonical_relator(r) for r in p.relators}
    rels.discard(())
    alive = set(range(1, n + 1))
    while True:
        best = None
        for r in rels:
            counts: dict = {}
            for x in r:
                counts[abs(x)] = counts.get(abs(x), 0) + 1
            for g, k in counts.items():
                if k == 1 and (best is None or len(r) < len(best[0])):
                    best = (r, g)
        if best is None:
            break
        r, g = best
        if len(r) > max_length:
            break
        i = next(i for i, x in enumerate(r) if abs(x) == g)
        rot = r[i:] + r[:i]
        # rot = g^e * rest = 1  =>  g = rest^-1 (e=1) or g = rest (e=-1)
        rest = rot[1:]
        value = inv(rest) if rot[0] > 0 else tuple(rest)
        new = set()
        for s in rels:
            if s == r:
                continue
            out = []
            for x in s:
                if abs(x) == g:
                    out.extend(value if x > 0 else inv(value))
                else:
                    out.append(x)
            c = _canonical_relator(reduce_word(out))
            if c:
                new.add(c)
        rels = new
        alive.discard(g)
    order_ = sorted(alive)
    if not order_:
        return FpPresentation(1, ((1,),))
    renum = {g: i + 1 for i, g in enumerate(order_)}
    out = [tuple(renum[abs(x)] * (1 if x > 0 else -1) for x in r) for r in sorted(rels, key=lambda w: (len(w), w))]
    return FpPresentation(len(order_), tuple(out))


def subgroup_presentation(p: FpPresentation, subgroup_generators: Sequence[Word],
                          max_cosets: int = DEFAULT_MAX_COSETS) -> FpPresentation:
    table = coset_enumerate(p, subgroup_generators, max_cosets)
    return simplify(reidemeister_schreier(p, table)[0])


def derived_subgroup_presentation(p: FpPresentation) -> FpPresentation:
    """Presentation of ``[G,G]``; requires a finite abelianization."""
    return simplify(reidemeister_schreier(p, abelian_quotient_table(p))[0])


def is_perfect(p: FpPresentation) -> bool:
    return abelianization(p).is_trivial


def free_group(n: int) -> FpPresentation:
    return FpPresentation(n, ())

