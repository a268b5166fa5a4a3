"""From decorated skeletons to singularity sets, maximality certificates and groups."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from itertools import combinations
from math import gcd
from typing import Iterable, Sequence

from .braids import (A1, A2, A3, Braid3, from_word, inclusion_images, infinity_package)
from .fpgroup import (DEFAULT_MAX_COSETS, AbelianInvariants, FpPresentation, class2_quotient,
                      order)
from .fpgroup.group import relation_matrix
from .maps import BLACK, WHITE, CombMap, faces, validate_skeleton
from .monodromy import (Fiber, NoTrivalentVertex, fiber_lassos, is_trivalent, reference_corners,
                        region_is_flagged)
from .skeletons import (SexticModel, enumerate_e7_models, enumerate_skeletons,
                        find_splitting_markings, normalize_model)
from .fpgroup.snf import smith_normal_form
from .words import Word, comm, conj, cyclic_reduce, inv, mul, power, substitute


class MilnorBudgetViolated(ValueError):
    pass


class MultiplicityBudgetViolated(ValueError):
    pass


class NotMaximal(ValueError):
    def __init__(self, message: str, inequality: str):
        super().__init__(message)
        self.inequality = inequality


class UnknownRow(KeyError):
    pass


# ------------------------------------------------------- singularity types

_FAMILY_RANK = {"E": 0, "D": 1, "A": 2}
_E_RANK = {7: 0, 8: 1, 6: 2}
_TYPE_RE = re.compile(r"^(\d*)([ADE])(\d+)$")


@dataclass(frozen=True)
class SingularityType:
    family: str
    index: int

    def __post_init__(self):
        if self.family not in _FAMILY_RANK or self.index < 1:
            raise ValueError(f"bad singularity type {self.family}{self.index}")
        if self.family == "D" and self.index < 4:
            raise ValueError("D needs index at least 4")
        if self.family == "E" and self.index not in _E_RANK:
            raise ValueError("E needs index 6, 7 or 8")

    @property
    def milnor(self) -> int:
        return self.index

    @property
    def name(self) -> str:
        return f"{self.family}{self.index}"

    def sort_key(self) -> tuple:
        inner = _E_RANK[self.index] if self.family == "E" else -self.index
        return _FAMILY_RANK[self.family], inner

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class SingularitySet:
    points: tuple = ()

    @classmethod
    def of(cls, points: Iterable[SingularityType]) -> "SingularitySet":
        return cls(tuple(sorted(points, key=SingularityType.sort_key)))

    @classmethod
    def parse(cls, text: str) -> "SingularitySet":
        text = text.replace(" ", "").replace("⊕", "+")
        if text in ("", "0", "none"):
            return cls()
        points = []
        for part in text.split("+"):
            m = _TYPE_RE.match(part)
            if not m:
                raise ValueError(f"cannot parse singularity {part!r}")
            mult = int(m.group(1) or 1)
            points += [SingularityType(m.group(2), int(m.group(3)))] * mult
        return cls.of(points)

    @property
    def milnor(self) -> int:
        return sum(p.milnor for p in self.points)

    def __str__(self) -> str:
        if not self.points:
            return "none"
        parts = []
        for p in self.points:
            if parts and parts[-1][0] == p:
                parts[-1][1] += 1
            else:
                parts.append([p, 1])
        return "+".join(f"{k if k > 1 else ''}{p}" for p, k in parts)

    def __add__(self, other: "SingularitySet") -> "SingularitySet":
        return SingularitySet.of(self.points + other.points)

    def without(self, point: SingularityType) -> "SingularitySet":
        pts = list(self.points)
        pts.remove(point)
        return SingularitySet(tuple(pts))


E7 = SingularityType("E", 7)


@dataclass(frozen=True)
class FiberInfo:
    """A singular fiber of the trigonal model read off the skeleton."""

    kind: str
    point: SingularityType | None
    multiplicity: int
    unstable: bool = False


def fiber_data(model: SexticModel) -> list[FiberInfo]:
    m = model.skeleton
    flags = set(model.fiber_flags)
    bigon = model.bigon().boundary
    out = []
    for r in faces(m):
        d = r.black_corners
        if r.boundary == bigon:
            out.append(FiberInfo("F", E7, 2))
        elif region_is_flagged(m, r.boundary, flags):
            out.append(FiberInfo("D", SingularityType("D", d + 4), d + 6))
        elif d >= 2:
            out.append(FiberInfo("A", SingularityType("A", d - 1), d))
        elif d == 1:
            out.append(FiberInfo("A0*", None, 1))
    for v, cyc in enumerate(m.vertices):
        val = len(cyc)
        if m.vertex_color[v] == BLACK and val < 3:
            kind = "E6" if val % 3 == 1 else "E8"
            out.append(FiberInfo(kind, SingularityType("E", int(kind[1])), 6 + 2 * val))
        elif m.vertex_color[v] == WHITE and val == 1:
            if any(x in flags for x in cyc):
                out.append(FiberInfo("E7", E7, 9))
            else:
                out.append(FiberInfo("A1*", SingularityType("A", 1), 3, unstable=True))
    return out


def singularity_set(model: SexticModel, check: bool = True, k: int = 3) -> SingularitySet:
    """Singularities of the sextic: the bigon gives the distinguished E7."""
    data = fiber_data(model)
    result = SingularitySet.of(f.point for f in data if f.point is not None)
    if check:
        if result.milnor != 19:
            raise MilnorBudgetViolated(f"total Milnor number {result.milnor} != 19 for {result}")
        total = sum(f.multiplicity for f in data)
        if total != 6 * k:
            raise MultiplicityBudgetViolated(f"fiber multiplicities sum to {total}, not {6 * k}")
    return result


def fiber_multiplicities(model: SexticModel) -> list[int]:
    return [f.multiplicity for f in fiber_data(model)]


# ------------------------------------------------------------ maximality

@dataclass(frozen=True)
class MaximalityCertificate:
    k: int
    mu_sextic: int
    mu_trigonal: int
    unstable: int
    bound: int
    ncross: tuple  # (lhs, rhs) of the estimate for the curve without triple points
    two_k: tuple
    three_k: tuple

    @property
    def holds(self) -> bool:
        return self.mu_trigonal == self.bound and self.unstable == 0

    def as_dict(self) -> dict:
        return {
            "k": self.k, "mu_sextic": self.mu_sextic, "mu_trigonal": self.mu_trigonal,
            "unstable": self.unstable, "bound": self.bound, "ncross": list(self.ncross),
            "two_k": list(self.two_k), "three_k": list(self.three_k),
        }


def dessin_counts(m: CombMap) -> dict:
    """Vertex counts of the full dessin: skeleton vertices, edge midpoints and region centres."""
    blacks = [len(c) for v, c in enumerate(m.vertices) if m.vertex_color[v] == BLACK]
    whites = [len(c) for v, c in enumerate(m.vertices) if m.vertex_color[v] == WHITE]
    for d, e in m.edges():
        if m.color_of_dart(d) == BLACK and m.color_of_dart(e) == BLACK:
            whites.append(2)
    crosses = [r.black_corners for r in faces(m)]
    return {
        "black": len(blacks),
        "white": len(whites),
        "black_1mod3": sum(1 for x in blacks if x % 3 == 1),
        "black_2mod3": sum(1 for x in blacks if x % 3 == 2),
        "white_odd": sum(1 for x in whites if x % 2 == 1),
        "crosses": crosses,
        "deg_j": sum(blacks),
    }


def check_maximality(model: SexticModel, k: int = 3) -> MaximalityCertificate:
    """Certify that the trigonal model attains the Milnor bound with no unstable fibers.

    The estimates are evaluated on the curve with its triple points removed
    and then lifted back: each E-type point adds 6 to the Milnor number and
    removes one unstable fiber, each D-type point adds 5.
    """
    m = model.skeleton
    rep = validate_skeleton(m)
    c = dessin_counts(m)
    k0 = rep.degree // 3
    mu0 = sum(x - 1 for x in c["crosses"]) + c["white_odd"] + 2 * c["black_2mod3"]
    ncross = (mu0, c["black"] + c["white"] + c["white_odd"] + 2 * c["black_2mod3"] - 2)
    two_k = (2 * k0, c["black"] + c["white_odd"] + c["black_2mod3"])
    three_k = (3 * k0, c["white"] + c["black_1mod3"] + c["white_odd"] + 2 * c["black_2mod3"])
    unstable0 = c["black_1mod3"] + c["white_odd"] + c["black_2mod3"]
    data = fiber_data(model)
    e_points = sum(1 for f in data if f.kind in ("E6", "E8", "E7"))
    d_points = sum(1 for f in data if f.kind == "D")
    mu_bar = mu0 + 6 * e_points + 5 * d_points
    kk = k0 + e_points + d_points
    unstable = unstable0 - e_points
    cert = MaximalityCertificate(kk, mu_bar + 6, mu_bar, unstable, 5 * kk - 2 - unstable,
                                 ncross, two_k, three_k)
    if ncross[0] > ncross[1]:
        raise NotMaximal(f"Milnor estimate fails: {ncross[0]} > {ncross[1]}", "ncross")
    if ncross[0] != ncross[1]:
        raise NotMaximal("the dessin has extra critical values", "ncross")
    if two_k[0] != two_k[1]:
        raise NotMaximal(f"black vertex count {two_k[1]} != {two_k[0]}", "2k")
    if three_k[0] != three_k[1]:
        raise NotMaximal(f"white vertex count {three_k[1]} != {three_k[0]}", "3k")
    if kk != k:
        raise NotMaximal(f"model lives in Sigma_{kk}, expected Sigma_{k}", "k")
    if unstable:
        raise NotMaximal(f"{unstable} unstable fibers remain", "unstable")
    if mu_bar != cert.bound:
        raise NotMaximal(f"Milnor number {mu_bar} below the bound {cert.bound}", "mu")
    return cert


def passes_point_filter(sings: SingularitySet) -> bool:
    """An irreducible model may not carry a second odd-A, odd-D, any even-D or second E7."""
    rest = sings.without(E7) if E7 in sings.points else sings
    for p in rest.points:
        if p.family == "A" and p.index % 2 == 1:
            return False
        if p.family == "D":
            return False
        if p == E7:
            return False
    return True


# --------------------------------------------------------------- presentations

# the E6 fibers of the segment skeleton: the one next to the bigon, then the far
# one, whose relation is the omitted one
SEGMENT_E6_LASSO = from_word((-1,) + (1, 2) * 4 + (1,))
SEGMENT_FAR_E6_LASSO = from_word((1, 2) * 4)


def segment_lassos() -> tuple:
    """Lassos of the two E6 fibers of the segment skeleton, in tour order."""
    return SEGMENT_E6_LASSO, SEGMENT_FAR_E6_LASSO


def _lasso_relators(fibers: Sequence[Fiber], omit: int | None) -> list:
    others = [f for f in fibers if f.kind != "F"]
    rels = []
    for i, f in enumerate(others):
        if omit is not None and i == omit % len(others):
            continue
        rels += f.braid.relators()
    return rels


def has_trivalent_vertex(m: CombMap) -> bool:
    return any(is_trivalent(m, v) for v in range(m.vertex_count))


def assemble_presentation(model: SexticModel, corner: int | None = None, marking=None,
                          omit: int | None = -1) -> FpPresentation:
    """Presentation of the fundamental group of the sextic's complement.

    ``corner`` picks the reference vertex among :func:`reference_corners`
    (default: the first, whose branch is 2 when available).  ``omit`` is the
    position, among the fibers other than the bigon's in tour order, of the
    braid relation left out; the default drops the last one.
    """
    m = model.skeleton
    if not has_trivalent_vertex(m):
        return _segment_presentation(model)
    choices = dict(reference_corners(model))
    if not choices:
        raise NoTrivalentVertex("the bigon has no trivalent corner")
    if corner is None:
        corner = reference_corners(model)[0][0]
    if corner not in choices:
        raise ValueError(f"dart {corner} is not a trivalent bigon corner")
    fibers = fiber_lassos(model, corner, marking)
    rels = list(infinity_package(model.e_type, choices[corner]).relators)
    rels += _lasso_relators(fibers, omit)
    return FpPresentation(3, tuple(rels))


def _segment_presentation(model: SexticModel) -> FpPresentation:
    m = model.skeleton
    if m.vertex_count != 2 or any(len(c) != 1 for c in m.vertices):
        raise NoTrivalentVertex("only the segment skeleton is handled without trivalent vertices")
    rels = list(infinity_package(model.e_type, 2).relators)
    rels += SEGMENT_E6_LASSO.relators()
    return FpPresentation(3, tuple(rels))


def presentation_choices(model: SexticModel) -> list[tuple[int, int]]:
    """All ``(corner, omit)`` pairs accepted by :func:`assemble_presentation`."""
    if not has_trivalent_vertex(model.skeleton):
        return [(None, None)]
    out = []
    for corner, _ in reference_corners(model):
        n = sum(1 for f in fiber_lassos(model, corner) if f.kind != "F")
        out += [(corner, i) for i in range(n)]
    return out


def stem_corners(model: SexticModel) -> list[tuple[int, int]]:
    """Bigon corners whose third edge leads to a trivalent vertex carrying a loop."""
    m = model.skeleton
    pair = m.edge_pairing
    bigon = model.bigon().boundary
    on_bigon = set(bigon) | {pair[d] for d in bigon}
    out = []
    for corner, branch in reference_corners(model):
        v = m.vertex_of[corner]
        third = [d for d in m.vertices[v] if d not in on_bigon]
        if len(third) != 1:
            continue
        w = m.vertex_of[pair[third[0]]]
        if not is_trivalent(m, w):
            continue
        rest = [d for d in m.vertices[w] if d != pair[third[0]]]
        if len(rest) == 2 and pair[rest[0]] == rest[1]:
            out.append((corner, branch))
    return out


# ------------------------------------------------------------ hand relations

def leaf_relator(gen: Word, m: int) -> Word:
    """``(a1 g)^m a1 = g (a1 g)^m`` as a relator."""
    left = mul(power(mul(A1, gen), m), A1)
    right = mul(gen, power(mul(A1, gen), m))
    return mul(left, inv(right))


PLUS_LOOP = mul(inv(A1), A2, A1, inv(A3))
TRIANGLE_CUSP = (lambda x: mul(x, A2, x, inv(mul(A2, x, A2))))(mul(A1, A3, inv(A1)))
ROW4_EXTRA = mul(A1, inv(conj(A3, mul(A2, A1))))
ROW10_EXTRA = (
    mul(A2, A1, A2, A3, inv(mul(A1, A2, A3, A1))),
    mul(A3, A1, A2, A3, inv(mul(A1, A2, A3, A2))),
)
# corners of the region beyond the triangle next to the bigon, for the leaf rows
LEAF_PARTNER = {3: 5, 6: 3, 8: 2, 9: 1}


@lru_cache(maxsize=None)
def table_rows() -> tuple:
    text = resources.files("sextic").joinpath("data/tab_e7.json").read_text(encoding="utf-8")
    return tuple(json.loads(text)["rows"])


def table_row(row: int) -> dict:
    for r in table_rows():
        if r["row"] == row:
            return r
    raise UnknownRow(row)


def row_of_set(sings: SingularitySet) -> int | None:
    key = str(sings)
    for r in table_rows():
        if r["set"] == key:
            return r["row"]
    return None


def row_variants(row: int) -> tuple:
    r = table_row(row)
    return (1, 2) if r["starred"] else (1,)


def paper_relations(row: int, variant: int = 1) -> FpPresentation:
    """The hand-derived relator list for a row of the classification.

    For rows realized by two classes that differ by the selected branch,
    ``variant`` 2 is the other class: the leaf parameters are swapped, and
    the stem rows keep the same list since the two classes are conjugate.
    """
    r = table_row(row)
    if variant not in row_variants(row):
        raise UnknownRow(f"row {row} has no variant {variant}")
    rels = list(infinity_package("E7", 2).relators)
    method = r["method"]
    if method == "+loop":
        rels.append(PLUS_LOOP)
    elif method == "leaf":
        n = LEAF_PARTNER[row]
        m, n = (1, n) if variant == 1 else (n, 1)
        rels += [leaf_relator(A2, m), leaf_relator(A3, n)]
    elif method == "no.4":
        rels += [leaf_relator(A2, 3), leaf_relator(A3, 3), ROW4_EXTRA]
    elif method == "no.1":
        rels += [leaf_relator(A2, 2), leaf_relator(A3, 2), TRIANGLE_CUSP]
    elif method == "no.10":
        rels += list(ROW10_EXTRA)
    else:  # pragma: no cover - guarded by the data file
        raise UnknownRow(f"row {row} has unknown method {method}")
    return FpPresentation(3, tuple(rels))


# the first homology of the complement of an irreducible sextic
IRREDUCIBLE_H1 = 6


def hand_order(row: int, variant: int = 1, max_cosets: int = DEFAULT_MAX_COSETS) -> int:
    """Group order from the hand-derived relations alone.

    The stem rows give an infinite group whose class-2 quotient has central
    commutant of order 3; a quotient with cyclic first homology is then
    abelian, so the order is that of the homology.
    """
    p = paper_relations(row, variant)
    if table_row(row)["method"] != "+loop":
        return order(p, max_cosets)
    q = class2_quotient(p)
    if q.commutant.torsion != (3,) or q.commutant.free_rank:
        raise ValueError(f"row {row}: unexpected commutant {q.commutant}")
    if q.commutator_class(mul(A2, inv(A3))) is None:
        raise ValueError(f"row {row}: a2/a3 is not a commutator")
    return IRREDUCIBLE_H1


def model_variant(model: SexticModel) -> int:
    """Which :func:`paper_relations` variant describes ``model``."""
    sings = singularity_set(model)
    row = row_of_set(sings)
    if row is None:
        raise UnknownRow(str(sings))
    if len(row_variants(row)) == 1:
        return 1
    method = table_row(row)["method"]
    m = model.skeleton
    if method == "leaf":
        across = {d: r for r in faces(m) for d in r.boundary}[m.edge_pairing[model.dist]]
        return 1 if across.black_corners == 3 else 2
    stems = stem_corners(model)
    return 1 if stems and stems[0][1] == 2 else 2


# ------------------------------------------------------------ classification

@dataclass
class ClassificationRow:
    row: int
    singularity_set: str
    figure: str
    classes: tuple
    order: int | None
    s_perp: tuple
    models: list = field(default_factory=list)
    certificates: list = field(default_factory=list)

    @property
    def total_classes(self) -> int:
        return self.classes[0] + 2 * self.classes[1]

    def as_dict(self) -> dict:
        return {
            "row": self.row,
            "set": self.singularity_set,
            "figure": self.figure,
            "classes": list(self.classes),
            "order": self.order,
            "s_perp": list(self.s_perp),
            "models": list(self.models),
        }


def group_models_by_set(models: Iterable[SexticModel]) -> dict:
    out: dict = {}
    for model in models:
        out.setdefault(str(singularity_set(model)), []).append(model)
    return out


def classify_e7(max_cosets: int = DEFAULT_MAX_COSETS, with_orders: bool = True) -> list[ClassificationRow]:
    """The full classification: one row per singularity set, with group orders."""
    from .skeletons import deformation_classes

    models = enumerate_e7_models()
    for model in models:
        sings = singularity_set(model)
        if not passes_point_filter(sings):
            raise ValueError(f"model {model.code!r} fails the point filter")
    certificates = {model.code: check_maximality(model) for model in models}
    counts = {str(singularity_set(rep)): (nr, nc) for rep, nr, nc in deformation_classes(models)}
    by_set = group_models_by_set(models)
    rows = []
    for key, group in sorted(by_set.items(), key=lambda kv: row_of_set(SingularitySet.parse(kv[0])) or 99):
        row = row_of_set(SingularitySet.parse(key))
        if row is None:
            raise ValueError(f"set {key} is not in the table")
        golden = table_row(row)
        grp_order = None
        if with_orders:
            orders = {order(assemble_presentation(m), max_cosets) for m in group}
            if len(orders) != 1:
                raise ValueError(f"models of {key} give different orders {orders}")
            grp_order = orders.pop()
        rows.append(ClassificationRow(
            row, key, golden["figure"], counts[key], grp_order, tuple(golden["s_perp"]),
            [m.code.decode() for m in group], [certificates[m.code].as_dict() for m in group]))
    return rows


# ------------------------------------------------------------- perturbations

# E7 Dynkin graph: a chain 0-1-2-3-4-5 with node 6 attached to node 2
E7_DYNKIN_EDGES = ((0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (2, 6))

B1, B2, B3 = (1,), (2,), (3,)


def _braid_rel(a: Word, b: Word) -> Word:
    return mul(a, b, a, inv(mul(b, a, b)))


NONABELIAN_LOCAL = {
    "A4+A2": (_braid_rel(B1, B2),
              mul(power(mul(B2, B3), 2), B2, inv(mul(B3, power(mul(B2, B3), 2)))),
              mul(B2, inv(conj(B1, B3)))),
    "A3+A2+A1": (comm(B1, B3),
                 mul(power(mul(B1, B2), 2), inv(power(mul(B2, B1), 2))),
                 _braid_rel(B2, B3)),
    "A5+A1": (comm(B2, B3),
              mul(power(mul(B1, B2), 3), inv(power(mul(B2, B1), 3))),
              mul(B3, inv(conj(B2, B1)))),
    "D5+A1": (comm(B1, B2), comm(B1, B3), _braid_rel(B2, B3)),
    "A2+3A1": (comm(B1, B2), comm(B1, B3), _braid_rel(B2, B3)),
}
ABELIAN_LOCAL = (comm(B1, B2), comm(B1, B3), comm(B2, B3))


@dataclass(frozen=True)
class Perturbation:
    """A perturbation of one singular point of the sextic.

    ``local_relators`` are words in the Milnor-ball basis ``b1, b2, b3`` for
    an E7 point, and words in ``a1, a2, a3`` for the A-type points.
    ``drops`` lists relators of the base presentation that the perturbation
    replaces.
    """

    source: str
    result: SingularitySet
    nonabelian_local: bool
    local_relators: tuple
    drops: tuple = ()

    @property
    def proper(self) -> bool:
        return self.result.milnor < SingularitySet.parse(self.source).milnor


def _component_type(nodes: set, adj: dict) -> SingularityType:
    degs = {v: len(adj[v] & nodes) for v in nodes}
    branch = [v for v in nodes if degs[v] == 3]
    if not branch:
        return SingularityType("A", len(nodes))
    centre = branch[0]
    arms = []
    for start in adj[centre] & nodes:
        length, prev, cur = 1, centre, start
        while True:
            nxt = [w for w in adj[cur] & nodes if w != prev]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            length += 1
        arms.append(length)
    arms.sort()
    if arms[0] == 1 and arms[1] == 1:
        return SingularityType("D", arms[2] + 3)
    return SingularityType("E", sum(arms) + 1)


def induced_subgraph_type(subset: Iterable[int], edges=E7_DYNKIN_EDGES) -> SingularitySet:
    nodes = set(subset)
    adj: dict = {v: set() for v in range(7)}
    for a, b in edges:
        adj[a].add(b)
        adj[b].add(a)
    seen: set = set()
    points = []
    for v in sorted(nodes):
        if v in seen:
            continue
        comp = {v}
        stack = [v]
        while stack:
            x = stack.pop()
            for y in adj[x] & nodes:
                if y not in comp:
                    comp.add(y)
                    stack.append(y)
        seen |= comp
        points.append(_component_type(comp, adj))
    return SingularitySet.of(points)


def enumerate_e7_perturbations() -> list[Perturbation]:
    """All perturbations of an E7 point, one per isomorphism type of induced subgraph."""
    found: dict = {}
    for size in range(8):
        for subset in combinations(range(7), size):
            s = induced_subgraph_type(subset)
            found.setdefault(str(s), s)
    out = []
    for key, s in found.items():
        nonabelian = key in NONABELIAN_LOCAL
        rels = NONABELIAN_LOCAL[key] if nonabelian else ABELIAN_LOCAL
        out.append(Perturbation("E7", s, nonabelian, rels))
    out.sort(key=lambda p: (-p.result.milnor, str(p.result)))
    return out


def a_point_perturbations() -> list[Perturbation]:
    """Perturbations of the A4 and A2 points of the row-1 sextic."""
    return [
        Perturbation("A4", SingularitySet.parse("A3"), False, (mul(A1, inv(A2)),)),
        Perturbation("A4", SingularitySet.parse("A3"), False, (mul(A1, inv(A3)),)),
        Perturbation("A2", SingularitySet.parse("A1"), False,
                     (mul(A1, A3, inv(A1), inv(A2)),), drops=(TRIANGLE_CUSP,)),
    ]


def perturbed_presentation(row: int, perturbation: Perturbation, first_only: bool = False) -> FpPresentation:
    base = paper_relations(row)
    drops = {cyclic_reduce(r) for r in perturbation.drops}
    rels = [r for r in base.relators if r not in drops]
    if len(rels) + len(drops) != len(base.relators):
        raise ValueError("a replaced relator is missing from the base presentation")
    extra = perturbation.local_relators[:1] if first_only else perturbation.local_relators
    if perturbation.source == "E7":
        images = inclusion_images("E7", "b")
        extra = tuple(substitute(r, images) for r in extra)
    elif row != 1:
        raise ValueError("A-point perturbations are set up for row 1 only")
    return FpPresentation(3, tuple(rels) + tuple(extra))


def perturb_global(row: int, perturbation: Perturbation, max_cosets: int = DEFAULT_MAX_COSETS,
                   first_only: bool = False) -> int:
    """Order of the group after perturbing one point of the row's sextic."""
    return order(perturbed_presentation(row, perturbation, first_only), max_cosets)


def perturbed_set(row: int, perturbation: Perturbation) -> SingularitySet:
    base = SingularitySet.parse(table_row(row)["set"])
    source = SingularitySet.parse(perturbation.source).points[0]
    return base.without(source) + perturbation.result


# ---------------------------------------------------------------- split curves

@dataclass
class SplitRecord:
    singularity_set: str
    model: SexticModel
    degree: int
    stem: bool
    component_degrees: tuple
    commutant: AbelianInvariants
    budget_ok: bool
    note: str = ""

    @property
    def two_cubics(self) -> bool:
        return self.component_degrees == (3, 3)

    @property
    def abelian(self) -> bool:
        return self.commutant.is_trivial

    def as_dict(self) -> dict:
        return {
            "set": self.singularity_set,
            "code": self.model.code.decode(),
            "degree": self.degree,
            "stem": self.stem,
            "component_degrees": list(self.component_degrees),
            "two_cubics": self.two_cubics,
            "commutant": self.commutant.as_dict(),
            "abelian": self.abelian,
            "budget_ok": self.budget_ok,
            "note": self.note,
        }


def component_degrees(p: FpPresentation) -> tuple:
    """Degrees of the curve's components, read off the abelianization.

    Generators lying on one component become equal in homology; the single
    remaining relation is the degree vector.  Returns ``()`` when the
    homology does not have that shape.
    """
    rows = relation_matrix(p) or [[0] * p.generator_count]
    n = p.generator_count

    def in_lattice(vec) -> bool:
        _, d, v = smith_normal_form(rows)
        # vec is in the row lattice iff vec * V has entries divisible by the diagonal
        t = [sum(vec[k] * v[k][j] for k in range(n)) for j in range(n)]
        for j in range(n):
            dj = d[j][j] if j < len(d) else 0
            if dj == 0 and t[j] or dj and t[j] % dj:
                return False
        return True

    blocks: list = []
    for g in range(n):
        for b in blocks:
            vec = [0] * n
            vec[b[0]] += 1
            vec[g] -= 1
            if in_lattice(vec):
                b.append(g)
                break
        else:
            blocks.append([g])
    if len(blocks) > 2:
        return ()
    proj = []
    for r in rows:
        proj.append([sum(r[g] for g in b) for b in blocks])
    if len(blocks) == 1:
        g = 0
        for r in proj:
            g = gcd(g, r[0])
        return (g,)
    _, d, v = smith_normal_form(proj)
    if len(d) < 1 or d[0][0] == 0 or (len(d) > 1 and d[1][1] != 0):
        return ()
    # generator of the rank-one relation lattice
    g = 0
    first = None
    for r in proj:
        if any(r):
            first = r
            break
    if first is None:
        return ()
    h = gcd(abs(first[0]), abs(first[1]))
    prim = (first[0] // h, first[1] // h)
    for r in proj:
        k = r[0] // prim[0] if prim[0] else r[1] // prim[1]
        g = gcd(g, k)
    vec = tuple(abs(g * x) for x in prim)
    return tuple(sorted(vec))


def _split_candidates() -> Iterable[SexticModel]:
    # degree 9: the insertion without elementary transformations
    for m in enumerate_skeletons(9):
        if not find_splitting_markings(m):
            continue
        for r in faces(m):
            if r.black_corners == 2 and len(r.boundary) == 2:
                for dist in r.boundary:
                    yield SexticModel(m, dist)
    # degree 6 with one transformation: a D-type region or an E7 at a white leaf
    for m in enumerate_skeletons(6, require_no_singular_white=False):
        whites = [v for v in range(m.vertex_count) if m.vertex_color[v] == WHITE]
        if len(whites) > 1 or not find_splitting_markings(m):
            continue
        for r in faces(m):
            if r.black_corners != 2 or len(r.boundary) != 2:
                continue
            for dist in r.boundary:
                if whites:
                    yield SexticModel(m, dist, (m.vertices[whites[0]][0],))
                    continue
                for other in faces(m):
                    if other.boundary == r.boundary:
                        continue
                    dart = next(d for d in other.boundary if m.color_of_dart(d) == BLACK)
                    yield SexticModel(m, dist, (dart,))


def _budget_ok(model: SexticModel) -> bool:
    try:
        singularity_set(model)
        check_maximality(model)
    except (MilnorBudgetViolated, MultiplicityBudgetViolated, NotMaximal):
        return False
    return True


def split_analysis(include_non_stem: bool = False) -> list[SplitRecord]:
    """Reducible E7 models whose bigon sits on a stem ending in a loop.

    One record per model up to orientation-preserving isomorphism and
    complex conjugation.  Each record carries the commutant of the class-2
    nilpotent quotient of the group; the group is abelian exactly when that
    commutant is trivial, because the stem forces a central commutant.
    """
    records: dict = {}
    for raw in _split_candidates():
        if not reference_corners(raw):
            continue
        stems = stem_corners(raw)
        if not stems and not include_non_stem:
            continue
        model = normalize_model(raw)
        key = min(model.code, normalize_model(model.mirror()).code)
        if key in records:
            continue
        ok = _budget_ok(model)
        sings = singularity_set(model, check=False)
        stems = stem_corners(model)
        corner = stems[0][0] if stems else None
        p = assemble_presentation(model, corner)
        note = "" if ok else "budget violated"
        records[key] = SplitRecord(str(sings), model, validate_skeleton(model.skeleton).degree,
                                   bool(stems), component_degrees(p),
                                   class2_quotient(p).commutant, ok, note)
    return sorted(records.values(), key=lambda r: (r.singularity_set, r.model.code))


SPLIT_EXPECTED = {
    "2E7+A5": (3,),
    "E7+A11+A1": (3,),
    "E7+D12": (),
    "E7+D5+A7": (),
    "E7+A9+A2+A1": (),
}


# ------------------------------------------------------------------ reports

def row_presentation(row: int, variant: int = 1, source: str = "paper") -> FpPresentation:
    """The row's presentation, hand-derived or assembled from its first matching model."""
    if source == "paper":
        return paper_relations(row, variant)
    if source != "assembled":
        raise ValueError(f"unknown source {source!r}")
    key = table_row(row)["set"]
    for model in enumerate_e7_models():
        if str(singularity_set(model)) == key and model_variant(model) == variant:
            return assemble_presentation(model)
    raise UnknownRow(f"no model for row {row} variant {variant}")


def group_facts(row: int, variant: int = 1, source: str = "paper", extended: bool = False,
                max_cosets: int = DEFAULT_MAX_COSETS) -> dict:
    """Order and abelianization of a row's group; with ``extended``, the commutant package."""
    from .fpgroup import (abelianization, derived_subgroup_presentation, element_order, index,
                          is_perfect)

    p = row_presentation(row, variant, source)
    if source == "paper" and table_row(row)["method"] == "+loop":
        q = class2_quotient(p)
        return {"row": row, "variant": variant, "source": source,
                "order": hand_order(row, variant, max_cosets),
                "class2_commutant": q.commutant.as_dict(),
                "abelianization": q.abelianization.as_dict()}
    out = {"row": row, "variant": variant, "source": source,
           "order": order(p, max_cosets), "abelianization": abelianization(p).as_dict()}
    if extended:
        derived = derived_subgroup_presentation(p)
        out["derived_order"] = order(derived, max_cosets)
        out["derived_perfect"] = is_perfect(derived)
        out["order_a1"] = element_order(p, A1, max_cosets)
        out["index_a1_a2"] = index(p, [A1, A2], max_cosets)
        out["index_a1_a3"] = index(p, [A1, A3], max_cosets)
        if row == 1 and source == "paper":
            rest = FpPresentation(3, tuple(r for r in p.relators if r != cyclic_reduce(TRIANGLE_CUSP)))
            assert len(rest.relators) == len(p.relators) - 1
            out["order_without_triangle_cusp"] = order(rest, max_cosets)
    return out


def model_report(model: SexticModel, max_cosets: int = DEFAULT_MAX_COSETS) -> dict:
    sings = singularity_set(model)
    cert = check_maximality(model)
    return {"set": str(sings), "milnor": sings.milnor, "certificate": cert.as_dict(),
            "multiplicities": fiber_multiplicities(model),
            "order": order(assemble_presentation(model), max_cosets)}


def perturbation_report(row: int = 1, max_cosets: int = DEFAULT_MAX_COSETS) -> list[dict]:
    out = []
    for p in enumerate_e7_perturbations() + a_point_perturbations():
        if not p.proper:
            continue
        out.append({
            "source": p.source,
            "result": str(p.result),
            "set": str(perturbed_set(row, p)),
            "nonabelian_local": p.nonabelian_local,
            "order": perturb_global(row, p, max_cosets),
        })
    return out
