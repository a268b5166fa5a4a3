"""Skeleton enumeration, markings, insertion surgery and decorated E7 models.

Skeletons are generated as rooted maps in breadth-first labelling: the root
vertex gets darts ``0 .. r-1``, and darts are then processed in label order,
each being paired either with a later unpaired dart or with the first dart
of a new vertex.  Every rooted map arises exactly once this way, and
isomorph rejection is done afterwards with :func:`canonical_code`.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterator, Sequence

from .maps import (BLACK, WHITE, CombMap, build_map, canonical_code, canonical_form, faces,
                   rooted_code, validate_skeleton)


class DegreeUnsupported(ValueError):
    pass


class SingularBlackPresent(ValueError):
    pass


class EdgeNotFound(ValueError):
    pass


class NotAnInsertion(ValueError):
    pass


# ------------------------------------------------------------ enumeration

def _vertex_types(n_identity: int, max_singular_black: int, min_singular_black: int,
                  allow_white: bool) -> Iterator[dict]:
    """Vertex multisets with ``#black + #white(1) + #black(2) == n_identity``."""
    for b2 in range(n_identity // 2 + 1):
        for b1 in range(n_identity - 2 * b2 + 1):
            if not min_singular_black <= b1 + b2 <= max_singular_black:
                continue
            for w in range(n_identity - 2 * b2 - b1 + 1 if allow_white else 1):
                b3 = n_identity - 2 * b2 - b1 - w
                if (b1 + 2 * b2 + 3 * b3 + w) % 2:
                    continue
                if b1 + b2 + b3 == 0:
                    continue
                yield {(BLACK, 1): b1, (BLACK, 2): b2, (BLACK, 3): b3, (WHITE, 1): w}


def _rooted_maps(budget: dict) -> Iterator[CombMap]:
    total = sum(v * k[1] for k, v in budget.items())
    if total % 2:
        return
    pair = [-1] * total
    rot = [0] * total
    color = [None] * total
    remaining = dict(budget)

    def add_vertex(start: int, key) -> None:
        col, val = key
        for k in range(val):
            rot[start + k] = start + (k + 1) % val
            color[start + k] = col
        remaining[key] -= 1

    def drop_vertex(key) -> None:
        remaining[key] += 1

    def recurse(d: int, nxt: int) -> Iterator[CombMap]:
        while d < nxt and pair[d] >= 0:
            d += 1
        if d == nxt:
            if nxt == total and not any(remaining.values()):
                try:
                    yield build_map(total, pair, rot, {i: color[i] for i in range(total)})
                except ValueError:
                    pass
            return
        for e in range(d + 1, nxt):
            if pair[e] < 0 and not (color[d] == WHITE and color[e] == WHITE):
                pair[d], pair[e] = e, d
                yield from recurse(d + 1, nxt)
                pair[d] = pair[e] = -1
        for key, count in remaining.items():
            if not count or (color[d] == WHITE and key[0] == WHITE):
                continue
            val = key[1]
            if nxt + val > total:
                continue
            add_vertex(nxt, key)
            pair[d], pair[nxt] = nxt, d
            yield from recurse(d + 1, nxt + val)
            pair[d] = pair[nxt] = -1
            drop_vertex(key)

    for key, count in budget.items():
        if count:
            add_vertex(0, key)
            yield from recurse(0, key[1])
            drop_vertex(key)


def enumerate_skeletons(degree: int, max_singular_black: int = 0,
                        require_no_singular_white: bool = True,
                        min_singular_black: int = 0) -> list[CombMap]:
    """Valid skeletons of the given degree, one per orientation-preserving class.

    The result is sorted by canonical code; each map is in canonical form.
    """
    if degree <= 0 or degree % 3:
        raise DegreeUnsupported(f"degree must be a positive multiple of 3, got {degree}")
    if degree > 9:
        raise DegreeUnsupported(f"degree {degree} is outside the validated range (at most 9)")
    n_identity = 2 * degree // 3
    found: dict = {}
    for budget in _vertex_types(n_identity, max_singular_black, min_singular_black,
                                not require_no_singular_white):
        for m in _rooted_maps(budget):
            rep = validate_skeleton(m)
            if not rep.is_valid or rep.degree != degree:
                continue
            code = canonical_code(m)
            if code not in found:
                found[code] = canonical_form(m)
    return [found[c] for c in sorted(found)]


# ---------------------------------------------------------------- markings

@dataclass(frozen=True)
class Marking:
    """Index-1 dart at every trivalent black vertex, as ``((vertex, dart), ...)``."""

    first: tuple

    def as_dict(self) -> dict:
        return dict(self.first)

    def index(self, m: CombMap, dart: int) -> int | None:
        v = m.vertex_of[dart]
        start = self.as_dict().get(v)
        if start is None:
            return None
        k = 1
        d = start
        while d != dart:
            d = m.rotation[d]
            k += 1
        return k


def trivalent_blacks(m: CombMap) -> list[int]:
    return [v for v, cyc in enumerate(m.vertices) if len(cyc) == 3 and m.vertex_color[v] == BLACK]


def all_markings(m: CombMap) -> Iterator[Marking]:
    verts = trivalent_blacks(m)
    for choice in product(range(3), repeat=len(verts)):
        yield Marking(tuple((v, m.vertices[v][k]) for v, k in zip(verts, choice)))


_SPLIT_TYPES = {(1, 1), (2, 3), (3, 2)}


def is_splitting(m: CombMap, marking: Marking) -> bool:
    for d, e in m.edges():
        i, j = marking.index(m, d), marking.index(m, e)
        if i is not None and j is not None:
            if (i, j) not in _SPLIT_TYPES:
                return False
        elif m.color_of_dart(e) == WHITE and i is not None and i != 1:
            return False
        elif m.color_of_dart(d) == WHITE and j is not None and j != 1:
            return False
    return True


def find_splitting_markings(m: CombMap) -> list[Marking]:
    rep = validate_skeleton(m)
    if rep.singular_blacks:
        raise SingularBlackPresent("a skeleton with singular black vertices is irreducible")
    return [mk for mk in all_markings(m) if is_splitting(m, mk)]


# ------------------------------------------------------------- insertion

def insert_bigon(m: CombMap, dart: int) -> tuple[CombMap, int]:
    """Insert a bigon in the middle of the edge of ``dart``.

    Returns the new map and its distinguished dart: the bigon dart on the arc
    that lies to the left of ``dart``.  Old darts keep their numbers.
    """
    if not 0 <= dart < m.dart_count:
        raise EdgeNotFound(f"no dart {dart}")
    n = m.dart_count
    d, e = dart, m.edge_pairing[dart]
    x1, a1, b1, x2, a2, b2 = range(n, n + 6)
    pair = list(m.edge_pairing) + [0] * 6
    rot = list(m.rotation) + [0] * 6
    pair[d], pair[x1] = x1, d
    pair[e], pair[x2] = x2, e
    pair[a1], pair[a2] = a2, a1
    pair[b1], pair[b2] = b2, b1
    rot[x1], rot[a1], rot[b1] = a1, b1, x1
    rot[x2], rot[b2], rot[a2] = b2, a2, x2
    colors = {k: m.color_of_dart(k) for k in range(n)}
    colors.update({k: BLACK for k in range(n, n + 6)})
    return build_map(n + 6, pair, rot, colors), b1


def bigon_structure(m: CombMap, dist: int):
    """Darts of an insertion around the distinguished dart, or ``None``.

    Returns ``(x1, a1, b1, x2, a2, b2)`` in the layout of :func:`insert_bigon`
    when both bigon corners are trivalent and the bigon is not the whole map.
    """
    rot = m.rotation
    pair = m.edge_pairing
    b1 = dist
    b2 = pair[b1]
    a2 = rot[b2]
    a1 = pair[a2]
    if rot[a1] != b1 or len(m.vertices[m.vertex_of[b1]]) != 3 or len(m.vertices[m.vertex_of[b2]]) != 3:
        return None
    x1 = rot[b1]
    x2 = rot[a2]
    if m.vertex_of[x1] == m.vertex_of[b1] and x1 in (a1, b1):
        return None
    if pair[x1] in (x2, a1, a2, b1, b2):
        return None
    return x1, a1, b1, x2, a2, b2


def remove_bigon(m: CombMap, dist: int) -> tuple[CombMap, int]:
    """Inverse of :func:`insert_bigon`: returns the patched map and the site dart."""
    parts = bigon_structure(m, dist)
    if parts is None:
        raise NotAnInsertion("the distinguished dart is not on an insertion")
    x1, a1, b1, x2, a2, b2 = parts
    d, e = m.edge_pairing[x1], m.edge_pairing[x2]
    gone = {x1, a1, b1, x2, a2, b2}
    keep = [k for k in range(m.dart_count) if k not in gone]
    new = {old: i for i, old in enumerate(keep)}
    pair = [0] * len(keep)
    rot = [0] * len(keep)
    for old in keep:
        p = m.edge_pairing[old]
        if old == d:
            p = e
        elif old == e:
            p = d
        pair[new[old]] = new[p]
        rot[new[old]] = new[m.rotation[old]]
    colors = {new[k]: m.color_of_dart(k) for k in keep}
    return build_map(len(keep), pair, rot, colors), new[d]


# ------------------------------------------------------------ E7 models

@dataclass(frozen=True)
class SexticModel:
    """A skeleton with a distinguished bigonal region and a selected arc.

    ``dist`` is the dart of the selected arc that lies in the boundary cycle
    of the distinguished region; it encodes both choices at once.
    """

    skeleton: CombMap
    dist: int
    fiber_flags: tuple = ()  # regions (by boundary dart) carrying a D-type fiber
    e_type: str = "E7"

    @property
    def code(self) -> bytes:
        return rooted_code(self.skeleton, self.dist) + b"|" + ",".join(
            map(str, sorted(self.fiber_flags))).encode()

    @property
    def t(self) -> int:
        return len(validate_skeleton(self.skeleton).singular_blacks)

    @property
    def degree(self) -> int:
        return validate_skeleton(self.skeleton).degree

    def bigon(self):
        for r in faces(self.skeleton):
            if self.dist in r.boundary:
                return r
        raise AssertionError("distinguished dart lies on no region")

    def mirror(self) -> "SexticModel":
        m = self.skeleton
        pair = m.edge_pairing
        return SexticModel(m.mirror(), pair[self.dist], self.fiber_flags, self.e_type)

    def is_real(self) -> bool:
        if self.fiber_flags:
            raise NotImplementedError("reality of D-flagged models is not needed")
        return self.code == self.mirror().code

    def to_record(self) -> dict:
        return {
            "code": rooted_code(self.skeleton, self.dist).decode(),
            "skeleton_code": canonical_code(self.skeleton).decode(),
            "t": self.t,
            "degree": self.degree,
            "bigon": list(self.bigon().boundary),
            "branch_dart": self.dist,
        }


def normalize_model(model: SexticModel) -> SexticModel:
    """Relabel so that the distinguished dart is 0 and darts follow the rooted labelling."""
    from .maps import _code_from

    order = _code_from(model.skeleton, model.dist)[1]
    perm = [0] * model.skeleton.dart_count
    for new, old in enumerate(order):
        perm[old] = new
    flags = tuple(sorted(perm[d] for d in model.fiber_flags))
    return SexticModel(model.skeleton.relabeled(perm), 0, flags, model.e_type)


def _bigon_candidates(m: CombMap) -> Iterator[int]:
    for r in faces(m):
        if r.black_corners == 2 and len(r.boundary) == 2:
            yield from r.boundary


def is_irreducible(m: CombMap) -> bool:
    rep = validate_skeleton(m)
    if rep.singular_blacks:
        return True
    return not any(is_splitting(m, mk) for mk in all_markings(m))


def _passes_point_filter(m: CombMap, dist: int) -> bool:
    """Only the bigon may produce a point of type A_odd; whites are excluded upstream."""
    for r in faces(m):
        if dist in r.boundary:
            continue
        if r.black_corners >= 2 and r.black_corners % 2 == 0:
            return False
    return True


def enumerate_e7_models(k: int = 3) -> list[SexticModel]:
    """All decorated E7 models up to orientation-preserving isomorphism.

    Runs over skeletons of degree ``3(k - t)`` with ``t`` singular black
    vertices and no singular white vertices, keeps the irreducible ones, and
    decorates every admissible bigonal region with each of its two arcs.
    """
    out: dict = {}
    for t in range(k):
        degree = 3 * (k - t)
        for m in enumerate_skeletons(degree, max_singular_black=t, min_singular_black=t):
            if not is_irreducible(m):
                continue
            for dist in _bigon_candidates(m):
                if not _passes_point_filter(m, dist):
                    continue
                model = normalize_model(SexticModel(m, dist))
                out.setdefault(model.code, model)
    return [out[c] for c in sorted(out)]


def enumerate_e7_models_by_insertion(k: int = 3) -> list[SexticModel]:
    """The same models built in two steps: small skeletons, then an insertion."""
    out: dict = {}
    hosts = []
    for m in enumerate_skeletons(3 * (k - 1)):
        if not find_splitting_markings(m):
            hosts.append(m)
    hosts += enumerate_skeletons(3 * (k - 2), max_singular_black=1, min_singular_black=1)
    for host in hosts:
        for d in range(host.dart_count):
            new, dist = insert_bigon(host, d)
            if not _passes_point_filter(new, dist):
                continue
            model = normalize_model(SexticModel(new, dist))
            out.setdefault(model.code, model)
    for t in range(1, k):
        for m in enumerate_skeletons(3 * (k - t), max_singular_black=t, min_singular_black=t):
            for dist in _bigon_candidates(m):
                if bigon_structure(m, dist) is None and _passes_point_filter(m, dist):
                    model = normalize_model(SexticModel(m, dist))
                    out.setdefault(model.code, model)
    return [out[c] for c in sorted(out)]


def host_skeletons() -> dict:
    """The small skeletons from which insertions are made, keyed by kind."""
    irreducible = [m for m in enumerate_skeletons(6) if not find_splitting_markings(m)]
    singular = enumerate_skeletons(3, max_singular_black=1, min_singular_black=1)
    return {"degree6_irreducible": irreducible, "degree3_one_singular": singular}


def _default_label(model: SexticModel) -> str:
    from .pipeline import singularity_set

    return str(singularity_set(model))


def deformation_classes(models, key=None) -> list[tuple]:
    """Group models by ``key`` (default: the set of singularities) and count classes.

    Returns ``(representative, n_r, n_c)`` per group: ``n_r`` models equal to
    their mirror image and ``n_c`` pairs swapped by it.
    """
    key = key or _default_label
    groups: dict = {}
    for model in models:
        groups.setdefault(key(model), []).append(normalize_model(model))
    out = []
    for label in groups:
        group = groups[label]
        codes = {m.code for m in group}
        real = pairs = 0
        seen: set = set()
        for m in group:
            if m.code in seen:
                continue
            twin = normalize_model(m.mirror()).code
            seen.update((m.code, twin))
            if twin == m.code:
                real += 1
            else:
                if twin not in codes:
                    raise ValueError(f"mirror image of {m.code!r} is missing from the list")
                pairs += 1
        out.append((group[0], real, pairs))
    return out


def export_models(models) -> list[dict]:
    """Records of the models, each with the class counts of its set of singularities."""
    counts = {_default_label(rep): (nr, nc) for rep, nr, nc in deformation_classes(models)}
    out = []
    for model in models:
        label = _default_label(model)
        rec = model.to_record()
        rec["set"] = label
        rec["classes"] = list(counts[label])
        out.append(rec)
    return out


INFERRED_SKELETONS = {"E7+2E6": "skeleton_e7_2e6.txt", "E7+E8+A4": "skeleton_e7_e8_a4.txt"}


def load_model_text(text: str) -> SexticModel:
    """A model from skeleton text carrying a ``# distinguished dart: N`` comment."""
    from .maps import parse_skeleton

    dist = None
    for line in text.splitlines():
        body = line.lstrip("# ").strip()
        if line.startswith("#") and body.startswith("distinguished dart:"):
            dist = int(body.split(":", 1)[1])
    if dist is None:
        raise ValueError("missing '# distinguished dart: N' comment")
    return SexticModel(parse_skeleton(text), dist)


def inferred_models() -> dict:
    """The bundled skeletons that were reconstructed from budgets rather than drawn."""
    from importlib import resources

    root = resources.files("sextic").joinpath("data")
    return {key: load_model_text(root.joinpath(name).read_text(encoding="utf-8"))
            for key, name in INFERRED_SKELETONS.items()}
