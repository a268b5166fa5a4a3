"""Braid monodromy of a decorated skeleton.

The reference vertex is a trivalent black corner of the distinguished bigon,
marked so that the bigon corner there is reached through the solid edge of
index 2.  Every other fiber is joined to the reference point by a lasso that
follows a spanning tree of the skeleton.  The tour of the tree visits corners
in counterclockwise order; lassos are collected at the first trivalent corner
of each region.  Singular vertices lie on the tree side of the tour, so their
lassos come after all region lassos and in reverse order of visit.  The
product of all lassos taken right to left is the full monodromy.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .braids import FULL_TWIST, IDENTITY, Braid3, UnmarkedVertex, edge_transport, sigma
from .maps import BLACK, WHITE, CombMap, faces
from .skeletons import Marking, SexticModel


class NoTrivalentVertex(ValueError):
    pass


# Reduced turn around a monovalent vertex, keyed by its colour and by the
# index of the dart that reaches it.  Each entry is what the boundary identity
# of a region gives when that vertex is the only singular one on it; the value
# does not depend on the region.
TIP_TURNS = {
    BLACK: {1: Braid3(8, (0, 1, 0, 1, 0, 2, 0)), 2: Braid3(2, (1,)), 3: Braid3(8, (0, 2, 0, 1, 0, 1, 0))},
    WHITE: {1: Braid3(9, (0, 1, 0, 2, 0)), 2: Braid3(3, (0,)), 3: Braid3(9, (0, 2, 0, 1, 0))},
}


@dataclass(frozen=True)
class Fiber:
    """A singular fiber with its lasso monodromy in the reference basis."""

    kind: str  # "F", "A", "D", "E6", "E7", "E8" or "A1*"
    corners: int  # black corners of the region, or the valency of a singular vertex
    braid: Braid3
    region: tuple | None = None
    vertex: int | None = None

    @property
    def multiplicity(self) -> int:
        return self.braid.degree


def is_trivalent(m: CombMap, v: int) -> bool:
    return len(m.vertices[v]) == 3 and m.vertex_color[v] == BLACK


def reference_corners(model: SexticModel) -> list[tuple[int, int]]:
    """Admissible reference corners as ``(bigon dart, branch)``.

    The branch is 2 when the selected arc leaves the reference vertex as its
    second solid edge and 3 when it is the third.  Corners whose dart is not
    the distinguished one come first.
    """
    m = model.skeleton
    out = []
    for c in model.bigon().boundary:
        if is_trivalent(m, m.vertex_of[c]):
            out.append((c, 3 if c == model.dist else 2))
    out.sort(key=lambda x: (x[1] != 2, x[0]))
    return out


def default_marking(m: CombMap) -> Marking:
    return Marking(tuple((v, cyc[0]) for v, cyc in enumerate(m.vertices) if is_trivalent(m, v)))


def reference_marking(m: CombMap, corner: int, base: Marking | None = None) -> Marking:
    """``base`` (or the default marking) with the reference vertex re-marked.

    At the reference vertex the bigon dart gets index 3, so the corner before
    it lies after the dart of index 2.
    """
    v = m.vertex_of[corner]
    first = dict((base or default_marking(m)).first)
    first[v] = m.rotation[corner]
    return Marking(tuple(sorted(first.items())))


def spanning_tree(m: CombMap, root: int) -> set:
    """Darts of a breadth-first spanning tree that reaches singular vertices last."""
    seen = {root}
    tree: set = set()
    queue = deque([root])
    held: deque = deque()
    while queue or held:
        x = queue.popleft() if queue else held.popleft()
        for d in m.vertices[x]:
            y = m.vertex_of[m.edge_pairing[d]]
            if y in seen:
                continue
            seen.add(y)
            tree.update((d, m.edge_pairing[d]))
            (queue if is_trivalent(m, y) else held).append(y)
    return tree


class _Context:
    def __init__(self, m: CombMap, marking: Marking):
        self.m = m
        self.marking = marking
        self.region_of = {}
        for r in faces(m):
            for d in r.boundary:
                self.region_of[d] = r

    def index(self, dart: int) -> int:
        i = self.marking.index(self.m, dart)
        if i is None:
            raise UnmarkedVertex(f"dart {dart} is not at a marked vertex")
        return i

    def edge(self, dart: int) -> Braid3:
        return edge_transport(self.index(dart), self.index(self.m.edge_pairing[dart]))

    def region_after(self, dart: int):
        """The region containing the corner that follows ``dart`` counterclockwise."""
        return self.region_of[self.m.rotation[dart]]

    def walk(self, darts) -> Braid3:
        """Transport along consecutive darts of a region boundary.

        Monovalent vertices on the way are passed with :data:`TIP_TURNS`; any
        other singular vertex is an error.
        """
        m = self.m
        out = IDENTITY
        darts = list(darts)
        k = 0
        while k < len(darts):
            d = darts[k]
            far = m.vertex_of[m.edge_pairing[d]]
            if is_trivalent(m, far):
                out = self.edge(d) * out
                k += 1
            elif len(m.vertices[far]) == 1 and k + 1 < len(darts):
                out = self.tip(m.edge_pairing[d]) * out
                k += 2
            else:
                raise NoTrivalentVertex("a region boundary passes two bivalent singular vertices")
        return out

    def tip(self, p: int) -> Braid3:
        """Turn around the monovalent vertex of dart ``p``, back to where it started."""
        color = self.m.vertex_color[self.m.vertex_of[p]]
        return TIP_TURNS[color][self.index(self.m.edge_pairing[p])]

    def crossing(self, p: int) -> Braid3:
        """Transport past a singular vertex through the corner after its dart ``p``.

        Runs from the far end of ``p`` to the far end of the next dart; for a
        bivalent vertex it is read off the boundary identity of the region
        holding that corner.
        """
        m = self.m
        if len(m.vertices[m.vertex_of[p]]) == 1:
            return self.tip(p)
        region = self.region_after(p)
        cyc = list(region.boundary)
        i = cyc.index(m.edge_pairing[p])
        cyc = cyc[i:] + cyc[:i]
        rest = self.walk(cyc[2:])
        entry = self.index(m.rotation_inverse()[cyc[0]])
        return rest.inverse() * sigma(entry) ** (-region.black_corners)


def region_is_flagged(m: CombMap, boundary, flags) -> bool:
    """A region carries a D-type fiber when one of its black-vertex darts is flagged."""
    return any(d in flags and m.color_of_dart(d) == BLACK for d in boundary)


def vertex_fiber(m: CombMap, v: int, flags) -> tuple[str, int]:
    """Kind and multiplicity of the fiber over a singular vertex."""
    valency = len(m.vertices[v])
    if m.vertex_color[v] == BLACK:
        return ("E6" if valency % 3 == 1 else "E8"), 6 + 2 * valency
    if any(d in flags for d in m.vertices[v]):
        return "E7", 9
    return "A1*", 3


def _region_fiber(ctx: _Context, region, dart: int, flags: set, bigon) -> tuple[str, Braid3]:
    d = region.black_corners
    local = sigma(ctx.index(dart)) ** d
    if region.boundary == bigon:
        return "F", local
    if region_is_flagged(ctx.m, region.boundary, flags):
        return "D", local * FULL_TWIST
    return "A", local


def fiber_lassos(model: SexticModel, corner: int | None = None,
                 marking: Marking | None = None) -> list[Fiber]:
    """All fibers with their lassos, in tour order; the bigon fiber comes first."""
    m = model.skeleton
    if corner is None:
        choices = reference_corners(model)
        if not choices:
            raise NoTrivalentVertex("the bigon has no trivalent corner")
        corner = choices[0][0]
    marking = reference_marking(m, corner, marking)
    ctx = _Context(m, marking)
    pair = m.edge_pairing
    root = m.vertex_of[corner]
    tree = spanning_tree(m, root)
    flags = set(model.fiber_flags)
    bigon = model.bigon().boundary

    path = IDENTITY  # transport from the reference vertex to the current one
    regions: list[Fiber] = []
    singular: list[Fiber] = []
    seen: set = set()
    first_move = None

    def visit_corner(a: int) -> None:
        region = ctx.region_after(a)
        if region.boundary in seen:
            return
        seen.add(region.boundary)
        kind, local = _region_fiber(ctx, region, a, flags, bigon)
        regions.append(Fiber(kind, region.black_corners, path.inverse() * local * path,
                             region=region.boundary))

    a = m.rotation_inverse()[corner]
    while True:
        visit_corner(a)
        t = m.rotation[a]
        while t not in tree:
            visit_corner(t)
            t = m.rotation[t]
        if first_move is None:
            first_move = t
        elif t == first_move:
            break
        y = m.vertex_of[pair[t]]
        if is_trivalent(m, y):
            path = ctx.edge(t) * path
            a = pair[t]
            continue
        # walk past the singular vertex y to the next tree dart
        p = pair[t]
        valency = len(m.vertices[y])
        if valency == 1:
            loop = ctx.crossing(p)
        else:
            loop = ctx.crossing(m.rotation[p]) * ctx.crossing(p)
        kind, degree = vertex_fiber(m, y, flags)
        local = Braid3(degree, loop.reduced)
        singular.append(Fiber(kind, valency, path.inverse() * local * path, vertex=y))
        cur = p
        step = path
        while True:
            step = ctx.crossing(cur) * step
            nxt = m.rotation[cur]
            if nxt in tree:
                break
            cur = nxt
        path = step
        a = pair[nxt]
    return regions + singular[::-1]


def ordered_product(braids) -> Braid3:
    """Product of lassos listed in tour order: the last one is leftmost."""
    out = IDENTITY
    for b in reversed(list(braids)):
        out = out * b
    return out


def total_monodromy(fibers: list[Fiber]) -> Braid3:
    return ordered_product(f.braid for f in fibers)


def m_infinity_factorization(fibers: list[Fiber]) -> Braid3:
    """Product of the lassos of all fibers other than the bigon fiber."""
    return ordered_product(f.braid for f in fibers if f.kind != "F")
