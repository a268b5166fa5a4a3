"""Planar combinatorial maps with black and white vertices.

Darts are ``0 .. n-1``.  ``edge_pairing`` is a fixed-point-free involution
and ``rotation`` sends a dart to the next dart counterclockwise around its
vertex.  Faces are the cycles of ``rotation . edge_pairing``.  The corner of
a face that precedes dart ``d`` in its cycle is the sector from
``rotation^-1(d)`` to ``d`` at the vertex of ``d``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

BLACK = "black"
WHITE = "white"


class MapError(ValueError):
    pass


class NotInvolution(MapError):
    pass


class FixedDart(MapError):
    pass


class NotPermutation(MapError):
    pass


class Disconnected(MapError):
    pass


class NonPlanar(MapError):
    pass


def _cycles(perm: Sequence[int]) -> list[tuple]:
    seen = [False] * len(perm)
    out = []
    for start in range(len(perm)):
        if seen[start]:
            continue
        cyc = []
        d = start
        while not seen[d]:
            seen[d] = True
            cyc.append(d)
            d = perm[d]
        out.append(tuple(cyc))
    return out


@dataclass(frozen=True)
class CombMap:
    dart_count: int
    edge_pairing: tuple
    rotation: tuple
    vertex_color: tuple  # one entry per vertex, vertices ordered by smallest dart
    vertices: tuple = field(init=False, repr=False, compare=False)
    vertex_of: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        cycles = _cycles(self.rotation)
        vertex_of = [0] * self.dart_count
        for i, cyc in enumerate(cycles):
            for d in cyc:
                vertex_of[d] = i
        object.__setattr__(self, "vertices", tuple(cycles))
        object.__setattr__(self, "vertex_of", tuple(vertex_of))

    # ---- basic structure
    @property
    def edge_count(self) -> int:
        return self.dart_count // 2

    @property
    def vertex_count(self) -> int:
        return len(self.vertices)

    def face_permutation(self) -> tuple:
        return tuple(self.rotation[self.edge_pairing[d]] for d in range(self.dart_count))

    def face_count(self) -> int:
        return len(_cycles(self.face_permutation()))

    def color_of_dart(self, d: int) -> str:
        return self.vertex_color[self.vertex_of[d]]

    def valency(self, v: int) -> int:
        return len(self.vertices[v])

    def rotation_inverse(self) -> tuple:
        inv = [0] * self.dart_count
        for d, e in enumerate(self.rotation):
            inv[e] = d
        return tuple(inv)

    def edges(self) -> list[tuple]:
        return [(d, self.edge_pairing[d]) for d in range(self.dart_count) if d < self.edge_pairing[d]]

    def mirror(self) -> "CombMap":
        """The same map seen from the other side of the sphere."""
        return relabel_colors(self, self.rotation_inverse())

    def relabeled(self, perm: Sequence[int]) -> "CombMap":
        """The isomorphic map in which dart ``d`` is renamed ``perm[d]``."""
        n = self.dart_count
        pairing = [0] * n
        rotation = [0] * n
        for d in range(n):
            pairing[perm[d]] = perm[self.edge_pairing[d]]
            rotation[perm[d]] = perm[self.rotation[d]]
        colors = {perm[d]: self.color_of_dart(d) for d in range(n)}
        return build_map(n, pairing, rotation, colors)


def relabel_colors(m: CombMap, rotation: Sequence[int]) -> CombMap:
    colors = {d: m.color_of_dart(d) for d in range(m.dart_count)}
    return build_map(m.dart_count, m.edge_pairing, rotation, colors)


def build_map(dart_count: int, edge_pairing: Sequence[int], rotation: Sequence[int],
              colors: Sequence[str] | Mapping[int, str] | None = None) -> CombMap:
    """Validate and build a genus-0 connected map.

    ``colors`` is either one colour per rotation cycle (cycles ordered by
    their smallest dart) or a mapping from darts to colours; the default is
    all black.
    """
    n = dart_count
    if n < 0 or n % 2:
        raise MapError(f"dart count must be even and nonnegative, got {n}")
    pairing = tuple(int(x) for x in edge_pairing)
    rot = tuple(int(x) for x in rotation)
    for name, perm in (("edge_pairing", pairing), ("rotation", rot)):
        if len(perm) != n or sorted(perm) != list(range(n)):
            raise NotPermutation(f"{name} is not a permutation of 0..{n - 1}")
    for d in range(n):
        if pairing[d] == d:
            raise FixedDart(f"edge_pairing fixes dart {d}")
        if pairing[pairing[d]] != d:
            raise NotInvolution(f"edge_pairing is not an involution at dart {d}")
    cycles = _cycles(rot)
    if colors is None:
        vcol = (BLACK,) * len(cycles)
    elif isinstance(colors, Mapping):
        vcol = []
        for cyc in cycles:
            found = {colors[d] for d in cyc if d in colors}
            if len(found) != 1:
                raise MapError(f"vertex {cyc} needs exactly one colour, got {sorted(found)}")
            vcol.append(found.pop())
        vcol = tuple(vcol)
    else:
        vcol = tuple(colors)
        if len(vcol) != len(cycles):
            raise MapError(f"expected {len(cycles)} vertex colours, got {len(vcol)}")
    for c in vcol:
        if c not in (BLACK, WHITE):
            raise MapError(f"unknown vertex colour {c!r}")
    m = CombMap(n, pairing, rot, vcol)
    if n:
        if not _connected(m):
            raise Disconnected("the underlying graph is disconnected")
        chi = m.vertex_count - m.edge_count + m.face_count()
        if chi != 2:
            raise NonPlanar(f"V - E + F = {chi}, expected 2")
    return m


def _connected(m: CombMap) -> bool:
    seen = {0}
    stack = [0]
    while stack:
        d = stack.pop()
        for e in (m.edge_pairing[d], m.rotation[d]):
            if e not in seen:
                seen.add(e)
                stack.append(e)
    return len(seen) == m.dart_count


def from_cycles(vertices: Iterable[Sequence[int]], edges: Iterable[Sequence[int]],
                colors: Sequence[str] | None = None) -> CombMap:
    """Build a map from vertex rotation cycles and edge dart pairs."""
    vertices = [tuple(v) for v in vertices]
    n = sum(len(v) for v in vertices)
    rotation = [0] * n
    dart_color = {}
    for i, cyc in enumerate(vertices):
        for k, d in enumerate(cyc):
            rotation[d] = cyc[(k + 1) % len(cyc)]
            dart_color[d] = colors[i] if colors else BLACK
    pairing = [0] * n
    for a, b in edges:
        pairing[a] = b
        pairing[b] = a
    return build_map(n, pairing, rotation, dart_color)


def segment_map() -> CombMap:
    return from_cycles([(0,), (1,)], [(0, 1)])


def loop_map() -> CombMap:
    return from_cycles([(0, 1)], [(0, 1)])


# ---------------------------------------------------------------- regions

@dataclass(frozen=True)
class Region:
    boundary: tuple
    black_corners: int
    fiber_flag: str = "A"

    @property
    def corner_darts(self) -> tuple:
        """Darts whose preceding corner lies in this region (one per corner)."""
        return self.boundary


def faces(m: CombMap) -> list[Region]:
    phi = m.face_permutation()
    out = []
    for cyc in _cycles(phi):
        black = sum(1 for d in cyc if m.color_of_dart(d) == BLACK)
        out.append(Region(cyc, black))
    return out


def region_of_dart(m: CombMap) -> dict:
    return {d: i for i, r in enumerate(faces(m)) for d in r.boundary}


# ------------------------------------------------------------- validation

@dataclass(frozen=True)
class SkeletonReport:
    is_valid: bool
    black_valencies: tuple
    singular_blacks: tuple
    singular_whites: tuple
    degree: int | None
    t: int
    reasons: tuple = ()

    @property
    def vertex_count_identity(self) -> int:
        """``#black + #white(1) + #black(2)``."""
        return (len(self.black_valencies) + len(self.singular_whites)
                + sum(1 for v in self.black_valencies if v == 2))


def validate_skeleton(m: CombMap) -> SkeletonReport:
    reasons = []
    black_val = []
    sing_black = []
    sing_white = []
    for v, cyc in enumerate(m.vertices):
        val = len(cyc)
        if m.vertex_color[v] == BLACK:
            black_val.append(val)
            if val > 3:
                reasons.append(f"ValencyExceeded: black vertex {v} has valency {val}")
            elif val % 3:
                sing_black.append(v)
        else:
            sing_white.append(v)
            if val != 1:
                reasons.append(f"WhiteValency: white vertex {v} has valency {val}")
            for d in cyc:
                if m.color_of_dart(m.edge_pairing[d]) != BLACK:
                    reasons.append(f"WhiteNeighbour: white vertex {v} is not joined to a black vertex")
    count = len(black_val) + len(sing_white) + sum(1 for v in black_val if v == 2)
    degree = None
    if count % 2:
        reasons.append(f"OddVertexCount: #black + #white(1) + #black(2) = {count}")
    else:
        degree = 3 * count // 2
    return SkeletonReport(not reasons, tuple(black_val), tuple(sing_black), tuple(sing_white),
                          degree, len(sing_black), tuple(reasons))


# ------------------------------------------------------------ canonization

def _code_from(m: CombMap, start: int, rotation: Sequence[int] | None = None):
    rot = m.rotation if rotation is None else rotation
    pair = m.edge_pairing
    label = {start: 0, pair[start]: 1}
    order = [start, pair[start]]
    k = 0
    while k < len(order):
        nxt = rot[order[k]]
        if nxt not in label:
            label[nxt] = len(order)
            label[pair[nxt]] = len(order) + 1
            order.extend((nxt, pair[nxt]))
        k += 1
    code = tuple(label[rot[d]] for d in order)
    colors = tuple(int(m.color_of_dart(d) == WHITE) for d in order)
    return code + colors, order


def rooted_code(m: CombMap, root: int) -> bytes:
    """Code of the map rooted at ``root``; equal codes mean a root-preserving isomorphism."""
    return _encode(_code_from(m, root)[0])


def _encode(code: tuple) -> bytes:
    return ",".join(map(str, code)).encode("ascii")


def canonical_code(m: CombMap) -> bytes:
    """Complete invariant under orientation-preserving, colour-preserving isomorphism."""
    if m.dart_count == 0:
        return b""
    best = min(_code_from(m, s)[0] for s in range(m.dart_count))
    return _encode(best)


def canonical_form(m: CombMap) -> CombMap:
    """Isomorphic copy with ``edge_pairing(2i) = 2i + 1`` and the minimal code."""
    if m.dart_count == 0:
        return m
    best = min(range(m.dart_count), key=lambda s: _code_from(m, s)[0])
    order = _code_from(m, best)[1]
    perm = [0] * m.dart_count
    for new, old in enumerate(order):
        perm[old] = new
    return m.relabeled(perm)


def automorphisms(m: CombMap, orientation: str = "preserving") -> list[tuple]:
    """All colour-preserving automorphisms as dart permutations.

    Reversing automorphisms satisfy ``f . rotation = rotation^-1 . f``.
    """
    if orientation not in ("preserving", "reversing"):
        raise ValueError("orientation must be 'preserving' or 'reversing'")
    if m.dart_count == 0:
        return [()] if orientation == "preserving" else []
    ref, ref_order = _code_from(m, 0)
    rot = m.rotation if orientation == "preserving" else m.rotation_inverse()
    out = []
    for s in range(m.dart_count):
        code, order = _code_from(m, s, rot)
        if code == ref:
            perm = [0] * m.dart_count
            for a, b in zip(ref_order, order):
                perm[a] = b
            out.append(tuple(perm))
    return out


# ------------------------------------------------------------------ text

class SkeletonSyntaxError(ValueError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


def parse_skeleton(text: str) -> CombMap:
    n = None
    pairing: dict = {}
    rotation: dict = {}
    colors: dict = {}
    seen_vertex_darts: set = set()
    last = 0
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        last = lineno
        tok = line.split()
        head = tok[0]
        try:
            args = [int(x) for x in tok[1:]] if head != "vertex" else [int(x) for x in tok[2:]]
        except ValueError:
            raise SkeletonSyntaxError(f"expected integers in {line!r}", lineno) from None
        if head == "skeleton":
            if n is not None or len(args) != 1:
                raise SkeletonSyntaxError("bad or repeated header", lineno)
            n = args[0]
            if n < 0 or n % 2:
                raise SkeletonSyntaxError(f"dart count {n} is odd or negative", lineno)
            continue
        if n is None:
            raise SkeletonSyntaxError("missing 'skeleton <dart_count>' header", lineno)
        for d in args:
            if not 0 <= d < n:
                raise SkeletonSyntaxError(f"dart {d} out of range", lineno)
        if head == "edge":
            if len(args) != 2 or args[0] == args[1]:
                raise SkeletonSyntaxError("an edge joins two distinct darts", lineno)
            for d in args:
                if d in pairing:
                    raise SkeletonSyntaxError(f"duplicate dart {d} in edges", lineno)
            pairing[args[0]] = args[1]
            pairing[args[1]] = args[0]
        elif head == "vertex":
            if len(tok) < 3 or tok[1] not in (BLACK, WHITE):
                raise SkeletonSyntaxError("expected 'vertex black|white <darts>'", lineno)
            for k, d in enumerate(args):
                if d in seen_vertex_darts:
                    raise SkeletonSyntaxError(f"duplicate dart {d} in vertices", lineno)
                seen_vertex_darts.add(d)
                rotation[d] = args[(k + 1) % len(args)]
                colors[d] = tok[1]
        else:
            raise SkeletonSyntaxError(f"unknown directive {head!r}", lineno)
    if n is None:
        raise SkeletonSyntaxError("empty input", last or 1)
    missing = sorted(set(range(n)) - set(pairing))
    if missing:
        raise SkeletonSyntaxError(f"darts without an edge: {missing}", last)
    missing = sorted(set(range(n)) - set(rotation))
    if missing:
        raise SkeletonSyntaxError(f"darts without a vertex: {missing}", last)
    try:
        return build_map(n, [pairing[d] for d in range(n)], [rotation[d] for d in range(n)], colors)
    except MapError as exc:
        raise SkeletonSyntaxError(str(exc), last) from None


def format_skeleton(m: CombMap, comments: Sequence[str] = ()) -> str:
    lines = [f"# {c}" for c in comments]
    lines.append(f"skeleton {m.dart_count}")
    lines += [f"edge {a} {b}" for a, b in m.edges()]
    for v, cyc in enumerate(m.vertices):
        lines.append(f"vertex {m.vertex_color[v]} " + " ".join(map(str, cyc)))
    return "\n".join(lines) + "\n"


def bfs_darts(m: CombMap, start: int) -> dict:
    """Shortest dart paths from the vertex of ``start``: vertex -> list of darts walked."""
    paths = {m.vertex_of[start]: []}
    q = deque([m.vertex_of[start]])
    while q:
        v = q.popleft()
        for d in m.vertices[v]:
            w = m.vertex_of[m.edge_pairing[d]]
            if w not in paths:
                paths[w] = paths[v] + [d]
                q.append(w)
    return paths
