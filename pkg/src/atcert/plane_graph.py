"""Plane graphs given by a rotation system plus a designated outer face.

Faces are traced with the rule ``next((u, v)) = (v, pred_v(u))`` where
``pred_v`` is the predecessor in the counterclockwise rotation at ``v``; the
face of a dart is the one traced from it.  The outer face of a component is
the face traced from its anchor dart.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Mapping, NamedTuple, Optional, Sequence

from atcert.errors import (
    AsymmetricRotation,
    BoundaryNotSimple,
    Disconnected,
    EdgeOnChordSide,
    EulerViolation,
    HasChord,
    LoopEdge,
    NotAChord,
    NotBoundaryEdge,
    NotSimpleBoundary,
    ParallelEdge,
    PlaneGraphError,
    UnknownVertex,
)

Vertex = str
Edge = tuple[Vertex, Vertex]
Dart = tuple[Vertex, Vertex]


class Check(NamedTuple):
    """A boolean verdict carrying the reason for a negative answer."""

    ok: bool
    reason: Optional[str] = None

    def __bool__(self) -> bool:
        return self.ok


class BoundaryWalk(NamedTuple):
    vertices: tuple[Vertex, ...]
    is_simple_cycle: bool

    def __len__(self) -> int:
        return len(self.vertices)

    def __getitem__(self, i):
        return self.vertices[i]


class Fan(NamedTuple):
    """Neighbourhood of a deleted boundary vertex ``center``.

    ``first`` and ``last`` are its two boundary neighbours, ``inner`` lists the
    remaining neighbours in rotation order from ``first`` to ``last``.
    """

    center: Vertex
    first: Vertex
    inner: tuple[Vertex, ...]
    last: Vertex


@dataclass(frozen=True)
class Matching:
    """A set of vertex-disjoint edges; in oriented mode each pair is (head, tail)."""

    pairs: tuple[Edge, ...] = ()
    oriented: bool = False

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self):
        return iter(self.pairs)

    def covered(self) -> Counter:
        return Counter(v for pair in self.pairs for v in pair)

    def degree(self, v: Vertex) -> int:
        return sum(v in pair for pair in self.pairs)

    @property
    def heads(self) -> frozenset:
        if not self.oriented:
            return frozenset()
        return frozenset(p[0] for p in self.pairs)

    def edge_set(self) -> frozenset:
        return frozenset(frozenset(p) for p in self.pairs)

    def contains_edge(self, u: Vertex, v: Vertex) -> bool:
        return frozenset((u, v)) in self.edge_set()

    def add(self, pair: Edge) -> "Matching":
        return Matching(self.pairs + (tuple(pair),), self.oriented)

    def union(self, other: "Matching") -> "Matching":
        return Matching(self.pairs + other.pairs, self.oriented)

    def without(self, u: Vertex, v: Vertex) -> "Matching":
        key = frozenset((u, v))
        return Matching(tuple(p for p in self.pairs if frozenset(p) != key), self.oriented)


@dataclass(frozen=True, eq=False)
class PlaneGraph:
    """Immutable plane graph.

    ``vertices`` fixes the linear order used by graph polynomials.
    ``outer_anchor`` is a dart of the main component whose face is the outer
    face; further components may carry their own anchor in
    ``component_anchors`` (otherwise the dart from their first vertex to its
    first rotation neighbour is used).  All components are regarded as lying
    in the outer face.
    """

    vertices: tuple[Vertex, ...]
    rotation: Mapping[Vertex, tuple[Vertex, ...]]
    outer_anchor: Optional[Dart] = None
    component_anchors: tuple[Dart, ...] = ()
    _pos: dict = field(init=False, repr=False)
    _rot_index: dict = field(init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(
            self, "rotation", {v: tuple(self.rotation.get(v, ())) for v in self.vertices}
        )
        object.__setattr__(self, "_pos", {v: i for i, v in enumerate(self.vertices)})
        object.__setattr__(
            self,
            "_rot_index",
            {v: {w: i for i, w in enumerate(nbrs)} for v, nbrs in self.rotation.items()},
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, PlaneGraph):
            return NotImplemented
        return (
            self.vertices == other.vertices
            and self.rotation == other.rotation
            and self.outer_anchor == other.outer_anchor
            and self.component_anchors == other.component_anchors
        )

    # -- basic queries -------------------------------------------------

    def __contains__(self, v) -> bool:
        return v in self._pos

    def __len__(self) -> int:
        return len(self.vertices)

    def pos(self, v: Vertex) -> int:
        try:
            return self._pos[v]
        except KeyError:
            raise UnknownVertex(f"unknown vertex {v!r}") from None

    def neighbors(self, v: Vertex) -> tuple[Vertex, ...]:
        return self.rotation[v]

    def degree(self, v: Vertex) -> int:
        return len(self.rotation[v])

    def has_edge(self, u: Vertex, v: Vertex) -> bool:
        return u in self._rot_index and v in self._rot_index[u]

    def edge_key(self, u: Vertex, v: Vertex) -> Edge:
        """Orient an edge from the smaller to the larger vertex in the linear order."""
        return (u, v) if self._pos[u] < self._pos[v] else (v, u)

    def edges(self) -> list[Edge]:
        out = [(u, w) for u in self.vertices for w in self.rotation[u] if self._pos[u] < self._pos[w]]
        out.sort(key=lambda e: (self._pos[e[0]], self._pos[e[1]]))
        return out

    @property
    def num_edges(self) -> int:
        return sum(len(n) for n in self.rotation.values()) // 2

    def sort_key(self, e: Edge) -> tuple[int, int]:
        a, b = sorted((self._pos[e[0]], self._pos[e[1]]))
        return (a, b)

    def succ(self, v: Vertex, u: Vertex) -> Vertex:
        rot = self.rotation[v]
        return rot[(self._rot_index[v][u] + 1) % len(rot)]

    def pred(self, v: Vertex, u: Vertex) -> Vertex:
        rot = self.rotation[v]
        return rot[self._rot_index[v][u] - 1]

    # -- faces and components -----------------------------------------

    def next_dart(self, d: Dart) -> Dart:
        u, v = d
        return (v, self.pred(v, u))

    def trace_face(self, d: Dart) -> list[Dart]:
        face = [d]
        cur = self.next_dart(d)
        while cur != d:
            face.append(cur)
            cur = self.next_dart(cur)
        return face

    def faces(self) -> list[list[Dart]]:
        seen: set = set()
        out = []
        for u in self.vertices:
            for w in self.rotation[u]:
                if (u, w) in seen:
                    continue
                face = self.trace_face((u, w))
                seen.update(face)
                out.append(face)
        return out

    def components(self) -> list[tuple[Vertex, ...]]:
        seen: set = set()
        comps = []
        for s in self.vertices:
            if s in seen:
                continue
            seen.add(s)
            stack, comp = [s], [s]
            while stack:
                x = stack.pop()
                for y in self.rotation[x]:
                    if y not in seen:
                        seen.add(y)
                        comp.append(y)
                        stack.append(y)
            comp.sort(key=self._pos.__getitem__)
            comps.append(tuple(comp))
        return comps

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    def component_anchor(self, comp: Sequence[Vertex]) -> Optional[Dart]:
        """Outer anchor dart of the component with vertex set ``comp``."""
        members = set(comp)
        if self.outer_anchor is not None and self.outer_anchor[0] in members:
            return self.outer_anchor
        for d in self.component_anchors:
            if d[0] in members:
                return d
        first = comp[0]
        if not self.rotation[first]:
            return None
        return (first, self.rotation[first][0])

    def outer_darts(self, comp: Optional[Sequence[Vertex]] = None) -> list[Dart]:
        """Darts of the outer face of ``comp`` (default: the main component)."""
        if comp is None:
            if self.outer_anchor is None:
                return []
            return self.trace_face(self.outer_anchor)
        anchor = self.component_anchor(comp)
        return [] if anchor is None else self.trace_face(anchor)

    def boundary_vertices(self) -> frozenset:
        out: set = set()
        for comp in self.components():
            darts = self.outer_darts(comp)
            if darts:
                out.update(d[0] for d in darts)
            else:
                out.update(comp)
        return frozenset(out)

    def main_component(self) -> tuple[Vertex, ...]:
        comps = self.components()
        if self.outer_anchor is not None:
            for comp in comps:
                if self.outer_anchor[0] in comp:
                    return comp
        return comps[0] if comps else ()

    # -- derived graphs ------------------------------------------------

    def subgraph(
        self,
        keep: Optional[Iterable[Vertex]] = None,
        drop_edges: Iterable[Edge] = (),
        main_edge: Optional[Edge] = None,
    ) -> "PlaneGraph":
        """Restrict to ``keep`` minus ``drop_edges`` with inherited embedding.

        Each resulting component takes as outer face the face that absorbs an
        old outer-face angle; a component with no such angle takes the face
        left where a deleted neighbour used to be (correct when the deleted
        elements touched the outer face).
        """
        keep_set = set(self.vertices) if keep is None else set(keep)
        dropped = {frozenset(e) for e in drop_edges}

        def alive(u, w):
            return w in keep_set and frozenset((u, w)) not in dropped

        vertices = tuple(v for v in self.vertices if v in keep_set)
        rotation = {v: tuple(w for w in self.rotation[v] if alive(v, w)) for v in vertices}
        raw = PlaneGraph(vertices, rotation)

        def angle_dart(v, u):
            # dart of the new face containing the old angle just clockwise of u at v
            if not rotation[v]:
                return None
            rot = self.rotation[v]
            i = self._rot_index[v][u]
            for k in range(len(rot)):
                b = rot[(i + k) % len(rot)]
                if alive(v, b):
                    return (b, v)
            return None

        candidates = []
        old_outer = []
        for comp in self.components():
            old_outer.extend(self.outer_darts(comp))
        for u, v in old_outer:
            if v in keep_set:
                d = angle_dart(v, u)
                if d is not None:
                    candidates.append(d)
        for v in vertices:
            for u in self.rotation[v]:
                if not alive(v, u):
                    d = angle_dart(v, u)
                    if d is not None:
                        candidates.append(d)

        comps = raw.components()
        where = {v: i for i, comp in enumerate(comps) for v in comp}
        anchors: dict[int, Dart] = {}
        for d in candidates:
            anchors.setdefault(where[d[0]], d)
        main_idx = None
        if main_edge is not None and main_edge[0] in where:
            main_idx = where[main_edge[0]]
        elif candidates:
            main_idx = where[candidates[0][0]]
        outer_anchor = anchors.get(main_idx) if main_idx is not None else None
        extra = tuple(anchors[i] for i in sorted(anchors) if i != main_idx)
        return PlaneGraph(vertices, rotation, outer_anchor, extra)

    def delete_vertex(self, v: Vertex, main_edge: Optional[Edge] = None) -> "PlaneGraph":
        return self.subgraph([w for w in self.vertices if w != v], main_edge=main_edge)

    def delete_edges(self, edges: Iterable[Edge], main_edge: Optional[Edge] = None) -> "PlaneGraph":
        return self.subgraph(drop_edges=edges, main_edge=main_edge)


# -- construction -------------------------------------------------------


def build_plane_graph(
    vertices: Sequence[Vertex],
    rotation: Mapping[Vertex, Sequence[Vertex]],
    outer_anchor: Optional[Dart] = None,
    component_anchors: Sequence[Dart] = (),
) -> PlaneGraph:
    """Validate the inputs and return a :class:`PlaneGraph`."""
    vertices = tuple(vertices)
    if len(set(vertices)) != len(vertices):
        dup = next(v for v, c in Counter(vertices).items() if c > 1)
        raise PlaneGraphError(f"vertex {dup!r} declared twice")
    known = set(vertices)
    for v, nbrs in rotation.items():
        if v not in known:
            raise UnknownVertex(f"rotation given for undeclared vertex {v!r}")
        seen = set()
        for w in nbrs:
            if w not in known:
                raise UnknownVertex(f"rotation of {v!r} names undeclared vertex {w!r}")
            if w == v:
                raise LoopEdge(f"loop at vertex {v!r}")
            if w in seen:
                raise ParallelEdge(f"parallel edges between {v!r} and {w!r}")
            seen.add(w)
    for v, nbrs in rotation.items():
        for w in nbrs:
            if v not in rotation.get(w, ()):
                raise AsymmetricRotation(f"{w!r} appears in rotation({v!r}) but {v!r} is missing from rotation({w!r})")
    g = PlaneGraph(vertices, rotation, outer_anchor, tuple(component_anchors))
    comps = g.components()
    comp_of = {v: i for i, comp in enumerate(comps) for v in comp}
    anchors = ([outer_anchor] if outer_anchor is not None else []) + list(component_anchors)
    used = set()
    for d in anchors:
        if len(d) != 2 or not g.has_edge(*d):
            raise PlaneGraphError(f"outer anchor {d!r} is not an edge")
        if comp_of[d[0]] in used:
            raise PlaneGraphError(f"two outer anchors given for the component of {d[0]!r}")
        used.add(comp_of[d[0]])
    if outer_anchor is None and g.num_edges:
        raise PlaneGraphError("graph with edges needs an outer anchor")
    face_count = Counter()
    for face in g.faces():
        face_count[comp_of[face[0][0]]] += 1
    for i, comp in enumerate(comps):
        n_edges = sum(g.degree(v) for v in comp) // 2
        n_faces = face_count[i] if n_edges else 1
        if len(comp) - n_edges + n_faces != 2:
            raise EulerViolation(
                f"component of {comp[0]!r}: V - E + F = {len(comp)} - {n_edges} + {n_faces} != 2"
            )
    return g


# -- operations used by the induction ------------------------------------


def boundary_walk(g: PlaneGraph, e: Optional[Edge] = None) -> BoundaryWalk:
    """Closed walk around the outer face, starting with ``e`` as (v1, v2) if given."""
    if not g.is_connected():
        raise Disconnected("boundary_walk needs a connected graph; split components first")
    if g.num_edges == 0:
        return BoundaryWalk(tuple(g.vertices), True)
    darts = g.outer_darts()
    if e is not None:
        e = tuple(e)
        if e in darts:
            i = darts.index(e)
            darts = darts[i:] + darts[:i]
        elif (e[1], e[0]) in darts:
            rev = [(b, a) for a, b in reversed(darts)]
            i = rev.index(e)
            darts = rev[i:] + rev[:i]
        else:
            raise NotBoundaryEdge(f"edge {e!r} is not on the outer face")
    walk = tuple(d[0] for d in darts)
    return BoundaryWalk(walk, len(set(walk)) == len(walk))


def is_boundary_edge(g: PlaneGraph, e: Edge) -> bool:
    comp = next((c for c in g.components() if e[0] in c), None)
    if comp is None or not g.has_edge(*e):
        return False
    darts = g.outer_darts(comp)
    return tuple(e) in darts or (e[1], e[0]) in darts


def boundary_edges(g: PlaneGraph, comp: Optional[Sequence[Vertex]] = None) -> list[Edge]:
    """Boundary edges of a component (default main) as order-sorted keys."""
    darts = g.outer_darts(comp)
    keys = {g.edge_key(*d) for d in darts}
    return sorted(keys, key=g.sort_key)


def find_chords(g: PlaneGraph, walk: BoundaryWalk) -> list[Edge]:
    if not walk.is_simple_cycle:
        raise NotSimpleBoundary("chords are defined for a simple boundary cycle only")
    n = len(walk)
    index = {v: i for i, v in enumerate(walk.vertices)}
    chords = []
    for u in walk.vertices:
        for w in g.neighbors(u):
            if w in index and g.pos(u) < g.pos(w):
                gap = abs(index[u] - index[w])
                if gap not in (1, n - 1):
                    chords.append((u, w))
    chords.sort(key=g.sort_key)
    return chords


def split_at_chord(g: PlaneGraph, f: Edge, e: Edge) -> tuple[PlaneGraph, PlaneGraph]:
    """Split along chord ``f`` into the side containing ``e`` and the other side."""
    if frozenset(f) == frozenset(e):
        raise EdgeOnChordSide(f"boundary edge {e!r} coincides with the chord")
    walk = boundary_walk(g, e)
    chords = {frozenset(c) for c in find_chords(g, walk)}
    if frozenset(f) not in chords:
        raise NotAChord(f"{f!r} is not a chord of the boundary cycle")
    w = walk.vertices
    n = len(w)
    x, y = f
    i, j = w.index(x), w.index(y)
    if i > j:
        i, j = j, i
        x, y = y, x
    path_a = w[i : j + 1]
    path_b = w[j:] + w[: i + 1]
    # e = (w[0], w[1]) is on path b unless i == 0 (then path a starts with it)
    e_on_a = i == 0 and j > 1
    side = {}
    for v in path_a[1:-1]:
        side[v] = 0
    for v in path_b[1:-1]:
        side[v] = 1
    # neighbours of x and y that are separated by the chord's rotation arcs
    for c, other, nbr_a, nbr_b in (
        (x, y, w[(i + 1) % n], w[i - 1]),
        (y, x, w[j - 1], w[(j + 1) % n]),
    ):
        rot = g.neighbors(c)
        k = rot.index(other)
        seq = rot[k + 1 :] + rot[:k]
        pa, pb = seq.index(nbr_a), seq.index(nbr_b)
        cut = min(pa, pb)
        first_side, second_side = (0, 1) if pa < pb else (1, 0)
        for t, v in enumerate(seq):
            lab = first_side if t <= cut else second_side
            if side.setdefault(v, lab) != lab:
                raise PlaneGraphError(f"inconsistent chord side for {v!r}")
    stack = list(side)
    while stack:
        v = stack.pop()
        for u in g.neighbors(v):
            if u in (x, y):
                continue
            if u not in side:
                side[u] = side[v]
                stack.append(u)
            elif side[u] != side[v]:
                raise PlaneGraphError(f"vertices {u!r} and {v!r} straddle the chord")
    e_side = 0 if e_on_a else 1
    keep1 = [v for v in g.vertices if v in (x, y) or side.get(v) == e_side]
    keep2 = [v for v in g.vertices if v in (x, y) or side.get(v) == 1 - e_side]
    g1 = g.subgraph(keep1, main_edge=tuple(e))
    g2 = g.subgraph(keep2, main_edge=(x, y))
    return g1, g2


def delete_boundary_vertex(g: PlaneGraph, e: Edge) -> tuple[PlaneGraph, Fan]:
    """Delete v_n, the boundary neighbour of v1 other than v2, from a chordless graph."""
    walk = boundary_walk(g, e)
    if not walk.is_simple_cycle:
        raise BoundaryNotSimple("boundary is not a simple cycle")
    if len(walk) < 3:
        raise BoundaryNotSimple("boundary cycle has fewer than three vertices")
    chords = find_chords(g, walk)
    if chords:
        raise HasChord(f"graph has chord {chords[0]!r}")
    v1, vn, vlast = walk[0], walk[-1], walk[-2]
    rot = g.neighbors(vn)
    d = len(rot)
    a, b = rot.index(v1), rot.index(vlast)
    forward = [rot[(a + t) % d] for t in range(1, (b - a) % d)]
    backward = [rot[(a - t) % d] for t in range(1, (a - b) % d)]
    inner = forward if len(forward) >= len(backward) else backward
    if forward and backward:
        raise PlaneGraphError(f"boundary vertex {vn!r} has neighbours on both sides of the outer angle")
    reduced = g.delete_vertex(vn, main_edge=tuple(e))
    return reduced, Fan(vn, v1, tuple(inner), vlast)


def _insert_outer_edge(g: PlaneGraph, darts: list[Dart], j: int) -> PlaneGraph:
    """Join the two walk neighbours of the walk vertex at outer position ``j``."""
    m = len(darts)
    p, c = darts[j - 1]
    q = darts[j][1]
    s = darts[(j + 1) % m][1]
    rot = {v: list(n) for v, n in g.rotation.items()}
    rot[p].insert(rot[p].index(c) + 1, q)
    # s precedes c at q; the new edge goes between them
    rot[q].insert(rot[q].index(c), p)
    assert rot[q][rot[q].index(p) - 1] == s or len(rot[q]) == 2
    return PlaneGraph(g.vertices, rot, (p, q), g.component_anchors)


def augment_to_simple_boundary(g: PlaneGraph, e: Edge) -> tuple[PlaneGraph, list[Edge]]:
    """Add edges inside the outer face until the boundary is a simple cycle.

    Every added edge joins the two walk neighbours of a repeated walk vertex,
    which shortens the walk by one and keeps the set of boundary vertices and
    the boundary edge ``e`` unchanged.
    """
    if not g.is_connected():
        raise Disconnected("augmentation needs a connected graph")
    e = tuple(e)
    added: list[Edge] = []
    cur = g
    while True:
        walk = boundary_walk(cur, e)
        if walk.is_simple_cycle or len(cur) < 3:
            return cur, added
        darts = cur.outer_darts()
        counts = Counter(d[0] for d in darts)
        for j, (c, q) in enumerate(darts):
            p = darts[j - 1][0]
            if counts[c] < 2 or p == q or cur.has_edge(p, q):
                continue
            cand = _insert_outer_edge(cur, darts, j)
            new_darts = cand.outer_darts()
            if len(new_darts) == len(darts) - 1 and (e in new_darts or (e[1], e[0]) in new_darts):
                cur = cand
                added.append(cur.edge_key(p, q))
                break
        else:
            raise NotSimpleBoundary("no admissible edge to add; boundary stays non-simple")


def validate_matching(g: PlaneGraph, e: Edge, m: Matching) -> Check:
    seen: set = set()
    for pair in m.pairs:
        u, v = pair
        if not g.has_edge(u, v):
            return Check(False, f"pair {pair!r} is not an edge")
        if u in seen or v in seen:
            return Check(False, f"pair {pair!r} shares a vertex with another pair")
        seen.update(pair)
    for v in e:
        if v in seen:
            return Check(False, f"endpoint {v!r} of the boundary edge is covered")
    return Check(True)


def matchings(g: PlaneGraph, forbidden: Iterable[Vertex] = ()) -> Iterable[tuple[Edge, ...]]:
    """All matchings avoiding ``forbidden``: empty first, then by size, lexicographic."""
    bad = set(forbidden)
    edges = [ed for ed in g.edges() if ed[0] not in bad and ed[1] not in bad]
    for size in range(0, len(g) // 2 + 1):
        found = False
        for combo in combinations(edges, size):
            used = [v for ed in combo for v in ed]
            if len(set(used)) == len(used):
                found = True
                yield combo
        if not found and size > 0:
            return
