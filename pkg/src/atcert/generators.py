"""Graph sources: a named catalog and a random Apollonian generator."""

from __future__ import annotations

import math
import random
import re
from dataclasses import dataclass
from typing import Callable, Optional

from atcert.errors import UnknownName
from atcert.plane_graph import PlaneGraph, build_plane_graph, Vertex
from atcert.polynomial import Signature


def _cycle_rotation(names: list[str]) -> dict[str, list[str]]:
    n = len(names)
    return {names[i]: [names[(i + 1) % n], names[i - 1]] for i in range(n)}


def _stack(rot: dict[str, list[str]], face: list[str], w: str) -> None:
    """Insert ``w`` inside the face with dart cycle ``face`` and join it to every corner."""
    m = len(face)
    for i in range(m):
        here, nxt = face[i], face[(i + 1) % m]
        r = rot[nxt]
        r.insert(r.index(here), w)
    rot[w] = list(face)


def _triangle_start(names: list[str]) -> tuple[dict[str, list[str]], list[list[str]]]:
    a, b, c = names[:3]
    rot = {a: [b, c], b: [c, a], c: [a, b]}
    return rot, [[b, a, c]]


def random_apollonian(n: int, seed: int) -> PlaneGraph:
    """Stacked triangulation on ``n`` vertices; each new vertex lands in a uniformly random inner face."""
    if n < 3:
        raise ValueError("an Apollonian network needs at least 3 vertices")
    rng = random.Random(seed)
    names = [f"v{i}" for i in range(1, n + 1)]
    rot, faces = _triangle_start(names)
    for w in names[3:]:
        i = rng.randrange(len(faces))
        a, b, c = faces[i]
        _stack(rot, [a, b, c], w)
        faces[i : i + 1] = [[a, b, w], [b, c, w], [c, a, w]]
    return build_plane_graph(names, rot, (names[0], names[1]))


def apollonian_levels(k: int) -> PlaneGraph:
    """Start from a triangle and stack a vertex into every inner face, ``k`` times over."""
    rot, faces = _triangle_start(["v1", "v2", "v3"])
    names = ["v1", "v2", "v3"]
    for _ in range(k):
        new_faces = []
        for a, b, c in faces:
            w = f"v{len(names) + 1}"
            names.append(w)
            _stack(rot, [a, b, c], w)
            new_faces += [[a, b, w], [b, c, w], [c, a, w]]
        faces = new_faces
    return build_plane_graph(names, rot, ("v1", "v2"))


def _cycle(n: int) -> PlaneGraph:
    names = [f"v{i}" for i in range(1, n + 1)]
    return build_plane_graph(names, _cycle_rotation(names), ("v1", "v2"))


def _wheel(n: int) -> PlaneGraph:
    names = [f"v{i}" for i in range(1, n + 1)]
    rot = _cycle_rotation(names)
    inner = [names[1], names[0]] + names[:1:-1]
    _stack(rot, inner, "h")
    return build_plane_graph(names + ["h"], rot, ("v1", "v2"))


def from_coordinates(coords: dict[str, tuple[float, float]], edges: list[tuple[str, str]]) -> PlaneGraph:
    """Straight-line drawing; the first two names must be consecutive on the convex hull."""
    names = list(coords)
    nbrs: dict[str, list[str]] = {v: [] for v in names}
    for u, v in edges:
        nbrs[u].append(v)
        nbrs[v].append(u)

    def angle(v, w):
        (x0, y0), (x1, y1) = coords[v], coords[w]
        return math.atan2(y1 - y0, x1 - x0)

    # clockwise order reads as counterclockwise once the drawing is mirrored,
    # which puts the outer face on the left of hull darts taken counterclockwise
    rot = {v: sorted(nbrs[v], key=lambda w: -angle(v, w)) for v in names}
    return build_plane_graph(names, rot, (names[0], names[1]))


def _polar(r: float, deg: float) -> tuple[float, float]:
    return (r * math.cos(math.radians(deg)), r * math.sin(math.radians(deg)))


def _octahedron() -> PlaneGraph:
    outer = {f"v{i + 1}": _polar(10, 90 + 120 * i) for i in range(3)}
    inner = {f"v{i + 4}": _polar(4, 30 + 120 * i) for i in range(3)}
    edges = [("v1", "v2"), ("v2", "v3"), ("v3", "v1"), ("v4", "v5"), ("v5", "v6"), ("v6", "v4")]
    edges += [("v1", "v4"), ("v1", "v5"), ("v2", "v5"), ("v2", "v6"), ("v3", "v6"), ("v3", "v4")]
    return from_coordinates({**outer, **inner}, edges)


def _icosahedron() -> PlaneGraph:
    coords = {}
    for i in range(3):
        coords[f"v{i + 1}"] = _polar(10, 90 + 120 * i)
    for j in range(6):
        coords[f"v{j + 4}"] = _polar(4, 30 + 60 * j)
    for k in range(3):
        coords[f"v{k + 10}"] = _polar(2, 30 + 120 * k)
    ring = [f"v{j + 4}" for j in range(6)]  # angles 30, 90, ..., 330
    at = {30 + 60 * j: ring[j] for j in range(6)}
    edges = [("v1", "v2"), ("v2", "v3"), ("v3", "v1"), ("v10", "v11"), ("v11", "v12"), ("v12", "v10")]
    edges += [(ring[j], ring[(j + 1) % 6]) for j in range(6)]
    for i, a in enumerate((90, 210, 330)):
        for off in (-60, 0, 60):
            edges.append((f"v{i + 1}", at[(a + off) % 360]))
    for k, a in enumerate((30, 150, 270)):
        for off in (-60, 0, 60):
            edges.append((f"v{k + 10}", at[(a + off) % 360]))
    return from_coordinates(coords, edges)


def _k2() -> PlaneGraph:
    return build_plane_graph(["v1", "v2"], {"v1": ["v2"], "v2": ["v1"]}, ("v1", "v2"))


def _path3() -> PlaneGraph:
    return build_plane_graph(
        ["v1", "v2", "v3"], {"v1": ["v2"], "v2": ["v1", "v3"], "v3": ["v2"]}, ("v1", "v2")
    )


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    graph: PlaneGraph
    note: str


_BUILDERS: dict[str, tuple[Callable[[], PlaneGraph], str]] = {
    "k2": (_k2, "single edge v1v2"),
    "path3": (_path3, "path v1-v2-v3"),
    "c3": (lambda: _cycle(3), "triangle v1v2v3"),
    "c4": (lambda: _cycle(4), "4-cycle v1..v4"),
    "c5": (lambda: _cycle(5), "5-cycle v1..v5"),
    "k4": (lambda: apollonian_levels(1), "outer triangle v1v2v3, hub v4"),
    "w5": (lambda: _wheel(5), "rim v1..v5, hub h"),
    "w6": (lambda: _wheel(6), "rim v1..v6, hub h"),
    "octahedron": (_octahedron, "outer triangle v1v2v3, inner triangle v4v5v6"),
    "icosahedron": (_icosahedron, "outer triangle v1v2v3, hexagon v4..v9, inner triangle v10v11v12"),
}

CATALOG_NAMES = (
    "k2", "path3", "c3", "c4", "c5", "k4", "w5", "w6", "octahedron",
    "apollonian-1", "apollonian-2", "apollonian-3", "icosahedron",
)

_APOLLONIAN = re.compile(r"apollonian-(\d+)")


def catalog_entry(name: str) -> CatalogEntry:
    m = _APOLLONIAN.fullmatch(name)
    if m:
        k = int(m.group(1))
        return CatalogEntry(name, apollonian_levels(k), f"triangle stacked {k} levels deep")
    if name not in _BUILDERS:
        raise UnknownName(f"unknown catalog graph {name!r}; known: {', '.join(CATALOG_NAMES)}, apollonian-K")
    build, note = _BUILDERS[name]
    return CatalogEntry(name, build(), note)


def catalog(name: str) -> PlaneGraph:
    return catalog_entry(name).graph


def random_signature(g: PlaneGraph, seed: int, all_plus: bool = False) -> Signature:
    """Independent fair signs per edge, in edge order, from a seeded generator."""
    if all_plus:
        return Signature()
    rng = random.Random(seed)
    return Signature({e: rng.choice((1, -1)) for e in g.edges()})


def parse_generator_spec(spec: str) -> PlaneGraph:
    """``apollonian:N:SEED``."""
    kind, _, rest = spec.partition(":")
    if kind != "apollonian":
        raise UnknownName(f"unknown generator {kind!r}")
    try:
        n, seed = (int(x) for x in rest.split(":"))
    except ValueError:
        raise UnknownName(f"expected apollonian:N:SEED, got {spec!r}") from None
    return random_apollonian(n, seed)
