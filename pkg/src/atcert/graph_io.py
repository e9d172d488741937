"""Text formats: plane graphs, list assignments and DOT export.

Graph format, one construct per line (``#`` starts a comment)::

    v <id>                    declare a vertex; declaration order is the linear order
    rot <id>: <id> <id> ...   counterclockwise neighbour cycle
    outer <u> <v>             outer-face anchor dart (repeat for further components)
    sign <u> <v> <+1|-1>      edge sign, default +1
"""

from __future__ import annotations

import hashlib
from typing import TYPE_CHECKING, Mapping, Optional

from atcert._text import check_id
from atcert.errors import FormatError, UnknownVertex
from atcert.plane_graph import PlaneGraph, build_plane_graph
from atcert.polynomial import Signature

if TYPE_CHECKING:
    from atcert.certificate import Certificate


def parse_graph(text: str) -> tuple[PlaneGraph, Signature]:
    vertices: list[str] = []
    declared: set = set()
    rotation: dict[str, list[str]] = {}
    anchors: list[tuple[str, str]] = []
    signs: dict[tuple[str, str], int] = {}

    def known(token: str, lineno: int) -> str:
        if token not in declared:
            raise UnknownVertex(f"line {lineno}: undeclared vertex {token!r}")
        return token

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        rest = rest.strip()
        if head == "v":
            name = check_id(rest)
            if name in declared:
                raise FormatError(f"line {lineno}: vertex {name!r} declared twice")
            declared.add(name)
            vertices.append(name)
        elif head == "rot":
            name, sep, nbrs = rest.partition(":")
            if not sep:
                raise FormatError(f"line {lineno}: expected 'rot <id>: <id> ...'")
            name = known(name.strip(), lineno)
            if name in rotation:
                raise FormatError(f"line {lineno}: second rotation for {name!r}")
            rotation[name] = [known(t, lineno) for t in nbrs.split()]
        elif head == "outer":
            parts = rest.split()
            if len(parts) != 2:
                raise FormatError(f"line {lineno}: expected 'outer <u> <v>'")
            anchors.append((known(parts[0], lineno), known(parts[1], lineno)))
        elif head == "sign":
            parts = rest.split()
            if len(parts) != 3 or parts[2] not in ("+1", "-1", "1"):
                raise FormatError(f"line {lineno}: expected 'sign <u> <v> <+1|-1>'")
            u, v = known(parts[0], lineno), known(parts[1], lineno)
            signs[(u, v)] = -1 if parts[2] == "-1" else 1
        else:
            raise FormatError(f"line {lineno}: unknown directive {head!r}")
    g = build_plane_graph(vertices, rotation, anchors[0] if anchors else None, anchors[1:])
    sigma = Signature(signs)
    sigma.check_domain(g)
    return g, sigma


def format_graph(g: PlaneGraph, sigma: Optional[Signature] = None) -> str:
    lines = [f"v {v}" for v in g.vertices]
    lines += [f"rot {v}: {' '.join(g.rotation[v])}".rstrip() for v in g.vertices]
    if g.outer_anchor is not None:
        lines.append(f"outer {g.outer_anchor[0]} {g.outer_anchor[1]}")
    lines += [f"outer {u} {v}" for u, v in g.component_anchors]
    if sigma is not None:
        lines += [f"sign {u} {v} -1" for u, v in sigma.negative_edges(g)]
    return "\n".join(lines) + "\n"


def graph_digest(g: PlaneGraph) -> str:
    return "sha256:" + hashlib.sha256(format_graph(g).encode()).hexdigest()


def parse_lists(text: str) -> dict[str, frozenset]:
    """``vertex: c1 c2 ...`` per line, integer colours."""
    out: dict[str, frozenset] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        name, sep, colours = line.partition(":")
        if not sep:
            raise FormatError(f"line {lineno}: expected 'vertex: c1 c2 ...'")
        name = check_id(name.strip())
        try:
            out[name] = frozenset(int(c) for c in colours.split())
        except ValueError:
            raise FormatError(f"line {lineno}: colours must be integers") from None
        if not out[name]:
            raise FormatError(f"line {lineno}: empty list for {name!r}")
    return out


def _q(name: str) -> str:
    return '"' + name.replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_dot(g: PlaneGraph, cert: Optional["Certificate"] = None) -> str:
    """DOT text; matching edges bold, the boundary edge dashed, labels carry final exponents."""
    bold = set()
    dashed = set()
    if cert is not None:
        bold = {frozenset(p) for p in cert.matching.pairs}
        dashed = {frozenset(cert.edge)}
    lines = ["graph G {", "  node [shape=circle];"]
    for v in g.vertices:
        label = v if cert is None else f"{v}:{cert.eta_final[v]}"
        lines.append(f"  {_q(v)} [label={_q(label)}];")
    for u, v in g.edges():
        key = frozenset((u, v))
        attrs = []
        if key in bold:
            attrs.append("style=bold")
        elif key in dashed:
            attrs.append("style=dashed")
        suffix = f" [{', '.join(attrs)}]" if attrs else ""
        lines.append(f"  {_q(u)} -- {_q(v)}{suffix};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def format_lists(lists: Mapping[str, frozenset]) -> str:
    return "".join(f"{v}: {' '.join(str(c) for c in sorted(cs))}\n" for v, cs in lists.items())
