"""Independent checks for extractor output and for the colouring claims it implies.

Coefficients here are always computed with :func:`coeff_select`, the engine
the extractor does not use.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Mapping, Optional

from atcert.certificate import Certificate
from atcert.errors import PreconditionViolated, SearchBudgetExceeded
from atcert.graph_io import graph_digest
from atcert.plane_graph import Check, Edge, Fan, Matching, PlaneGraph, Vertex, is_boundary_edge, validate_matching
from atcert.polynomial import PLUS, CoefficientQuery, ExponentVector, Signature, coeff_select


def nice_caps(g: PlaneGraph, e: Edge, m: Matching) -> dict[Vertex, int]:
    """Per-vertex exponent caps of a nice monomial; oriented heads get one extra."""
    boundary = g.boundary_vertices()
    caps = {}
    for v in g.vertices:
        caps[v] = 2 - m.degree(v) if v in boundary else 3
    for v in e:
        caps[v] = 0
    for h in m.heads:
        if h not in e:
            caps[h] += 1
    return caps


def _removed(e: Edge, m: Matching) -> frozenset:
    out = {frozenset(e)}
    if not m.oriented:
        out |= m.edge_set()
    return frozenset(out)


def is_nice(g: PlaneGraph, e: Edge, m: Matching, eta: Mapping[Vertex, int], sigma: Optional[Signature] = None) -> Check:
    eta = ExponentVector(eta)
    for v in e:
        if eta[v] != 0:
            return Check(False, f"condition 2: exponent at {v!r} is {eta[v]}, not 0")
    boundary = g.boundary_vertices()
    caps = nice_caps(g, e, m)
    for v in g.vertices:
        if eta[v] > caps[v]:
            which = "3 (boundary cap)" if v in boundary else "4 (interior cap)"
            return Check(False, f"condition {which}: exponent at {v!r} is {eta[v]} > {caps[v]}")
    c = coeff_select(CoefficientQuery(g, _removed(e, m), sigma or PLUS, eta))
    if c == 0:
        return Check(False, "condition 1: monomial vanishes")
    return Check(True)


def is_special(
    g_reduced: PlaneGraph, e: Edge, m: Matching, tau: Mapping[Vertex, int], fan: Fan
) -> Check:
    """Caps of a special monomial for the graph left after deleting the fan centre.

    Only the cap conditions are checked; non-vanishing is a separate question.
    """
    tau = ExponentVector(tau)
    boundary = g_reduced.boundary_vertices()
    heads = m.heads
    plain = {v: tau[v] - (v in heads) for v in g_reduced.vertices}
    for v in e:
        if tau[v] != 0:
            return Check(False, f"exponent at {v!r} must be 0")
    if plain[fan.last] > 1 - m.degree(fan.last):
        return Check(False, f"exponent at {fan.last!r} exceeds {1 - m.degree(fan.last)}")
    raised = 0
    for v in g_reduced.vertices:
        if v in e or v == fan.last:
            continue
        if v in boundary:
            cap = 2 - m.degree(v)
            if plain[v] == cap + 1 and v in fan.inner:
                raised += 1
            elif plain[v] > cap:
                return Check(False, f"exponent at boundary vertex {v!r} exceeds {cap}")
        elif plain[v] > 3:
            return Check(False, f"exponent at interior vertex {v!r} exceeds 3")
    if raised > 1:
        return Check(False, f"{raised} fan vertices sit one above their cap")
    return Check(True)


@dataclass
class Report:
    checks: list[tuple[str, bool, str]] = field(default_factory=list)

    def add(self, name: str, ok: bool, detail: str = "") -> None:
        self.checks.append((name, bool(ok), detail))

    @property
    def ok(self) -> bool:
        return all(ok for _, ok, _ in self.checks)

    def failures(self) -> list[str]:
        return [name for name, ok, _ in self.checks if not ok]

    def format(self) -> str:
        lines = []
        for name, ok, detail in self.checks:
            tail = f"  ({detail})" if detail else ""
            lines.append(f"{'PASS' if ok else 'FAIL'} {name}{tail}")
        return "\n".join(lines) + "\n"


def verify_certificate(g: PlaneGraph, sigma: Optional[Signature], cert: Certificate) -> Report:
    sigma = sigma or PLUS
    r = Report()
    r.add("graph-digest", graph_digest(g) == cert.graph_digest)
    e = tuple(cert.edge)
    known = all(v in g for v in e) and all(v in g for p in cert.matching.pairs for v in p)
    known = known and all(v in g for v in cert.eta) and all(v in g for v in cert.eta_final)
    r.add("vertices-known", known)
    if not known:
        return r
    r.add("edge-on-boundary", g.has_edge(*e) and is_boundary_edge(g, e))
    chk = validate_matching(g, e, cert.matching)
    r.add("matching-valid", chk.ok, chk.reason or "")
    expected_mode = "oriented" if cert.matching.oriented else ("plain" if sigma.is_all_plus() else "signed")
    r.add("mode", cert.mode == expected_mode, f"expected {expected_mode}")
    r.add("signature", tuple(map(tuple, cert.negative_edges)) == tuple(sigma.negative_edges(g)))
    if not chk.ok:
        return r
    caps = nice_caps(g, e, cert.matching)
    bad = [v for v in g.vertices if cert.eta[v] > caps[v]]
    r.add("eta-caps", not bad, f"over cap at {bad[0]!r}" if bad else "")
    removed = _removed(e, cert.matching)
    n_edges = g.num_edges - len(removed)
    r.add("eta-sum", cert.eta.total() == n_edges, f"{cert.eta.total()} vs {n_edges}")
    c = coeff_select(CoefficientQuery(g, removed, sigma, cert.eta))
    r.add("coefficient-match", c == cert.coefficient, f"recomputed {c}")
    r.add("coefficient-nonzero", c != 0)
    v1, v2 = e
    r.add("eta-final-relation", cert.eta_final == cert.eta.set(v1, 1))
    final_removed = removed - {frozenset(e)}
    cf = coeff_select(CoefficientQuery(g, final_removed, sigma, cert.eta_final))
    s = 1 if g.pos(v1) > g.pos(v2) else -sigma(v1, v2)
    r.add("eta-final-coefficient", cf != 0 and cf == s * c, f"recomputed {cf}")
    heads = cert.matching.heads
    over = [v for v in g.vertices if cert.eta_final[v] > (4 if v in heads else 3)]
    r.add("eta-final-caps", not over, f"too large at {over[0]!r}" if over else "")
    r.add("eta-final-sum", cert.eta_final.total() == g.num_edges - len(final_removed))
    if cert.matching.oriented:
        r.add("head-count", 2 * len(heads) < len(g), f"|X|={len(heads)}, |V|={len(g)}")
    return r


def check_f_at_witness(
    g: PlaneGraph, sigma: Optional[Signature], eta: Mapping[Vertex, int], f: Mapping[Vertex, int],
    removed=(),
) -> Check:
    """``eta`` witnesses f-AT: every exponent is below ``f`` and the coefficient is non-zero."""
    eta = ExponentVector(eta)
    for v in g.vertices:
        if eta[v] >= f[v]:
            return Check(False, f"exponent at {v!r} is {eta[v]}, needs < {f[v]}")
    q = CoefficientQuery(g, frozenset(frozenset(x) for x in removed), sigma or PLUS, eta)
    if coeff_select(q) == 0:
        return Check(False, "monomial vanishes")
    return Check(True)


def _proper(u_col: int, v_col: int, s: int) -> bool:
    return u_col != s * v_col


def cn_assign(
    g: PlaneGraph,
    sigma: Optional[Signature],
    eta: Mapping[Vertex, int],
    lists: Mapping[Vertex, frozenset],
    removed=(),
) -> Optional[dict[Vertex, int]]:
    """Proper colouring from the lists, guaranteed to exist when the preconditions hold."""
    sigma = sigma or PLUS
    eta = ExponentVector(eta)
    removed = frozenset(frozenset(x) for x in removed)
    for v in g.vertices:
        if len(lists.get(v, ())) < eta[v] + 1:
            raise PreconditionViolated(f"list at {v!r} has fewer than {eta[v] + 1} colours")
    if coeff_select(CoefficientQuery(g, removed, sigma, eta)) == 0:
        raise PreconditionViolated("monomial vanishes in the polynomial")
    adj = {v: [w for w in g.neighbors(v) if frozenset((v, w)) not in removed] for v in g.vertices}
    colour: dict[Vertex, int] = {}
    order = list(g.vertices)

    def rec(i: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        for c in sorted(lists[v]):
            if all(_proper(c, colour[w], sigma(v, w)) for w in adj[v] if w in colour):
                colour[v] = c
                if rec(i + 1):
                    return True
                del colour[v]
        return False

    return dict(colour) if rec(0) else None


def list_color(
    g: PlaneGraph,
    sigma: Optional[Signature],
    lists: Mapping[Vertex, frozenset],
    d: int = 0,
    max_nodes: int = 1_000_000,
) -> Optional[dict[Vertex, int]]:
    """A d-defective L-colouring, or None if there is none.

    Edge ``uv`` is monochromatic when ``c(u) = sigma(uv) c(v)``; each vertex may
    have at most ``d`` monochromatic edges.
    """
    sigma = sigma or PLUS
    missing = [v for v in g.vertices if not lists.get(v)]
    if missing:
        raise PreconditionViolated(f"empty or missing list at {missing[0]!r}")
    colour: dict[Vertex, int] = {}
    load = {v: 0 for v in g.vertices}
    order = list(g.vertices)
    nodes = 0

    def rec(i: int) -> bool:
        nonlocal nodes
        if i == len(order):
            return True
        v = order[i]
        for c in sorted(lists[v]):
            nodes += 1
            if nodes > max_nodes:
                raise SearchBudgetExceeded(f"more than {max_nodes} search nodes")
            clash = [w for w in g.neighbors(v) if w in colour and not _proper(c, colour[w], sigma(v, w))]
            if len(clash) > d or any(load[w] >= d for w in clash):
                continue
            colour[v] = c
            load[v] = len(clash)
            for w in clash:
                load[w] += 1
            if rec(i + 1):
                return True
            for w in clash:
                load[w] -= 1
            load[v] = 0
            del colour[v]
        return False

    return dict(colour) if rec(0) else None


def all_list_assignments(g: PlaneGraph, sizes: Mapping[Vertex, int], palette: range):
    """Every assignment of ``sizes[v]``-subsets of ``palette``; small graphs only."""
    pools = [list(combinations(palette, sizes[v])) for v in g.vertices]
    for choice in product(*pools):
        yield {v: frozenset(c) for v, c in zip(g.vertices, choice)}
