"""Constructive search for a matching ``M`` and a capped non-vanishing monomial.

For a plane graph ``G`` with boundary edge ``e = v1v2`` the recursion returns
a matching avoiding ``v1`` and ``v2`` and an exponent vector ``eta`` that is
zero at ``v1, v2``, at most ``2 - d_M(v)`` on the rest of the boundary, at
most 3 inside, and whose coefficient in the polynomial of ``G - e - M`` is
non-zero.  Raising ``eta(v1)`` to 1 then gives a monomial of ``G - M`` with
every exponent at most 3.

Reduction steps:

* a chord splits ``G`` into two sides solved separately, results added;
* otherwise the boundary neighbour ``vn`` of ``v1`` is deleted, the rest is
  solved, and ``eta`` is lifted back across the fan of ``vn``;
* small graphs, and any graph whose boundary cannot be made simple, are
  settled by exhaustive search.

In oriented mode the edge that would join the matching stays in the
polynomial; its fan endpoint (the head) is allowed one extra unit instead.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Optional

from atcert.certificate import Certificate, TraceStep
from atcert.errors import InternalProofViolation, NotBoundaryEdge, NotSimpleBoundary, PreconditionViolated
from atcert.graph_io import graph_digest
from atcert.plane_graph import (
    BoundaryWalk,
    Edge,
    Fan,
    Matching,
    PlaneGraph,
    Vertex,
    augment_to_simple_boundary,
    boundary_edges,
    boundary_walk,
    delete_boundary_vertex,
    find_chords,
    is_boundary_edge,
    matchings,
    split_at_chord,
)
from atcert.polynomial import (
    PLUS,
    CoefficientQuery,
    ExponentVector,
    Signature,
    capped_compositions,
    coeff_dp,
    restrict_monomial,
)


@dataclass(frozen=True)
class Partial:
    """Recursion result for one (graph, boundary edge) pair."""

    matching: Matching
    eta: ExponentVector
    coefficient: int


class Extractor:
    def __init__(
        self,
        sigma: Optional[Signature] = None,
        oriented: bool = False,
        base_threshold: int = 6,
        check_steps: bool = True,
    ):
        if base_threshold < 2:
            raise ValueError("base threshold must be at least 2")
        self.sigma = sigma or PLUS
        self.oriented = oriented
        self.base_threshold = base_threshold
        self.check_steps = check_steps
        self.trace: list[TraceStep] = []

    # -- helpers -----------------------------------------------------------

    def _removed(self, e: Edge, m: Matching) -> frozenset:
        out = {frozenset(e)}
        if not self.oriented:
            out |= m.edge_set()
        return frozenset(out)

    def _coeff(self, g: PlaneGraph, e: Edge, m: Matching, eta: ExponentVector) -> int:
        return coeff_dp(CoefficientQuery(g, self._removed(e, m), self.sigma, eta))

    @staticmethod
    def _caps(g: PlaneGraph, e: Edge, m: Matching) -> dict[Vertex, int]:
        boundary = g.boundary_vertices()
        caps = {v: (2 - m.degree(v) if v in boundary else 3) + (v in m.heads) for v in g.vertices}
        for v in e:
            caps[v] = 0
        return caps

    def _record(self, rule: str, depth: int, **params) -> None:
        self.trace.append(TraceStep(rule, depth, params))

    def _check(self, g: PlaneGraph, e: Edge, r: Partial, where: str) -> Partial:
        if not self.check_steps:
            return r
        caps = self._caps(g, e, r.matching)
        over = [v for v in g.vertices if r.eta[v] > caps[v]]
        if over:
            raise InternalProofViolation(f"{where}: exponent {r.eta[over[0]]} at {over[0]!r} exceeds cap")
        if r.coefficient == 0 or self._coeff(g, e, r.matching, r.eta) != r.coefficient:
            raise InternalProofViolation(f"{where}: coefficient check failed")
        return r

    # -- recursion -----------------------------------------------------------

    def solve(self, g: PlaneGraph, e: Edge, depth: int = 0) -> Partial:
        e = tuple(e)
        if not g.is_connected():
            return self._components(g, e, depth)
        walk = boundary_walk(g, e)
        if len(g) <= self.base_threshold:
            return self.base_search(g, e, depth)
        if not walk.is_simple_cycle:
            return self._augment(g, e, depth)
        chords = find_chords(g, walk)
        if chords:
            return self.case_chord(g, e, chords[0], depth)
        return self.case_no_chord(g, e, walk, depth)

    def _components(self, g: PlaneGraph, e: Edge, depth: int) -> Partial:
        """Each component sits in the outer face; components without ``e`` use their own edge."""
        m = Matching(oriented=self.oriented)
        eta = ExponentVector()
        coeff = 1
        anchors = []
        for comp in g.components():
            if e[0] in comp:
                sub = g.subgraph(comp, main_edge=e)
                r = self.solve(sub, e, depth + 1)
                m, eta, coeff = m.union(r.matching), eta + r.eta, coeff * r.coefficient
                continue
            if len(comp) == 1:
                continue
            ec = boundary_edges(g, comp)[0]
            anchors.append(list(ec))
            sub = g.subgraph(comp, main_edge=ec)
            r = self.solve(sub, ec, depth + 1)
            s = 1 if g.pos(ec[0]) > g.pos(ec[1]) else -self.sigma(*ec)
            m, eta = m.union(r.matching), eta + r.eta.set(ec[0], 1)
            coeff *= s * r.coefficient
        self._record("Components", depth, count=len(g.components()), edges=anchors)
        return self._check(g, e, Partial(m, eta, coeff), "components")

    def base_search(self, g: PlaneGraph, e: Edge, depth: int) -> Partial:
        """First matching (empty first, then by size) admitting a capped non-vanishing monomial."""
        e = tuple(e)
        for pairs in matchings(g, forbidden=e):
            orientations = product((0, 1), repeat=len(pairs)) if self.oriented else [None]
            for flips in orientations:
                if flips is None:
                    m = Matching(tuple(pairs))
                else:
                    m = Matching(tuple((b, a) if f else (a, b) for (a, b), f in zip(pairs, flips)), True)
                caps = self._caps(g, e, m)
                removed = self._removed(e, m)
                total = g.num_edges - len(removed)
                for vec in capped_compositions(total, [caps[v] for v in g.vertices]):
                    eta = ExponentVector(dict(zip(g.vertices, vec)))
                    c = coeff_dp(CoefficientQuery(g, removed, self.sigma, eta))
                    if c:
                        self._record("Base", depth, vertices=len(g), pairs=[list(p) for p in m.pairs])
                        return Partial(m, eta, c)
        raise InternalProofViolation(f"no capped non-vanishing monomial on {len(g)} vertices")

    def case_chord(self, g: PlaneGraph, e: Edge, f: Edge, depth: int) -> Partial:
        f = g.edge_key(*f)
        g1, g2 = split_at_chord(g, f, e)
        r1 = self.solve(g1, e, depth + 1)
        r2 = self.solve(g2, f, depth + 1)
        r = Partial(r1.matching.union(r2.matching), r1.eta + r2.eta, r1.coefficient * r2.coefficient)
        self._record("Chord", depth, chord=list(f), sides=[len(g1), len(g2)])
        return self._check(g, e, r, "chord")

    @staticmethod
    def special_candidates(eta1: ExponentVector, fan: Fan) -> list[tuple[Vertex, ExponentVector]]:
        """Move one unit from ``fan.last`` to each inner fan vertex in turn."""
        if eta1[fan.last] < 1:
            return []
        lowered = eta1.dec(fan.last)
        return [(u, lowered.inc(u)) for u in fan.inner]

    def _lift(self, eta1: ExponentVector, fan: Fan) -> ExponentVector:
        eta = eta1.set(fan.center, 2)
        for u in fan.inner:
            eta = eta.inc(u)
        return eta

    def case_no_chord(self, g: PlaneGraph, e: Edge, walk: BoundaryWalk, depth: int) -> Partial:
        reduced, fan = delete_boundary_vertex(g, e)
        r1 = self.solve(reduced, e, depth + 1)
        m = r1.matching
        fan_params = dict(vn=fan.center, fan=[fan.first, *fan.inner, fan.last])
        if len(walk) == 3:
            eta = self._lift(r1.eta, fan)
            self._record("N3", depth, **fan_params)
            return self._check(g, e, Partial(m, eta, self._coeff(g, e, m, eta)), "n=3")
        outcomes = []
        for u, tau in self.special_candidates(r1.eta, fan):
            c = self._coeff(reduced, e, m, tau)
            outcomes.append([u, c != 0])
            if c:
                return self.subcase_2i(g, e, m, tau, fan, depth, outcomes)
        eta = self._lift(r1.eta, fan)
        self._record("Subcase2ii", depth, tested=outcomes, **fan_params)
        return self._check(g, e, Partial(m, eta, self._coeff(g, e, m, eta)), "subcase 2(ii)")

    def subcase_2i(
        self, g: PlaneGraph, e: Edge, m: Matching, tau: ExponentVector, fan: Fan, depth: int, outcomes=()
    ) -> Partial:
        heads = m.heads
        saturated = [u for u in fan.inner if tau[u] - (u in heads) == 3]
        if len(saturated) > 1:
            raise InternalProofViolation(f"several saturated fan vertices {saturated!r}")
        sat = saturated[0] if saturated else None
        if sat is not None and m.degree(sat) != 0:
            raise InternalProofViolation(f"saturated vertex {sat!r} is already matched")
        eta = tau.set(fan.center, 1)
        for v in (fan.last, *fan.inner):
            if v != sat or self.oriented:
                eta = eta.inc(v)
        if sat is not None:
            pair = (sat, fan.center) if self.oriented else g.edge_key(sat, fan.center)
            m = m.add(pair)
        self._record(
            "Subcase2i", depth, vn=fan.center, fan=[fan.first, *fan.inner, fan.last],
            tested=[list(t) for t in outcomes], saturated=sat,
        )
        return self._check(g, e, Partial(m, eta, self._coeff(g, e, m, eta)), "subcase 2(i)")

    def _augment(self, g: PlaneGraph, e: Edge, depth: int) -> Partial:
        try:
            big, added = augment_to_simple_boundary(g, e)
        except NotSimpleBoundary:
            return self.base_search(g, e, depth)
        r = self.solve(big, e, depth + 1)
        self._record("Augment", depth, added=[list(f) for f in added])
        m, eta, cur = r.matching, r.eta, big
        for f in reversed(added):
            if m.contains_edge(*f) and not self.oriented:
                # same edge set either way: f leaves the matching and the graph together
                m = m.without(*f)
                how = "unmatched"
            else:
                eta = restrict_monomial(cur, self._removed(e, m), self.sigma, eta, f)
                m = m.without(*f)
                how = "restricted"
            cur = cur.delete_edges([f], main_edge=e)
            self._record("Restrict", depth, edge=list(f), action=how)
        return self._check(g, e, Partial(m, eta, self._coeff(g, e, m, eta)), "augmentation")

    # -- top level -------------------------------------------------------------

    def finalize(self, g: PlaneGraph, e: Edge, r: Partial) -> Certificate:
        v1, v2 = e
        eta_final = r.eta.set(v1, 1)
        s = 1 if g.pos(v1) > g.pos(v2) else -self.sigma(v1, v2)
        final = s * r.coefficient
        if self.check_steps:
            removed = self._removed(e, r.matching) - {frozenset(e)}
            if coeff_dp(CoefficientQuery(g, removed, self.sigma, eta_final)) != final:
                raise InternalProofViolation("final coefficient differs from the lifted one")
        heads = r.matching.heads
        if any(eta_final[v] > 3 + (v in heads) for v in g.vertices):
            raise InternalProofViolation("final exponent above the cap")
        if self.oriented:
            mode = "oriented"
        else:
            mode = "plain" if self.sigma.is_all_plus() else "signed"
        return Certificate(
            graph_digest=graph_digest(g),
            mode=mode,
            edge=(v1, v2),
            matching=r.matching,
            eta=r.eta,
            eta_final=eta_final,
            coefficient=r.coefficient,
            negative_edges=tuple(self.sigma.negative_edges(g)),
            trace=tuple(self.trace),
        )

    def run(self, g: PlaneGraph, e: Optional[Edge] = None) -> Certificate:
        self.trace = []
        e = default_edge(g) if e is None else tuple(e)
        if not g.has_edge(*e):
            raise PreconditionViolated(f"{e!r} is not an edge")
        if not is_boundary_edge(g, e):
            raise NotBoundaryEdge(f"edge {e!r} is not on the outer face")
        self.sigma.check_domain(g)
        return self.finalize(g, e, self.solve(g, e))


def default_edge(g: PlaneGraph) -> Edge:
    """Smallest boundary edge of the main component (or of the first component with edges)."""
    comps = [g.main_component()] + [c for c in g.components() if c != g.main_component()]
    for comp in comps:
        edges = boundary_edges(g, comp)
        if edges:
            return edges[0]
    raise PreconditionViolated("graph has no edges")


def extract(
    g: PlaneGraph,
    e: Optional[Edge] = None,
    sigma: Optional[Signature] = None,
    oriented: bool = False,
    base_threshold: int = 6,
    check_steps: bool = True,
) -> Certificate:
    return Extractor(sigma, oriented, base_threshold, check_steps).run(g, e)


def extract_oriented(g: PlaneGraph, e: Optional[Edge] = None, sigma: Optional[Signature] = None, **kw) -> Certificate:
    return extract(g, e, sigma, oriented=True, **kw)
