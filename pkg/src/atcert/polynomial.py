"""Coefficients of (signed) graph polynomials.

The polynomial of a graph under its vertex order is the product over edges
``uv`` with ``u < v`` of ``(x_v - sigma(uv) x_u)``.  Two engines compute the
coefficient of a monomial: a frontier dynamic program (:func:`coeff_dp`) and a
plain endpoint-selection enumeration (:func:`coeff_select`).  They share no
code beyond input validation so that each can check the other.
"""

from __future__ import annotations

from collections import defaultdict
from collections.abc import Mapping
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional, Sequence

from atcert._text import check_id, natural_key
from atcert.errors import (
    FormatError,
    InternalProofViolation,
    PreconditionViolated,
    SearchBudgetExceeded,
    UnknownVertex,
)
from atcert.plane_graph import Edge, PlaneGraph, Vertex


class ExponentVector(Mapping):
    """Non-negative integer exponent per vertex; absent vertices read as 0."""

    __slots__ = ("_data",)

    def __init__(self, data: Optional[Mapping[Vertex, int]] = None, **kw: int):
        items = dict(data or {}, **kw)
        clean = {}
        for v, k in items.items():
            if not isinstance(k, int) or isinstance(k, bool):
                raise TypeError(f"exponent of {v!r} must be an int, got {k!r}")
            if k < 0:
                raise ValueError(f"negative exponent {k} at {v!r}")
            if k:
                clean[v] = k
        self._data = clean

    def __getitem__(self, v: Vertex) -> int:
        return self._data.get(v, 0)

    def __contains__(self, v) -> bool:
        return v in self._data

    def __iter__(self) -> Iterator[Vertex]:
        return iter(self._data)

    def __len__(self) -> int:
        return len(self._data)

    def __hash__(self) -> int:
        return hash(frozenset(self._data.items()))

    def __eq__(self, other) -> bool:
        if isinstance(other, Mapping):
            return self._data == {k: v for k, v in other.items() if v}
        return NotImplemented

    def __repr__(self) -> str:
        return f"ExponentVector({self.to_spec()!r})"

    def __add__(self, other: Mapping[Vertex, int]) -> "ExponentVector":
        out = dict(self._data)
        for v, k in other.items():
            out[v] = out.get(v, 0) + k
        return ExponentVector(out)

    def __le__(self, other: Mapping[Vertex, int]) -> bool:
        return all(k <= other.get(v, 0) for v, k in self._data.items())

    def total(self) -> int:
        return sum(self._data.values())

    def inc(self, v: Vertex, k: int = 1) -> "ExponentVector":
        return self.set(v, self[v] + k)

    def dec(self, v: Vertex, k: int = 1) -> "ExponentVector":
        if self[v] < k:
            raise ValueError(f"cannot lower exponent of {v!r} below zero")
        return self.set(v, self[v] - k)

    def set(self, v: Vertex, k: int) -> "ExponentVector":
        out = dict(self._data)
        out[v] = k
        return ExponentVector(out)

    def max(self) -> int:
        return max(self._data.values(), default=0)

    def to_spec(self) -> str:
        """``v1=1,v3=2`` with vertices in natural order; ``-`` when all zero."""
        if not self._data:
            return "-"
        return ",".join(f"{v}={self._data[v]}" for v in sorted(self._data, key=natural_key))

    @classmethod
    def from_spec(cls, text: str) -> "ExponentVector":
        text = text.strip()
        if text in ("", "-"):
            return cls()
        out: dict = {}
        for part in text.split(","):
            name, sep, value = part.strip().partition("=")
            if not sep:
                raise FormatError(f"expected vertex=exponent, got {part!r}")
            name = check_id(name.strip())
            if name in out:
                raise FormatError(f"vertex {name!r} listed twice")
            try:
                out[name] = int(value)
            except ValueError:
                raise FormatError(f"bad exponent {value!r} for {name!r}") from None
            if out[name] < 0:
                raise FormatError(f"negative exponent for {name!r}")
        return cls(out)


class Signature:
    """Edge signs in {+1, -1}; unlisted edges are +1."""

    def __init__(self, signs: Optional[Mapping[Edge, int]] = None):
        self._neg = set()
        for e, s in (signs or {}).items():
            if s not in (1, -1):
                raise ValueError(f"sign of {e!r} must be +1 or -1, got {s!r}")
            if s == -1:
                self._neg.add(frozenset(e))

    def __call__(self, u: Vertex, v: Vertex) -> int:
        return -1 if frozenset((u, v)) in self._neg else 1

    def __eq__(self, other) -> bool:
        return isinstance(other, Signature) and self._neg == other._neg

    def __repr__(self) -> str:
        return f"Signature({len(self._neg)} negative edges)"

    def is_all_plus(self) -> bool:
        return not self._neg

    def negative_edges(self, g: PlaneGraph) -> list[Edge]:
        keys = [g.edge_key(*tuple(e)) for e in self._neg if all(v in g for v in e)]
        return sorted(keys, key=g.sort_key)

    def check_domain(self, g: PlaneGraph) -> None:
        for e in self._neg:
            u, v = tuple(e)
            if u not in g or v not in g or not g.has_edge(u, v):
                raise PreconditionViolated(f"signature names non-edge {tuple(e)!r}")


PLUS = Signature()


@dataclass(frozen=True)
class CoefficientQuery:
    """Coefficient of ``x^eta`` in the polynomial of ``graph - removed``."""

    graph: PlaneGraph
    removed: frozenset = frozenset()
    signature: Signature = PLUS
    eta: ExponentVector = field(default_factory=ExponentVector)

    def __post_init__(self):
        object.__setattr__(self, "removed", frozenset(frozenset(e) for e in self.removed))
        if self.signature is None:
            object.__setattr__(self, "signature", PLUS)
        if not isinstance(self.eta, ExponentVector):
            object.__setattr__(self, "eta", ExponentVector(self.eta))
        for e in self.removed:
            u, v = tuple(e)
            if not self.graph.has_edge(u, v):
                raise PreconditionViolated(f"removed edge {tuple(e)!r} is not in the graph")
        for v in self.eta:
            if v not in self.graph:
                raise UnknownVertex(f"exponent given for unknown vertex {v!r}")

    def edges(self) -> list[Edge]:
        return [e for e in self.graph.edges() if frozenset(e) not in self.removed]


def _elimination_order(n: int, factors: Sequence[tuple[int, int, int]]) -> list[int]:
    adj = [set() for _ in range(n)]
    for a, b, _ in factors:
        adj[a].add(b)
        adj[b].add(a)
    placed = [False] * n
    touched = [0] * n
    order = []
    for _ in range(n):
        best = max(
            (i for i in range(n) if not placed[i]),
            key=lambda i: (touched[i], -len(adj[i]) if touched[i] == 0 else 0, -i),
        )
        placed[best] = True
        order.append(best)
        for j in adj[best]:
            touched[j] += 1
    return order


def coeff_dp(q: CoefficientQuery) -> int:
    """Edge-by-edge dynamic program over partial exponent vectors.

    States exceeding ``eta`` or unable to reach it with the remaining edges
    are discarded, so a vertex whose edges are all processed is pinned to its
    target exponent and only the frontier varies.
    """
    g = q.graph
    n = len(g)
    target = [q.eta[v] for v in g.vertices]
    factors = [(g.pos(u), g.pos(v), q.signature(u, v)) for u, v in q.edges()]
    if sum(target) != len(factors):
        return 0
    rank = {v: i for i, v in enumerate(_elimination_order(n, factors))}
    factors.sort(key=lambda f: (max(rank[f[0]], rank[f[1]]), min(rank[f[0]], rank[f[1]])))
    rem = [0] * n
    for a, b, _ in factors:
        rem[a] += 1
        rem[b] += 1
    if any(t > r for t, r in zip(target, rem)):
        return 0
    states: dict[tuple, int] = {(0,) * n: 1}
    for a, b, s in factors:
        rem[a] -= 1
        rem[b] -= 1
        ta, tb, ra, rb = target[a], target[b], rem[a], rem[b]
        nxt: dict[tuple, int] = defaultdict(int)
        for st, c in states.items():
            ca, cb = st[a], st[b]
            if cb < tb and ca + ra >= ta:
                lst = list(st)
                lst[b] = cb + 1
                nxt[tuple(lst)] += c
            if ca < ta and cb + rb >= tb:
                lst = list(st)
                lst[a] = ca + 1
                nxt[tuple(lst)] -= s * c
        states = {k: v for k, v in nxt.items() if v}
        if not states:
            return 0
    return states.get(tuple(target), 0)


def coeff_select(q: CoefficientQuery) -> int:
    """Enumerate one endpoint per edge; sum the signs of selections tallying to ``eta``.

    Choosing the larger endpoint ``v`` of ``uv`` contributes ``+1``, choosing
    ``u`` contributes ``-sigma(uv)``.  Branches are cut as soon as a tally
    overshoots or can no longer be reached.
    """
    g = q.graph
    index = {v: i for i, v in enumerate(g.vertices)}
    edges = []
    for u in g.vertices:
        for v in g.neighbors(u):
            if index[u] < index[v] and frozenset((u, v)) not in q.removed:
                edges.append((index[u], index[v], q.signature(u, v)))
    edges.sort()
    target = [q.eta[v] for v in g.vertices]
    if sum(target) != len(edges):
        return 0
    left = [0] * len(target)
    for a, b, _ in edges:
        left[a] += 1
        left[b] += 1
    tally = [0] * len(target)
    m = len(edges)

    def walk(i: int, sign: int) -> int:
        if i == m:
            return sign
        a, b, s = edges[i]
        left[a] -= 1
        left[b] -= 1
        total = 0
        if tally[b] < target[b] and tally[a] + left[a] >= target[a]:
            tally[b] += 1
            total += walk(i + 1, sign)
            tally[b] -= 1
        if tally[a] < target[a] and tally[b] + left[b] >= target[b]:
            tally[a] += 1
            total += walk(i + 1, -s * sign)
            tally[a] -= 1
        left[a] += 1
        left[b] += 1
        return total

    return walk(0, 1)


ENGINES = {"dp": coeff_dp, "select": coeff_select}


def coefficient(
    g: PlaneGraph,
    eta: Mapping[Vertex, int],
    removed: Iterable[Edge] = (),
    sigma: Optional[Signature] = None,
    engine: str = "dp",
) -> int:
    return ENGINES[engine](CoefficientQuery(g, frozenset(removed), sigma or PLUS, ExponentVector(eta)))


def restrict_monomial(
    g: PlaneGraph,
    removed: Iterable[Edge],
    sigma: Optional[Signature],
    eta: ExponentVector,
    f: Edge,
) -> ExponentVector:
    """Lower ``eta`` at one endpoint of ``f`` so it stays non-vanishing once ``f`` is removed.

    With ``f = ab``, ``a < b``: c(eta) = c'(eta - 1_b) - sigma(f) c'(eta - 1_a),
    so one of the two candidates is non-zero whenever c(eta) is.
    """
    removed = frozenset(frozenset(e) for e in removed)
    if coeff_dp(CoefficientQuery(g, removed, sigma or PLUS, eta)) == 0:
        raise PreconditionViolated("input monomial vanishes")
    a, b = g.edge_key(*f)
    smaller = removed | {frozenset(f)}
    for v in (b, a):
        if eta[v] == 0:
            continue
        cand = eta.dec(v)
        if coeff_dp(CoefficientQuery(g, smaller, sigma or PLUS, cand)) != 0:
            return cand
    raise InternalProofViolation(f"both restrictions of {eta!r} along {f!r} vanish")


def capped_compositions(total: int, caps: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """Vectors ``x`` with ``0 <= x[i] <= caps[i]`` and ``sum(x) == total``, lexicographically."""
    n = len(caps)
    suffix = [0] * (n + 1)
    for i in range(n - 1, -1, -1):
        suffix[i] = suffix[i + 1] + max(caps[i], 0)
    if total < 0 or total > suffix[0]:
        return
    cur = [0] * n

    def rec(i: int, left: int):
        if i == n:
            yield tuple(cur)
            return
        lo = max(0, left - suffix[i + 1])
        hi = min(caps[i], left)
        for k in range(lo, hi + 1):
            cur[i] = k
            yield from rec(i + 1, left - k)
        cur[i] = 0

    yield from rec(0, total)


def _search(
    g: PlaneGraph,
    sigma: Optional[Signature],
    caps: Sequence[int],
    removed: frozenset,
    max_candidates: Optional[int],
) -> Optional[ExponentVector]:
    m = g.num_edges - len(removed)
    for tried, vec in enumerate(capped_compositions(m, caps)):
        if max_candidates is not None and tried >= max_candidates:
            raise SearchBudgetExceeded(f"more than {max_candidates} candidate exponents")
        eta = ExponentVector(dict(zip(g.vertices, vec)))
        if coeff_dp(CoefficientQuery(g, removed, sigma or PLUS, eta)) != 0:
            return eta
    return None


def at_number(
    g: PlaneGraph,
    sigma: Optional[Signature] = None,
    max_edges: int = 20,
    removed: Iterable[Edge] = (),
    max_candidates: Optional[int] = None,
) -> tuple[int, ExponentVector]:
    """Smallest ``k`` with a non-vanishing monomial whose exponents are all below ``k``."""
    removed = frozenset(frozenset(e) for e in removed)
    if g.num_edges - len(removed) > max_edges:
        raise SearchBudgetExceeded(f"{g.num_edges - len(removed)} edges exceed the guard of {max_edges}")
    top = max((g.degree(v) for v in g.vertices), default=0)
    for k in range(1, top + 2):
        eta = _search(g, sigma, [k - 1] * len(g), removed, max_candidates)
        if eta is not None:
            return k, eta
    raise InternalProofViolation("no monomial with exponents below max degree + 1")


def f_at_check(
    g: PlaneGraph,
    sigma: Optional[Signature],
    f: Mapping[Vertex, int],
    max_edges: int = 20,
    removed: Iterable[Edge] = (),
    max_candidates: Optional[int] = None,
) -> Optional[ExponentVector]:
    """First non-vanishing ``eta`` with ``eta(v) < f(v)`` everywhere, or ``None``."""
    removed = frozenset(frozenset(e) for e in removed)
    missing = [v for v in g.vertices if v not in f]
    if missing:
        raise PreconditionViolated(f"f is undefined at {missing[0]!r}")
    if g.num_edges - len(removed) > max_edges:
        raise SearchBudgetExceeded(f"{g.num_edges - len(removed)} edges exceed the guard of {max_edges}")
    return _search(g, sigma, [f[v] - 1 for v in g.vertices], removed, max_candidates)
