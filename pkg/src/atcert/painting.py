"""Exact solver for the d-defective painting game on small graphs.

Each round Lister marks a non-empty set ``A`` of uncoloured vertices, each
marked vertex spends one token, and Painter colours a subset ``X`` of ``A``
whose induced subgraph has maximum degree at most ``d``.  Lister wins once an
uncoloured vertex is left without tokens; Painter wins by colouring everything.

Painter only ever needs to consider maximal admissible replies: colouring a
vertex removes it for good, and a position with fewer uncoloured vertices and
the same tokens is never worse for Painter.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Optional

from atcert.errors import SearchBudgetExceeded
from atcert.plane_graph import PlaneGraph, Vertex

State = tuple[int, tuple[int, ...]]


@dataclass
class PaintResult:
    winner: str
    variation: list[tuple[str, tuple[Vertex, ...]]]
    states: int
    solver: "PaintSolver" = field(repr=False, default=None)

    def format(self) -> str:
        lines = [f"winner {self.winner}", f"states {self.states}"]
        for who, verts in self.variation:
            lines.append(f"{who.lower()} {' '.join(verts) if verts else '-'}")
        return "\n".join(lines) + "\n"


class PaintSolver:
    def __init__(self, g: PlaneGraph, d: int = 0, max_states: Optional[int] = None):
        self.g = g
        self.d = d
        self.n = len(g)
        self.max_states = max_states
        idx = {v: i for i, v in enumerate(g.vertices)}
        self.adj = [0] * self.n
        for v in g.vertices:
            for w in g.neighbors(v):
                self.adj[idx[v]] |= 1 << idx[w]
        self._memo: dict[State, bool] = {}
        self._replies: dict[int, list[int]] = {}

    def _sparse(self, x: int) -> bool:
        m = x
        while m:
            low = m & -m
            i = low.bit_length() - 1
            if bin(self.adj[i] & x).count("1") > self.d:
                return False
            m ^= low
        return True

    def replies(self, a: int) -> list[int]:
        """Maximal subsets of ``a`` inducing maximum degree at most ``d``, largest first."""
        if a not in self._replies:
            ok = []
            sub = a
            while True:
                if self._sparse(sub):
                    ok.append(sub)
                if sub == 0:
                    break
                sub = (sub - 1) & a
            out = []
            for x in ok:
                rest = a & ~x
                maximal = True
                m = rest
                while m:
                    low = m & -m
                    if self._sparse(x | low):
                        maximal = False
                        break
                    m ^= low
                if maximal:
                    out.append(x)
            self._replies[a] = out
        return self._replies[a]

    def _after(self, state: State, a: int, x: int) -> Optional[State]:
        """Next state, or None when the round leaves a starved uncoloured vertex."""
        mask, tokens = state
        new = list(tokens)
        for i in range(self.n):
            if a >> i & 1:
                new[i] -= 1
        left = mask & ~x
        for i in range(self.n):
            if left >> i & 1:
                if new[i] == 0:
                    return None
            else:
                new[i] = 0
        return (left, tuple(new))

    def painter_wins(self, state: State) -> bool:
        mask, tokens = state
        if mask == 0:
            return True
        if state in self._memo:
            return self._memo[state]
        if self.max_states is not None and len(self._memo) >= self.max_states:
            raise SearchBudgetExceeded(f"more than {self.max_states} game states")
        result = True
        a = mask
        while a:
            if self.best_reply(state, a) is None:
                result = False
                break
            a = (a - 1) & mask
        self._memo[state] = result
        return result

    def best_reply(self, state: State, a: int) -> Optional[int]:
        """A reply to marking ``a`` that keeps Painter winning, if one exists."""
        for x in self.replies(a):
            nxt = self._after(state, a, x)
            if nxt is not None and self.painter_wins(nxt):
                return x
        return None

    def best_mark(self, state: State) -> Optional[int]:
        """A marking that defeats every reply, if Lister has one."""
        mask = state[0]
        a = mask
        while a:
            if self.best_reply(state, a) is None:
                return a
            a = (a - 1) & mask
        return None

    def names(self, bits: int) -> tuple[Vertex, ...]:
        return tuple(v for i, v in enumerate(self.g.vertices) if bits >> i & 1)

    def variation(self, state: State, plies: int = 10) -> list[tuple[str, tuple[Vertex, ...]]]:
        out = []
        while len(out) < plies and state is not None and state[0]:
            a = self.best_mark(state)
            if a is None:
                a = state[0]
            x = self.best_reply(state, a)
            if x is None:
                x = self.replies(a)[0]
            out.append(("Lister", self.names(a)))
            if len(out) < plies:
                out.append(("Painter", self.names(x)))
            state = self._after(state, a, x)
        return out


def paint_solve(
    g: PlaneGraph,
    tokens: Mapping[Vertex, int],
    d: int = 0,
    max_vertices: int = 8,
    max_states: Optional[int] = None,
) -> PaintResult:
    if len(g) > max_vertices:
        raise SearchBudgetExceeded(f"{len(g)} vertices exceed the solver guard of {max_vertices}")
    if d < 0:
        raise ValueError("defect must be non-negative")
    solver = PaintSolver(g, d, max_states)
    start_tokens = tuple(int(tokens.get(v, 0)) for v in g.vertices)
    if any(t < 0 for t in start_tokens):
        raise ValueError("token counts must be non-negative")
    full = (1 << len(g)) - 1
    if any(t == 0 for t in start_tokens):
        return PaintResult("Lister", [], 0, solver)
    state = (full, start_tokens)
    win = solver.painter_wins(state)
    return PaintResult("Painter" if win else "Lister", solver.variation(state), len(solver._memo), solver)
