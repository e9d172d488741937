"""Certificates and their canonical line-oriented serialization."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

from atcert._text import check_id
from atcert.errors import FormatError
from atcert.plane_graph import Edge, Matching
from atcert.polynomial import ExponentVector

HEADER = "atcert-certificate 1"
RULES = ("Base", "Chord", "N3", "Subcase2i", "Subcase2ii", "Augment", "Restrict", "Components")
MODES = ("plain", "signed", "oriented")


@dataclass(frozen=True)
class TraceStep:
    rule: str
    depth: int
    params: dict = field(default_factory=dict)

    def to_json(self) -> str:
        return json.dumps({"rule": self.rule, "depth": self.depth, **self.params}, sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str) -> "TraceStep":
        try:
            data: dict[str, Any] = json.loads(text)
            rule = data.pop("rule")
            depth = data.pop("depth")
        except (ValueError, KeyError, AttributeError) as exc:
            raise FormatError(f"bad trace record {text!r}") from exc
        if rule not in RULES:
            raise FormatError(f"unknown trace rule {rule!r}")
        return cls(rule, depth, data)


@dataclass(frozen=True)
class Certificate:
    """Output of the extractor.

    ``eta`` is non-vanishing in ``G - e - M`` (``G - e`` in oriented mode) and
    ``coefficient`` is its coefficient there; ``eta_final`` is ``eta`` with the
    first endpoint of ``e`` raised to 1, non-vanishing in ``G - M`` (``G``).
    """

    graph_digest: str
    mode: str
    edge: Edge
    matching: Matching
    eta: ExponentVector
    eta_final: ExponentVector
    coefficient: int
    negative_edges: tuple[Edge, ...] = ()
    trace: tuple[TraceStep, ...] = ()

    @property
    def oriented(self) -> bool:
        return self.mode == "oriented"

    @property
    def heads(self) -> frozenset:
        return self.matching.heads

    def removed_edges(self) -> list[Edge]:
        """Edges deleted from G for the polynomial that ``eta`` lives in."""
        out = [tuple(self.edge)]
        if not self.oriented:
            out += [tuple(p) for p in self.matching.pairs]
        return out


def serialize_certificate(cert: Certificate) -> str:
    lines = [
        HEADER,
        f"graph {cert.graph_digest}",
        f"mode {cert.mode}",
        f"edge {cert.edge[0]} {cert.edge[1]}",
    ]
    lines += [f"negative {u} {v}" for u, v in cert.negative_edges]
    lines += [f"pair {u} {v}" for u, v in cert.matching.pairs]
    lines += [
        f"eta {cert.eta.to_spec()}",
        f"eta_final {cert.eta_final.to_spec()}",
        f"coefficient {cert.coefficient}",
    ]
    lines += [f"step {s.to_json()}" for s in cert.trace]
    lines.append("end")
    return "\n".join(lines) + "\n"


def parse_certificate(text: str) -> Certificate:
    lines = text.splitlines()
    if not lines or lines[0] != HEADER:
        raise FormatError(f"certificate must start with {HEADER!r}")
    pos = 1

    def take(key: str, required: bool = True):
        nonlocal pos
        if pos < len(lines) and lines[pos].startswith(key + " "):
            pos += 1
            return lines[pos - 1][len(key) + 1 :]
        if required:
            got = lines[pos] if pos < len(lines) else "end of input"
            raise FormatError(f"expected '{key} ...', got {got!r}")
        return None

    def pair(value: str) -> Edge:
        parts = value.split(" ")
        if len(parts) != 2:
            raise FormatError(f"expected two vertex ids, got {value!r}")
        return (check_id(parts[0]), check_id(parts[1]))

    digest = take("graph")
    mode = take("mode")
    if mode not in MODES:
        raise FormatError(f"unknown mode {mode!r}")
    edge = pair(take("edge"))
    negative = []
    while (v := take("negative", False)) is not None:
        negative.append(pair(v))
    pairs = []
    while (v := take("pair", False)) is not None:
        pairs.append(pair(v))
    eta = ExponentVector.from_spec(take("eta"))
    eta_final = ExponentVector.from_spec(take("eta_final"))
    raw = take("coefficient")
    try:
        coefficient = int(raw)
    except ValueError:
        raise FormatError(f"bad coefficient {raw!r}") from None
    trace = []
    while (v := take("step", False)) is not None:
        trace.append(TraceStep.from_json(v))
    if pos >= len(lines) or lines[pos] != "end" or pos != len(lines) - 1:
        raise FormatError("certificate must finish with a single 'end' line")
    return Certificate(
        digest,
        mode,
        edge,
        Matching(tuple(pairs), oriented=mode == "oriented"),
        eta,
        eta_final,
        coefficient,
        tuple(negative),
        tuple(trace),
    )
