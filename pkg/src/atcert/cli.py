"""Command-line front end: ``atcert <command> [options]``.

Exit status is 0 on success, 1 when a verification or agreement check fails
and 2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from atcert.certificate import parse_certificate, serialize_certificate
from atcert.errors import AtcertError, InternalProofViolation
from atcert.extractor import extract
from atcert.generators import catalog, parse_generator_spec, random_signature
from atcert.graph_io import export_dot, format_graph, format_lists, parse_graph, parse_lists
from atcert.oracles import list_color, verify_certificate
from atcert.painting import paint_solve
from atcert.plane_graph import PlaneGraph
from atcert.polynomial import ENGINES, PLUS, CoefficientQuery, ExponentVector, Signature, f_at_check

OK, FAILED, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass
class Loaded:
    graph: PlaneGraph
    sigma: Signature


def _load(args) -> Loaded:
    sources = [s for s in (args.graph, args.catalog, args.gen) if s is not None]
    if len(sources) != 1:
        raise UsageError("give exactly one of --graph FILE, --catalog NAME, --gen apollonian:N:SEED")
    sigma = PLUS
    if args.graph is not None:
        g, sigma = parse_graph(Path(args.graph).read_text())
    elif args.catalog is not None:
        g = catalog(args.catalog)
    else:
        g = parse_generator_spec(args.gen)
    if args.signed and sigma.is_all_plus():
        sigma = random_signature(g, args.seed)
    return Loaded(g, sigma)


def _edge(text: Optional[str]):
    if text is None:
        return None
    parts = text.split(",")
    if len(parts) != 2 or not all(parts):
        raise UsageError(f"--edge expects u,v, got {text!r}")
    return (parts[0].strip(), parts[1].strip())


def _emit(text: str, out: Optional[str]) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _guard(g: PlaneGraph, args) -> None:
    if args.max_vertices is not None and len(g) > args.max_vertices:
        raise UsageError(f"{len(g)} vertices exceed --max-vertices {args.max_vertices}")
    if args.max_edges is not None and g.num_edges > args.max_edges:
        raise UsageError(f"{g.num_edges} edges exceed --max-edges {args.max_edges}")


def cmd_extract(args) -> int:
    src = _load(args)
    _guard(src.graph, args)
    cert = extract(src.graph, _edge(args.edge), src.sigma, args.oriented, args.base_threshold)
    _emit(serialize_certificate(cert), args.out)
    if not args.verify:
        return OK
    report = verify_certificate(src.graph, src.sigma, cert)
    (sys.stdout if args.out else sys.stderr).write(report.format())
    return OK if report.ok else FAILED


def cmd_verify(args) -> int:
    src = _load(args)
    if args.cert is None:
        raise UsageError("verify needs --cert FILE")
    cert = parse_certificate(Path(args.cert).read_text())
    report = verify_certificate(src.graph, src.sigma, cert)
    _emit(report.format(), args.out)
    return OK if report.ok else FAILED


def cmd_at(args) -> int:
    src = _load(args)
    g = src.graph
    if args.max_edges is None:
        args.max_edges = 20
    _guard(g, args)
    top = max((g.degree(v) for v in g.vertices), default=0) + 1
    if args.max_k is not None:
        top = min(top, args.max_k)
    for k in range(1, top + 1):
        eta = f_at_check(g, src.sigma, {v: k for v in g.vertices}, max_edges=args.max_edges)
        if eta is not None:
            _emit(f"{k}\nwitness {eta.to_spec()}\n", args.out)
            return OK
    _emit(f"greater than {top}\n", args.out)
    return OK


def cmd_coeff(args) -> int:
    src = _load(args)
    _guard(src.graph, args)
    if args.eta is None:
        raise UsageError("coeff needs --eta SPEC, e.g. v1=1,v3=2")
    q = CoefficientQuery(src.graph, frozenset(), src.sigma, ExponentVector.from_spec(args.eta))
    engines = list(ENGINES) if args.engine == "both" else [args.engine]
    values = {name: ENGINES[name](q) for name in engines}
    if len(set(values.values())) > 1:
        _emit("".join(f"{k} {v}\n" for k, v in values.items()), args.out)
        return FAILED
    _emit(f"{next(iter(values.values()))}\n", args.out)
    return OK


def _tokens(spec: str, g: PlaneGraph) -> dict:
    if spec.strip().isdigit():
        return {v: int(spec) for v in g.vertices}
    return dict(ExponentVector.from_spec(spec))


def cmd_paint(args) -> int:
    src = _load(args)
    g = src.graph
    if args.minus_matching:
        cert = extract(g, _edge(args.edge), src.sigma)
        g = g.delete_edges(cert.matching.pairs)
    if args.tokens is None:
        raise UsageError("paint needs --tokens K or --tokens v1=K1,v2=K2,...")
    limit = args.max_vertices if args.max_vertices is not None else 8
    result = paint_solve(g, _tokens(args.tokens, g), args.defect, max_vertices=limit)
    _emit(result.format(), args.out)
    return OK


def cmd_color(args) -> int:
    src = _load(args)
    if args.lists is None:
        raise UsageError("color needs --lists FILE")
    lists = parse_lists(Path(args.lists).read_text())
    found = list_color(src.graph, src.sigma, lists, args.defect)
    if found is None:
        _emit("none\n", args.out)
    else:
        _emit(format_lists({v: frozenset([c]) for v, c in found.items()}), args.out)
    return OK


def cmd_gen(args) -> int:
    src = _load(args)
    sigma = None if src.sigma.is_all_plus() else src.sigma
    _emit(format_graph(src.graph, sigma), args.out)
    return OK


def cmd_dot(args) -> int:
    src = _load(args)
    cert = parse_certificate(Path(args.cert).read_text()) if args.cert else None
    _emit(export_dot(src.graph, cert), args.out)
    return OK


COMMANDS = {
    "extract": (cmd_extract, "build and print a certificate"),
    "verify": (cmd_verify, "check a certificate against its graph"),
    "at": (cmd_at, "Alon-Tarsi number by exhaustive search"),
    "coeff": (cmd_coeff, "coefficient of one monomial"),
    "paint": (cmd_paint, "solve the defective painting game"),
    "color": (cmd_color, "defective list colouring from a lists file"),
    "gen": (cmd_gen, "write a graph in the text format"),
    "dot": (cmd_dot, "export DOT, optionally annotated with a certificate"),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    src = common.add_argument_group("graph source")
    src.add_argument("--graph", metavar="FILE", help="graph text file")
    src.add_argument("--catalog", metavar="NAME", help="named catalog graph")
    src.add_argument("--gen", metavar="SPEC", help="generator spec apollonian:N:SEED")
    common.add_argument("--signed", action="store_true", help="random signature from --seed unless the file has signs")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--edge", metavar="U,V", help="boundary edge (default: smallest boundary edge)")
    common.add_argument("--out", metavar="PATH", help="write the main output here instead of stdout")
    common.add_argument("--max-vertices", type=int, default=None)
    common.add_argument("--max-edges", type=int, default=None)

    parser = argparse.ArgumentParser(prog="atcert", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    p = {name: sub.add_parser(name, parents=[common], help=h) for name, (_, h) in COMMANDS.items()}
    p["extract"].add_argument("--oriented", action="store_true")
    p["extract"].add_argument("--verify", action="store_true")
    p["extract"].add_argument("--base-threshold", type=int, default=6)
    p["verify"].add_argument("--cert", metavar="FILE")
    p["at"].add_argument("--max-k", type=int, default=None)
    p["coeff"].add_argument("--eta", metavar="SPEC")
    p["coeff"].add_argument("--engine", choices=["dp", "select", "both"], default="both")
    p["paint"].add_argument("--tokens", metavar="SPEC")
    p["paint"].add_argument("--defect", type=int, default=0)
    p["paint"].add_argument("--minus-matching", action="store_true", help="delete an extracted matching first")
    p["color"].add_argument("--lists", metavar="FILE")
    p["color"].add_argument("--defect", type=int, default=0)
    p["dot"].add_argument("--cert", metavar="FILE")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handler = COMMANDS[args.command][0]
    try:
        return handler(args)
    except UsageError as exc:
        parser.error(str(exc))
    except InternalProofViolation as exc:
        print(f"error: {exc}", file=sys.stderr)
        return FAILED
    except (AtcertError, OSError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
