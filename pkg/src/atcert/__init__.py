"""Matchings and capped polynomial certificates for plane graphs."""

from atcert.certificate import Certificate, TraceStep, parse_certificate, serialize_certificate
from atcert.extractor import Extractor, extract, extract_oriented
from atcert.generators import catalog, random_apollonian, random_signature
from atcert.graph_io import export_dot, format_graph, parse_graph
from atcert.oracles import cn_assign, is_nice, list_color, verify_certificate
from atcert.painting import paint_solve
from atcert.plane_graph import Matching, PlaneGraph, build_plane_graph
from atcert.polynomial import ExponentVector, Signature, at_number, coeff_dp, coeff_select, coefficient

__all__ = [
    "Certificate", "TraceStep", "parse_certificate", "serialize_certificate",
    "Extractor", "extract", "extract_oriented",
    "catalog", "random_apollonian", "random_signature",
    "export_dot", "format_graph", "parse_graph",
    "cn_assign", "is_nice", "list_color", "verify_certificate",
    "paint_solve",
    "Matching", "PlaneGraph", "build_plane_graph",
    "ExponentVector", "Signature", "at_number", "coeff_dp", "coeff_select", "coefficient",
]
