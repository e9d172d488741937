import random

import pytest

from atcert.certificate import parse_certificate, serialize_certificate
from atcert.errors import FormatError, NotBoundaryEdge
from atcert.extractor import Extractor, extract, extract_oriented
from atcert.generators import CATALOG_NAMES, catalog, random_apollonian, random_signature
from atcert.oracles import is_nice, is_special, verify_certificate
from atcert.plane_graph import Fan, Matching, boundary_edges, delete_boundary_vertex, split_at_chord
from atcert.polynomial import CoefficientQuery, ExponentVector, coeff_select

from test_plane_graph import chorded_instances


def test_single_edge():
    c = extract(catalog("k2"))
    assert c.matching.pairs == ()
    assert c.eta == ExponentVector()
    assert c.eta_final == ExponentVector({"v1": 1})
    assert c.coefficient == 1


def test_path_base_case():
    c = extract(catalog("path3"), ("v1", "v2"))
    assert c.eta == ExponentVector({"v3": 1})
    assert c.matching.pairs == ()


def test_triangle():
    c = extract(catalog("c3"), ("v1", "v2"))
    assert c.eta == ExponentVector({"v3": 2})
    assert c.coefficient == 1
    assert c.eta_final == ExponentVector({"v1": 1, "v3": 2})


@pytest.mark.parametrize("threshold", [2, 6])
def test_k4(threshold):
    c = extract(catalog("k4"), ("v1", "v2"), base_threshold=threshold)
    assert c.matching.pairs == ()
    assert c.eta == ExponentVector({"v3": 2, "v4": 3})
    assert c.eta_final == ExponentVector({"v1": 1, "v3": 2, "v4": 3})


def test_k4_goes_through_fan_step_then_triangle():
    c = extract(catalog("k4"), ("v1", "v2"), base_threshold=2)
    rules = [s.rule for s in c.trace]
    assert rules[-1] == "N3"
    assert "Base" in rules


@pytest.mark.parametrize("threshold", [2, 6])
def test_c4(threshold):
    c = extract(catalog("c4"), ("v1", "v2"), base_threshold=threshold)
    assert c.eta == ExponentVector({"v3": 1, "v4": 2})
    assert c.eta_final == ExponentVector({"v1": 1, "v3": 1, "v4": 2})
    assert c.coefficient == 1


def test_c4_takes_second_subcase_with_empty_fan():
    c = extract(catalog("c4"), ("v1", "v2"), base_threshold=3)
    last = c.trace[-1]
    assert last.rule == "Subcase2ii"
    assert last.params["fan"] == ["v1", "v3"]
    assert last.params["tested"] == []


def test_c4_chord_split(c4_chord):
    c = extract(c4_chord, ("v1", "v2"), base_threshold=2)
    assert c.trace[-1].rule == "Chord"
    assert c.trace[-1].params["chord"] == ["v1", "v3"]
    assert verify_certificate(c4_chord, None, c).ok


def test_chord_product_and_disjointness():
    for g, e, f in chorded_instances(50):
        ex = Extractor(base_threshold=3)
        g1, g2 = split_at_chord(g, f, e)
        r1 = Extractor(base_threshold=3).solve(g1, e)
        r2 = Extractor(base_threshold=3).solve(g2, g.edge_key(*f))
        covered1 = {v for p in r1.matching.pairs for v in p}
        covered2 = {v for p in r2.matching.pairs for v in p}
        assert not covered1 & covered2
        r = ex.case_chord(g, e, f, 0)
        assert r.coefficient == r1.coefficient * r2.coefficient
        removed = frozenset({frozenset(e)} | r.matching.edge_set())
        assert coeff_select(CoefficientQuery(g, removed, ex.sigma, r.eta)) == r.coefficient


def test_special_candidates_trivial():
    fan = Fan("v5", "v1", (), "v4")
    assert Extractor.special_candidates(ExponentVector({"v4": 2}), fan) == []
    fan = Fan("v5", "v1", ("a", "b"), "v4")
    assert Extractor.special_candidates(ExponentVector({"a": 1}), fan) == []


def test_special_candidates_on_wheel():
    g = catalog("w5")
    e = ("v1", "v2")
    reduced, fan = delete_boundary_vertex(g, e)
    ex = Extractor(base_threshold=2)
    r = ex.solve(reduced, e)
    cands = ex.special_candidates(r.eta, fan)
    assert [u for u, _ in cands] == list(fan.inner)
    for _, tau in cands:
        assert is_special(reduced, e, r.matching, tau, fan)


def test_wheel_verifies():
    g = catalog("w5")
    for th in (2, 6):
        assert verify_certificate(g, None, extract(g, base_threshold=th)).ok


def test_subcase_one_reached_and_verified():
    hits = 0
    for seed in range(1, 200):
        rng = random.Random(seed)
        g = random_apollonian(rng.randint(6, 12), seed)
        g = g.delete_edges([e for e in g.edges() if rng.random() < 0.3])
        edges = boundary_edges(g)
        if not edges:
            continue
        c = extract(g, edges[0], base_threshold=2)
        if any(s.rule == "Subcase2i" for s in c.trace):
            hits += 1
            assert verify_certificate(g, None, c).ok
    assert hits >= 5


def test_saturated_vertex_joins_matching():
    c = extract(catalog("w6"), ("v1", "v2"), base_threshold=2)
    step = next(s for s in c.trace if s.rule == "Subcase2i" and s.params["saturated"])
    sat = step.params["saturated"]
    assert c.matching.contains_edge(sat, step.params["vn"])


def test_oriented_saturated_vertex_becomes_head():
    g = catalog("w6")
    c = extract_oriented(g, ("v1", "v2"), base_threshold=2)
    assert c.mode == "oriented"
    assert c.matching.pairs == (("h", "v6"),)
    assert c.eta_final["h"] == 4
    assert verify_certificate(g, None, c).ok


def test_oriented_k4_has_no_heads():
    plain = extract(catalog("k4"))
    ori = extract_oriented(catalog("k4"))
    assert ori.matching.heads == frozenset()
    assert ori.eta == plain.eta


def test_disconnected_input():
    g = catalog("c4").delete_edges([("v2", "v3"), ("v4", "v1")], main_edge=("v1", "v2"))
    c = extract(g, ("v1", "v2"))
    assert verify_certificate(g, None, c).ok
    assert c.eta_final == ExponentVector({"v1": 1, "v3": 1})


def test_augmented_bowtie(bowtie):
    c = extract(bowtie, ("v1", "v2"), base_threshold=2)
    rules = [s.rule for s in c.trace]
    assert "Augment" in rules and "Restrict" in rules
    assert verify_certificate(bowtie, None, c).ok


def test_not_boundary_edge():
    with pytest.raises(NotBoundaryEdge):
        extract(catalog("k4"), ("v1", "v4"))


def test_nice_by_checker():
    for name in CATALOG_NAMES:
        g = catalog(name)
        c = extract(g)
        assert is_nice(g, c.edge, c.matching, c.eta)


@pytest.mark.parametrize("name", CATALOG_NAMES)
def test_serialization_round_trip(name):
    g = catalog(name)
    for c in (extract(g), extract_oriented(g, sigma=random_signature(g, 5))):
        text = serialize_certificate(c)
        back = parse_certificate(text)
        assert back == c
        assert serialize_certificate(back) == text


def test_parse_rejects_garbage():
    good = serialize_certificate(extract(catalog("c3")))
    with pytest.raises(FormatError):
        parse_certificate("hello\n")
    with pytest.raises(FormatError):
        parse_certificate(good.replace("end\n", ""))
    with pytest.raises(FormatError):
        parse_certificate(good.replace("mode plain", "mode weird"))
    with pytest.raises(FormatError):
        parse_certificate(good.replace("coefficient 1", "coefficient x"))


def test_signed_all_plus_matches_plain():
    for name in CATALOG_NAMES:
        g = catalog(name)
        a = serialize_certificate(extract(g))
        b = serialize_certificate(extract(g, sigma=random_signature(g, 1, all_plus=True)))
        assert a == b


def test_deterministic():
    g = random_apollonian(12, 4)
    sigma = random_signature(g, 4)
    assert serialize_certificate(extract(g, sigma=sigma)) == serialize_certificate(extract(g, sigma=sigma))


def test_matching_stays_valid_in_oriented_mode():
    for seed in range(1, 60):
        g = random_apollonian(5 + seed % 10, seed)
        c = extract_oriented(g)
        assert 2 * len(c.matching) <= len(g)
        assert 2 * len(c.matching.heads) < len(g)
        assert verify_certificate(g, None, c).ok


def test_unknown_pairs_fail_validation():
    g = catalog("k4")
    c = extract(g)
    bad = type(c)(**{**c.__dict__, "matching": Matching((("v1", "v4"),))})
    report = verify_certificate(g, None, bad)
    assert "matching-valid" in report.failures()
