import random

import pytest
import sympy

from atcert.errors import PreconditionViolated, SearchBudgetExceeded
from atcert.generators import catalog, random_apollonian, random_signature
from atcert.plane_graph import PlaneGraph
from atcert.polynomial import (
    CoefficientQuery,
    ExponentVector,
    Signature,
    at_number,
    capped_compositions,
    coeff_dp,
    coeff_select,
    coefficient,
    f_at_check,
    restrict_monomial,
)


def expanded(g: PlaneGraph, sigma=None, removed=()):
    """Symbolic expansion, kept apart from both engines."""
    sigma = sigma or Signature()
    gone = {frozenset(e) for e in removed}
    xs = {v: sympy.Symbol(v) for v in g.vertices}
    poly = sympy.Integer(1)
    for u, v in g.edges():
        if frozenset((u, v)) not in gone:
            poly *= xs[v] - sigma(u, v) * xs[u]
    return sympy.Poly(sympy.expand(poly), *xs.values()) if g.vertices else None


def sym_coeff(g, eta, sigma=None, removed=()):
    p = expanded(g, sigma, removed)
    return int(p.coeff_monomial(tuple(eta.get(v, 0) for v in g.vertices)))


def both(g, eta, removed=(), sigma=None):
    q = CoefficientQuery(g, frozenset(removed), sigma or Signature(), ExponentVector(eta))
    return coeff_dp(q), coeff_select(q)


def test_triangle_coefficients():
    g = catalog("c3")
    assert both(g, {"v2": 1, "v3": 2}) == (1, 1)
    assert sym_coeff(g, {"v2": 1, "v3": 2}) == 1
    assert both(g, {"v3": 2}) == (0, 0)


def test_c4_all_ones():
    g = catalog("c4")
    eta = {v: 1 for v in g.vertices}
    assert both(g, eta) == (-2, -2)
    assert sym_coeff(g, eta) == -2


def test_single_edge_signs():
    g = catalog("k2")
    assert both(g, {"v2": 1}) == (1, 1)
    assert both(g, {"v1": 1}) == (-1, -1)
    assert both(g, {"v1": 1}, sigma=Signature({("v1", "v2"): -1})) == (1, 1)


def test_empty_product():
    assert both(catalog("k2"), {}, removed=[("v1", "v2")]) == (1, 1)


@pytest.mark.parametrize("seed", range(40))
def test_engines_match_symbolic_expansion(seed):
    rng = random.Random(seed)
    g = random_apollonian(rng.randint(3, 6), seed)
    drop = [e for e in g.edges() if rng.random() < 0.3]
    sigma = random_signature(g, seed) if seed % 2 else None
    p = expanded(g, sigma, drop)
    for monom, c in list(p.terms())[:6]:
        eta = dict(zip(g.vertices, monom))
        assert both(g, eta, drop, sigma) == (int(c), int(c))


def test_restrict_triangle():
    g = catalog("c3")
    out = restrict_monomial(g, [], None, ExponentVector({"v2": 1, "v3": 2}), ("v2", "v3"))
    assert out == ExponentVector({"v2": 1, "v3": 1})
    assert coefficient(g, out, [("v2", "v3")]) == 1


def test_restrict_single_edge():
    g = catalog("k2")
    out = restrict_monomial(g, [], None, ExponentVector({"v2": 1}), ("v1", "v2"))
    assert out == ExponentVector()


def test_restrict_needs_nonzero_input():
    with pytest.raises(PreconditionViolated):
        restrict_monomial(catalog("c3"), [], None, ExponentVector({"v3": 3}), ("v1", "v2"))


@pytest.mark.parametrize("seed", range(50))
def test_restrict_random(seed):
    rng = random.Random(seed)
    g = random_apollonian(rng.randint(4, 5), seed)
    sigma = random_signature(g, seed)
    p = expanded(g, sigma)
    monom, _ = rng.choice(p.terms())
    eta = ExponentVector(dict(zip(g.vertices, monom)))
    f = rng.choice(g.edges())
    out = restrict_monomial(g, [], sigma, eta, f)
    assert coeff_select(CoefficientQuery(g, frozenset([frozenset(f)]), sigma, out)) != 0


def test_at_numbers():
    assert at_number(catalog("k2")) == (2, ExponentVector({"v2": 1}))
    assert at_number(catalog("c4"))[0] == 2
    assert at_number(catalog("c5"))[0] == 3
    assert at_number(catalog("k4"))[0] == 4


def test_at_guard():
    with pytest.raises(SearchBudgetExceeded):
        at_number(catalog("icosahedron"), max_edges=20)


def test_f_at():
    g = catalog("k2")
    assert f_at_check(g, None, {"v1": 1, "v2": 2}) == ExponentVector({"v2": 1})
    c4 = catalog("c4")
    assert f_at_check(c4, None, {v: 2 for v in c4.vertices}) == ExponentVector({v: 1 for v in c4.vertices})
    c3 = catalog("c3")
    assert f_at_check(c3, None, {v: 2 for v in c3.vertices}) is None


def test_f_at_needs_every_vertex():
    with pytest.raises(PreconditionViolated):
        f_at_check(catalog("c3"), None, {"v1": 3})


def test_capped_compositions_lexicographic():
    got = list(capped_compositions(2, [1, 2, 1]))
    assert got == sorted(got)
    assert got == [(0, 1, 1), (0, 2, 0), (1, 0, 1), (1, 1, 0)]
    assert list(capped_compositions(5, [1, 1])) == []


def test_exponent_vector_basics():
    a = ExponentVector({"v1": 1, "v2": 0})
    assert a == ExponentVector({"v1": 1})
    assert a["missing"] == 0
    assert (a + {"v2": 2}).total() == 3
    assert a <= ExponentVector({"v1": 2})
    with pytest.raises(ValueError):
        a.dec("v2")
    assert ExponentVector.from_spec("v10=1,v2=3").to_spec() == "v2=3,v10=1"
    assert ExponentVector().to_spec() == "-"


def test_signature_domain():
    g = catalog("c3")
    with pytest.raises(PreconditionViolated):
        Signature({("v1", "v9"): -1}).check_domain(g)
    with pytest.raises(ValueError):
        Signature({("v1", "v2"): 2})
