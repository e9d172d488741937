import random
from itertools import product

import pytest

from atcert.errors import SearchBudgetExceeded
from atcert.generators import catalog
from atcert.oracles import list_color
from atcert.painting import PaintSolver, paint_solve
from atcert.polynomial import f_at_check


def uniform(g, k):
    return {v: k for v in g.vertices}


def test_k2_two_tokens():
    g = catalog("k2")
    assert paint_solve(g, uniform(g, 2), 0).winner == "Painter"


def test_triangle_two_tokens():
    g = catalog("c3")
    assert paint_solve(g, uniform(g, 2), 0).winner == "Lister"


def test_triangle_one_token_defect_one():
    g = catalog("c3")
    r = paint_solve(g, uniform(g, 1), 1)
    assert r.winner == "Lister"
    assert r.variation[0] == ("Lister", ("v1", "v2", "v3"))
    assert len(r.variation[1][1]) == 2


def test_zero_tokens_lose_at_once():
    g = catalog("k2")
    assert paint_solve(g, {"v1": 0, "v2": 3}, 0).winner == "Lister"


def test_guard():
    with pytest.raises(SearchBudgetExceeded):
        paint_solve(catalog("icosahedron"), uniform(catalog("icosahedron"), 4), 0)


def test_replies_are_maximal_and_sparse():
    g = catalog("k4")
    s = PaintSolver(g, d=1)
    full = 0b1111
    for x in s.replies(full):
        assert s._sparse(x)
        for i in range(4):
            if not x >> i & 1:
                assert not s._sparse(x | 1 << i)


def test_variation_is_bounded():
    g = catalog("c5")
    r = paint_solve(g, uniform(g, 3), 0)
    assert len(r.variation) <= 10
    assert r.variation[0][0] == "Lister"


@pytest.mark.parametrize("name", ["k2", "path3", "c3", "c4", "c5"])
def test_monotone_in_tokens(name):
    g = catalog(name)
    for base in product(range(1, 3), repeat=len(g)):
        t = dict(zip(g.vertices, base))
        if paint_solve(g, t, 0).winner != "Painter":
            continue
        for v in g.vertices:
            more = dict(t, **{v: t[v] + 1})
            assert paint_solve(g, more, 0).winner == "Painter"


@pytest.mark.parametrize("name", ["c3", "c4", "c5", "k4", "w5"])
def test_paintable_graphs_are_list_colourable(name):
    g = catalog(name)
    k = next(k for k in range(1, 6) if paint_solve(g, uniform(g, k), 0).winner == "Painter")
    rng = random.Random(k)
    for _ in range(20):
        lists = {v: frozenset(rng.sample(range(2 * k), k)) for v in g.vertices}
        assert list_color(g, None, lists, 0) is not None


@pytest.mark.parametrize("name", ["k2", "path3", "c3", "c4", "c5", "k4", "w5", "w6", "octahedron"])
def test_alon_tarsi_bound_implies_paintable(name):
    g = catalog(name)
    for k in range(1, 5):
        if f_at_check(g, None, uniform(g, k)) is not None:
            assert paint_solve(g, uniform(g, k), 0).winner == "Painter"
