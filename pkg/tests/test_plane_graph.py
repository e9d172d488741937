import pytest

from atcert.errors import (
    AsymmetricRotation,
    Disconnected,
    EdgeOnChordSide,
    EulerViolation,
    HasChord,
    LoopEdge,
    NotAChord,
    NotSimpleBoundary,
    ParallelEdge,
    UnknownVertex,
)
from atcert.generators import catalog, from_coordinates, random_apollonian
from atcert.plane_graph import (
    Fan,
    Matching,
    augment_to_simple_boundary,
    boundary_walk,
    build_plane_graph,
    delete_boundary_vertex,
    find_chords,
    is_boundary_edge,
    matchings,
    split_at_chord,
    validate_matching,
)

from conftest import cycle_edges, polygon

TRIANGLE_ROT = {"v1": ["v2", "v3"], "v2": ["v3", "v1"], "v3": ["v1", "v2"]}


def test_triangle_builds():
    g = build_plane_graph(["v1", "v2", "v3"], TRIANGLE_ROT, ("v1", "v2"))
    assert len(g) == 3
    assert g.num_edges == 3
    assert len(g.faces()) == 2


def test_asymmetric_rotation_rejected():
    rot = {"v1": ["v2"], "v2": ["v1", "v3"], "v3": []}
    with pytest.raises(AsymmetricRotation):
        build_plane_graph(["v1", "v2", "v3"], rot, ("v1", "v2"))


def test_loop_and_parallel_rejected():
    with pytest.raises(LoopEdge):
        build_plane_graph(["a"], {"a": ["a"]}, ("a", "a"))
    with pytest.raises(ParallelEdge):
        build_plane_graph(["a", "b"], {"a": ["b", "b"], "b": ["a", "a"]}, ("a", "b"))


def test_unknown_vertex_rejected():
    with pytest.raises(UnknownVertex):
        build_plane_graph(["a"], {"a": ["b"]}, ("a", "b"))


def test_k4_euler_and_bad_rotation():
    g = catalog("k4")
    assert len(g) - g.num_edges + len(g.faces()) == 2
    toroidal = {v: [w for w in ("v1", "v2", "v3", "v4") if w != v] for v in ("v1", "v2", "v3", "v4")}
    with pytest.raises(EulerViolation):
        build_plane_graph(["v1", "v2", "v3", "v4"], toroidal, ("v1", "v2"))


@pytest.mark.parametrize("name", ["c3", "k4", "octahedron", "icosahedron", "w6"])
def test_darts_traced_once(name):
    g = catalog(name)
    darts = [d for face in g.faces() for d in face]
    assert len(darts) == len(set(darts)) == 2 * g.num_edges
    assert sum(g.degree(v) for v in g.vertices) == 2 * g.num_edges


def test_boundary_walks():
    assert boundary_walk(catalog("c3")) == (("v1", "v2", "v3"), True)
    walk = boundary_walk(catalog("path3"), ("v1", "v2"))
    assert walk.vertices == ("v1", "v2", "v3", "v2")
    assert not walk.is_simple_cycle
    assert boundary_walk(catalog("k4"), ("v1", "v2")) == (("v1", "v2", "v3"), True)


def test_boundary_walk_starts_at_edge_either_direction():
    g = catalog("c5")
    assert boundary_walk(g, ("v3", "v4")).vertices[:2] == ("v3", "v4")
    assert boundary_walk(g, ("v4", "v3")).vertices[:2] == ("v4", "v3")


def test_boundary_walk_needs_connected():
    g = catalog("c4").delete_edges([("v1", "v2"), ("v3", "v4")], main_edge=("v2", "v3"))
    with pytest.raises(Disconnected):
        boundary_walk(g)


def test_chords(c4_chord):
    assert find_chords(catalog("c4"), boundary_walk(catalog("c4"))) == []
    assert find_chords(c4_chord, boundary_walk(c4_chord)) == [("v1", "v3")]
    g = from_coordinates(polygon(5), cycle_edges(5) + [("v1", "v3"), ("v1", "v4")])
    assert find_chords(g, boundary_walk(g)) == [("v1", "v3"), ("v1", "v4")]
    with pytest.raises(NotSimpleBoundary):
        find_chords(catalog("path3"), boundary_walk(catalog("path3")))


def test_split_c4(c4_chord):
    g1, g2 = split_at_chord(c4_chord, ("v1", "v3"), ("v1", "v2"))
    assert g1.vertices == ("v1", "v2", "v3")
    assert g2.vertices == ("v1", "v3", "v4")
    assert is_boundary_edge(g1, ("v1", "v2"))
    assert is_boundary_edge(g2, ("v1", "v3"))


def test_split_c5_far_edge():
    g = from_coordinates(polygon(5), cycle_edges(5) + [("v1", "v3")])
    g1, g2 = split_at_chord(g, ("v1", "v3"), ("v4", "v5"))
    assert set(g1.vertices) == {"v1", "v3", "v4", "v5"}
    assert set(g2.vertices) == {"v1", "v2", "v3"}


def test_split_errors(c4_chord):
    with pytest.raises(EdgeOnChordSide):
        split_at_chord(c4_chord, ("v1", "v3"), ("v1", "v3"))
    with pytest.raises(NotAChord):
        split_at_chord(c4_chord, ("v1", "v2"), ("v3", "v4"))


def chorded_instances(count):
    """Triangulations with one outer corner removed, which leaves chords on the boundary."""
    seed = 0
    while count:
        seed += 1
        g = random_apollonian(5 + seed % 8, seed)
        walk = boundary_walk(g)
        e = (walk[0], walk[1])
        g = g.delete_vertex(walk[2], main_edge=e)
        g, _ = augment_to_simple_boundary(g, e)
        chords = find_chords(g, boundary_walk(g, e))
        if chords:
            count -= 1
            yield g, e, chords[0]


def test_split_partitions_edges():
    for g, e, (x, y) in chorded_instances(50):
        g1, g2 = split_at_chord(g, (x, y), e)
        assert len(g1) + len(g2) == len(g) + 2
        assert set(g1.vertices) & set(g2.vertices) == {x, y}
        e1, e2 = {frozenset(f) for f in g1.edges()}, {frozenset(f) for f in g2.edges()}
        assert e1 | e2 == {frozenset(f) for f in g.edges()}
        assert e1 & e2 == {frozenset((x, y))}


def test_delete_boundary_vertex_fans():
    assert delete_boundary_vertex(catalog("k4"), ("v1", "v2"))[1] == Fan("v3", "v1", ("v4",), "v2")
    assert delete_boundary_vertex(catalog("c4"), ("v1", "v2"))[1] == Fan("v4", "v1", (), "v3")
    g = catalog("w5")
    reduced, fan = delete_boundary_vertex(g, ("v1", "v2"))
    assert fan == Fan("v5", "v1", ("h",), "v4")
    assert g.degree("v5") == 2 + len(fan.inner)
    assert "v5" not in reduced
    assert not set(fan.inner) & set(boundary_walk(g).vertices)


def test_delete_boundary_vertex_rejects_chord(c4_chord):
    with pytest.raises(HasChord):
        delete_boundary_vertex(c4_chord, ("v1", "v2"))


def test_augment():
    assert augment_to_simple_boundary(catalog("c3"), ("v1", "v2"))[1] == []
    h, added = augment_to_simple_boundary(catalog("path3"), ("v1", "v2"))
    assert added == [("v1", "v3")]
    assert boundary_walk(h, ("v1", "v2")) == (("v1", "v2", "v3"), True)


def test_augment_bowtie(bowtie):
    e = ("v1", "v2")
    h, added = augment_to_simple_boundary(bowtie, e)
    assert len(added) == 1
    walk = boundary_walk(h, e)
    assert walk.is_simple_cycle
    assert set(walk.vertices) == set(boundary_walk(bowtie, e).vertices)
    assert augment_to_simple_boundary(h, e)[1] == []


def test_operations_leave_input_alone(bowtie):
    before = (bowtie.vertices, dict(bowtie.rotation), bowtie.outer_anchor)
    augment_to_simple_boundary(bowtie, ("v1", "v2"))
    bowtie.delete_vertex("v4")
    assert (bowtie.vertices, dict(bowtie.rotation), bowtie.outer_anchor) == before


def test_validate_matching():
    g = catalog("k4")
    assert validate_matching(g, ("v1", "v2"), Matching())
    assert validate_matching(g, ("v1", "v2"), Matching((("v3", "v4"),)))
    check = validate_matching(g, ("v1", "v2"), Matching((("v1", "v4"),)))
    assert not check and "v1" in check.reason


def test_validate_matching_rejects_overlap_and_non_edges():
    g = catalog("c5")
    assert not validate_matching(g, ("v1", "v2"), Matching((("v3", "v4"), ("v4", "v5"))))
    assert not validate_matching(g, ("v1", "v2"), Matching((("v3", "v5"),)))


def test_matchings_order():
    found = list(matchings(catalog("c4"), forbidden=("v1",)))
    assert found[0] == ()
    assert found[1:] == [(("v2", "v3"),), (("v3", "v4"),)]
