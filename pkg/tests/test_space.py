import pytest

import oracles
from conftest import cycle, theta_graph
from cutcube.errors import CapExceeded, ModelError
from cutcube.space import (GroupAction, SpaceGraph, components, compose, cut_vertices, enumerate_cut_sets,
                           enumerate_group, identity, inverse, is_automorphism, is_cut_set,
                           orbit_and_stabilizer)
from cutcube.divisions import Division


def rot(n, s):
    return tuple((i + s) % n for i in range(n))


def refl(n):
    return tuple((-i) % n for i in range(n))


def test_components_cycle_antipodal():
    assert components(cycle(8), {0, 4}) == [frozenset({1, 2, 3}), frozenset({5, 6, 7})]


def test_components_nothing_removed():
    g = cycle(8)
    assert components(g) == [g.all]


def test_components_theta_matches_networkx():
    g = theta_graph()
    got = components(g, g.ix("a", "b"))
    assert got == oracles.components(g, g.ix("a", "b"))
    assert len(got) == 3


def test_components_degenerate_removal():
    g = cycle(4)
    with pytest.raises(ModelError, match="degenerate removal"):
        components(g, g.all)


def test_is_cut_set_examples():
    g = theta_graph()
    chk = is_cut_set(g, g.ix("a", "b"))
    assert chk.is_cut and chk.valence == 3
    c8 = cycle(8)
    adj = is_cut_set(c8, {0, 1})
    assert not adj.is_cut and adj.valence == 1
    anti = is_cut_set(c8, {0, 4})
    assert anti.is_cut and anti.valence == 2


def test_is_cut_set_reports_isolated_members():
    # 1 is surrounded by the cut set {0,1,2} on C8
    chk = is_cut_set(cycle(8), {0, 1, 2, 5})
    assert chk.is_cut
    assert tuple(chk.isolated_members) == (1,)


def test_is_cut_set_rejects_unknown_vertex():
    with pytest.raises(ModelError):
        is_cut_set(cycle(5), {0, 9})


def test_cut_vertices_examples():
    assert cut_vertices(cycle(8)) == frozenset()
    p4 = SpaceGraph.from_indices(4, [(0, 1), (1, 2), (2, 3)])
    assert cut_vertices(p4) == frozenset({1, 2})
    assert cut_vertices(theta_graph()) == frozenset()


def test_cut_vertices_by_definition_and_networkx():
    g = SpaceGraph.from_indices(7, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 3), (5, 6)])
    by_def = frozenset(v for v in g.all if len(components(g, {v})) >= 2)
    assert cut_vertices(g) == by_def == oracles.articulation(g)


def test_build_rejects_bad_graphs():
    with pytest.raises(ModelError, match="loop"):
        SpaceGraph.build("ab", [("a", "a")])
    with pytest.raises(ModelError, match="duplicate edge"):
        SpaceGraph.build("ab", [("a", "b"), ("b", "a")])
    with pytest.raises(ModelError, match="unknown"):
        SpaceGraph.build("ab", [("a", "c")])
    with pytest.raises(ModelError, match="duplicate vertex"):
        SpaceGraph.build("aa", [])


def test_permutation_helpers():
    g, h = rot(5, 1), refl(5)
    assert compose(g, inverse(g)) == identity(5)
    assert compose(g, h)[0] == g[h[0]]
    assert is_automorphism(cycle(5), h)
    assert not is_automorphism(cycle(5), (1, 0, 2, 3, 4))


def test_enumerate_group_examples():
    c8 = cycle(8)
    assert enumerate_group(GroupAction.trivial(c8)) == [identity(8)]
    assert len(enumerate_group(GroupAction(c8, (rot(8, 1),)))) == 8
    d8 = enumerate_group(GroupAction(c8, (rot(8, 1), refl(8))))
    assert len(d8) == 16 == len(set(d8))


def test_enumerate_group_cap_and_bad_generator():
    c8 = cycle(8)
    with pytest.raises(CapExceeded, match="group too large"):
        enumerate_group(GroupAction(c8, (rot(8, 1),)), cap=5)
    with pytest.raises(ModelError):
        enumerate_group(GroupAction(c8, ((1, 0, 2, 3, 4, 5, 6, 7),)))


def test_group_from_labels():
    g = theta_graph()
    act = GroupAction.from_labels(g, [{"a": "b", "b": "a", "x1": "y1", "y1": "x1", "x2": "y2", "y2": "x2",
                                       "x3": "y3", "y3": "x3"}])
    assert len(enumerate_group(act)) == 2
    with pytest.raises(ModelError):
        GroupAction.from_labels(g, [{"a": "zz"}])


def test_orbit_stabilizer_examples():
    c8 = cycle(8)
    d8 = enumerate_group(GroupAction(c8, (rot(8, 1), refl(8))))
    orbit, stab = orbit_and_stabilizer(d8, {0, 4})
    # brute force: rotations by 0 and 4, reflections i -> -i and i -> 4 - i
    expected = [g for g in d8 if {g[0], g[4]} == {0, 4}]
    assert len(orbit) == 4 and stab == expected and len(stab) == 4
    triv = [identity(8)]
    assert orbit_and_stabilizer(triv, {1, 2}) == ([frozenset({1, 2})], triv)


def test_orbit_stabilizer_theta_s3():
    g = theta_graph()
    act = GroupAction.from_labels(g, [{"x1": "x2", "x2": "x1", "y1": "y2", "y2": "y1"},
                                      {"x2": "x3", "x3": "x2", "y2": "y3", "y3": "y2"}])
    s3 = enumerate_group(act)
    orbit, stab = orbit_and_stabilizer(s3, g.ix("a", "b"))
    assert len(s3) == 6 and len(orbit) == 1 and len(stab) == 6


def test_orbit_stabilizer_of_division():
    c8 = cycle(8)
    d8 = enumerate_group(GroupAction(c8, (rot(8, 1), refl(8))))
    d = Division({0, 4}, {1, 2, 3}, {5, 6, 7})
    orbit, stab = orbit_and_stabilizer(d8, d)
    assert len(orbit) * len(stab) == 16


def test_enumerate_cut_sets_small():
    cuts = enumerate_cut_sets(cycle(6), max_size=2)
    assert frozenset({0, 3}) in cuts and frozenset({0, 1}) not in cuts
    assert all(is_cut_set(cycle(6), c).is_cut for c in cuts)
