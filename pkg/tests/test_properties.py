"""Property tests over random instances and random graphs."""
import random
from itertools import combinations, permutations

import networkx as nx
from hypothesis import HealthCheck, assume, given, settings
from hypothesis import strategies as st

import oracles
from cutcube import pipeline
from cutcube.cutpoint import cyclic_elements_by_blocks, cyclic_elements_by_separation
from cutcube.divisions import close_under_action, mutually_non_separating
from cutcube.models import random_instance, random_nonseparating_instance
from cutcube.space import SpaceGraph, components, cut_vertices, orbit_and_stabilizer

SETTINGS = settings(max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
seeds = st.integers(0, 2**32 - 1)


def built(seed):
    return pipeline.build(random_instance(random.Random(seed)), oracle=False)


@st.composite
def connected_graphs(draw, lo=2, hi=11):
    n = draw(st.integers(lo, hi))
    parents = [draw(st.integers(0, i - 1)) for i in range(1, n)]
    extra = draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=n))
    edges = {frozenset((i, p)) for i, p in zip(range(1, n), parents)}
    edges |= {frozenset(e) for e in extra if e[0] != e[1]}
    return SpaceGraph.from_indices(n, [tuple(sorted(e)) for e in edges])


@SETTINGS
@given(seeds)
def test_orbit_stabilizer(seed):
    b = built(seed)
    G = b.elements
    for d in b.ws.walls:
        orbit, stab = orbit_and_stabilizer(G, d)
        assert len(orbit) * len(stab) == len(G)
    for c in b.validation.family.cut_sets:
        orbit, stab = orbit_and_stabilizer(G, c)
        assert len(orbit) * len(stab) == len(G)


@SETTINGS
@given(seeds)
def test_closure_idempotent_and_invariant(seed):
    b = built(seed)
    fam = b.validation.family
    again = close_under_action(fam, b.elements)
    assert set(again.divisions) == set(fam.divisions)
    for g in b.elements:
        assert {d.apply(g) for d in fam.divisions} == set(fam.divisions)


@SETTINGS
@given(seeds, st.data())
def test_side_of_triple_symmetric_and_equivariant(seed, data):
    b = built(seed)
    ws = b.ws
    t = data.draw(st.lists(st.sampled_from(ws.off_wall), min_size=3, max_size=3, unique=True))
    g = data.draw(st.sampled_from(b.elements))
    perm, flip = ws.wall_action(g)
    gt = [g[v] for v in t]
    for i in range(ws.k):
        sides = {ws.side_of_triple(i, p) for p in permutations(t)}
        assert len(sides) == 1
        s = ws.side_of_triple(i, t)
        assert ws.side_of_triple(perm[i], gt) == (-s if flip[i] else s)


@SETTINGS
@given(seeds, st.data())
def test_finiteness_is_a_metric_with_zero_on_equal_sides(seed, data):
    b = built(seed)
    ws = b.ws
    draw = lambda: data.draw(st.lists(st.sampled_from(ws.off_wall), min_size=3, max_size=3, unique=True))
    t1, t2, t3 = draw(), draw(), draw()
    d12 = ws.finiteness_count(t1, t2)
    same = all(ws.side_of_triple(i, t1) == ws.side_of_triple(i, t2) for i in range(ws.k))
    assert (d12 == 0) == same
    assert d12 == ws.finiteness_count(t2, t1)
    assert d12 <= ws.finiteness_count(t1, t3) + ws.finiteness_count(t3, t2)
    assert d12 == sum(ws.side_of_triple(i, t1) != ws.side_of_triple(i, t2) for i in range(ws.k))


@settings(max_examples=25, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(seeds)
def test_complex_matches_explicit_triple_oracle(seed):
    inst = random_instance(random.Random(seed), max_vertices=12, max_walls=6)
    b = pipeline.build(inst, oracle=False)
    ws, cx = b.ws, b.cx
    codes, sub = oracles.principal_component(ws)
    assert cx.vertices == codes
    assert len(cx.edges) == sub.number_of_edges()
    assert cx.dimension == oracles.max_clique(ws)
    for i, j in combinations(range(ws.k), 2):
        assert ws.transverse(i, j) == oracles.transverse(ws, i, j)


@SETTINGS
@given(connected_graphs(), st.sets(st.integers(0, 10), max_size=3))
def test_components_partition(graph, removed):
    removed = {v for v in removed if v < len(graph)}
    assume(len(removed) < len(graph))
    comps = components(graph, removed)
    flat = [v for c in comps for v in c]
    assert sorted(flat) == sorted(set(range(len(graph))) - removed)
    assert sorted(comps, key=min) == oracles.components(graph, removed)


@SETTINGS
@given(connected_graphs())
def test_cut_vertices_match_articulation_points(graph):
    assert cut_vertices(graph) == oracles.articulation(graph)


@SETTINGS
@given(connected_graphs())
def test_cyclic_element_routes_agree(graph):
    assert cyclic_elements_by_separation(graph) == cyclic_elements_by_blocks(graph)


@SETTINGS
@given(connected_graphs(lo=4), st.data())
def test_mutual_non_separation_symmetric(graph, data):
    vs = range(len(graph))
    c1 = data.draw(st.sets(st.sampled_from(vs), min_size=1, max_size=3))
    c2 = data.draw(st.sets(st.sampled_from(vs), min_size=1, max_size=3))
    assert mutually_non_separating(graph, c1, c2).ok == mutually_non_separating(graph, c2, c1).ok


@settings(max_examples=30, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(seeds)
def test_nonseparating_families_give_trees(seed):
    inst = random_nonseparating_instance(random.Random(seed))
    r = pipeline.tree(inst, oracle=False)
    T = nx.Graph()
    T.add_nodes_from(range(len(r.typed.types)))
    T.add_edges_from(r.typed.tree.edges)
    assert nx.is_tree(T)
    assert r.laws["holds"]
    assert r.certificate["ok"] or not r.certificate["asserted"]
