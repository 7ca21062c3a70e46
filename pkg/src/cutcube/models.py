"""Random small instances for self-tests and property checks.

All generators take a ``random.Random`` so runs are reproducible from a seed.
"""
from __future__ import annotations

import random
from itertools import combinations

from .divisions import canonical_divisions, close_under_action, mutually_non_separating, validate_division
from .errors import ModelError
from .io import Instance
from .space import GroupAction, SpaceGraph, enumerate_group, is_cut_set
from .trees import check_tree_hypotheses
from .wallspace import WallSpace


def cycle_with_chords(rng: random.Random, n: int, chords: int) -> SpaceGraph:
    edges = {frozenset((i, (i + 1) % n)) for i in range(n)}
    for _ in range(chords):
        a, b = rng.sample(range(n), 2)
        edges.add(frozenset((a, b)))
    return SpaceGraph.from_indices(n, [tuple(sorted(e)) for e in edges])


def multi_arc(arcs: list) -> SpaceGraph:
    """Two hubs 0 and 1 joined by internally disjoint paths with the given interior lengths."""
    edges, n = [], 2
    for length in arcs:
        prev = 0
        for _ in range(length):
            edges.append((prev, n))
            prev = n
            n += 1
        edges.append((prev, 1))
    return SpaceGraph.from_indices(n, edges)


def grid(rows: int, cols: int) -> SpaceGraph:
    """Rows by cols grid; vertex r * cols + c."""
    edges = [(r * cols + c, r * cols + c + 1) for r in range(rows) for c in range(cols - 1)]
    edges += [(r * cols + c, (r + 1) * cols + c) for r in range(rows - 1) for c in range(cols)]
    return SpaceGraph.from_indices(rows * cols, edges)


def rotation(n: int, step: int) -> tuple:
    return tuple((i + step) % n for i in range(n))


def _good_cut(graph: SpaceGraph, cut) -> bool:
    chk = is_cut_set(graph, cut)
    return chk.is_cut and not chk.isolated_members


def _valid_family(graph, cuts, elements, max_walls):
    try:
        base = canonical_divisions(graph, cuts)
    except ModelError:
        return None
    if not all(validate_division(graph, d).valid for d in base):
        return None
    fam = close_under_action(base, elements)
    if len(fam) > max_walls or not fam.divisions:
        return None
    ws = WallSpace.build(graph, fam, strict=False)
    return None if ws.diagnostics else fam


def _random_graph(rng: random.Random, max_vertices: int):
    """A 2-connected graph and generators of a group acting on it."""
    kind = rng.random()
    if kind < 0.35:
        n = rng.choice([d for d in (6, 8, 9, 10, 12, 14, 15, 16) if d <= max_vertices])
        order = rng.choice([o for o in (1, 2, 3, 4) if n % o == 0])
        return cycle_with_chords(rng, n, 0), ([rotation(n, n // order)] if order > 1 else [])
    if kind < 0.7:
        n = rng.randint(6, max_vertices)
        return cycle_with_chords(rng, n, rng.randint(0, 3)), []
    arcs = [rng.randint(1, 4) for _ in range(rng.randint(3, 5))]
    while 2 + sum(arcs) > max_vertices:
        arcs.pop()
    return multi_arc(arcs), []


def random_instance(rng: random.Random, max_vertices: int = 16, max_walls: int = 12, tries: int = 200) -> Instance:
    """A 2-connected graph with several cut sets and, sometimes, a rotation group.

    Cut sets are added one at a time as long as the closed canonical family
    stays a valid wallspace with at most ``max_walls`` walls.
    """
    for _ in range(tries):
        graph, gens = _random_graph(rng, max_vertices)
        elements = enumerate_group(GroupAction(graph, tuple(gens)))
        pool = [frozenset(c) for size in (2, 3) for c in combinations(range(len(graph)), size)]
        rng.shuffle(pool)
        target = rng.randint(1, 6)
        cuts = []
        for cut in pool:
            if len(cuts) == target:
                break
            if _good_cut(graph, cut) and _valid_family(graph, cuts + [cut], elements, max_walls) is not None:
                cuts.append(cut)
        if cuts:
            return Instance(graph, GroupAction(graph, tuple(gens)), cuts, "random")
    raise RuntimeError("no valid random instance found")


def random_nonseparating_instance(rng: random.Random, max_vertices: int = 18, max_walls: int = 12,
                                  tries: int = 400) -> Instance:
    """Pairwise disjoint, mutually non-separating cut sets on a random 2-connected graph."""
    for _ in range(tries):
        if rng.random() < 0.5:
            graph = cycle_with_chords(rng, rng.randint(8, max_vertices), rng.randint(0, 2))
        else:
            arcs = [rng.randint(2, 5) for _ in range(rng.randint(2, 4))]
            if 2 + sum(arcs) > max_vertices:
                continue
            graph = multi_arc(arcs)
        pool = [frozenset(c) for size in (2, 3) for c in combinations(range(len(graph)), size)]
        rng.shuffle(pool)
        cuts = []
        target = rng.randint(1, 3)
        for cut in pool:
            if len(cuts) == target:
                break
            if not _good_cut(graph, cut):
                continue
            if all(mutually_non_separating(graph, cut, c).ok for c in cuts):
                trial = cuts + [cut]
                if _valid_family(graph, trial, [tuple(range(len(graph)))], max_walls) is not None:
                    cuts = trial
        if cuts:
            return Instance(graph, GroupAction.trivial(graph), cuts, "random-nonseparating")
    raise RuntimeError("no valid random instance found")


def random_connected_cut_instance(rng: random.Random, max_vertices: int = 16, max_walls: int = 12,
                                  tries: int = 400) -> Instance:
    """Connected cut sets chosen so that the pairwise connectedness conditions for a tree all hold."""
    for _ in range(tries):
        kind = rng.random()
        if kind < 0.4:
            rows = rng.choice([2, 3])
            graph = grid(rows, rng.randint(4, max_vertices // rows))
        elif kind < 0.7:
            arcs = [rng.randint(1, 4) for _ in range(rng.randint(2, 4))]
            while 2 + sum(arcs) > max_vertices:
                arcs.pop()
            base = multi_arc(arcs)
            graph = SpaceGraph.from_indices(len(base), [tuple(sorted(e)) for e in base.edges] + [(0, 1)])
        else:
            graph = cycle_with_chords(rng, rng.randint(6, max_vertices), rng.randint(1, 4))
        pool = [frozenset(c) for size in (2, 3) for c in combinations(range(len(graph)), size)
                if graph.is_connected_subset(frozenset(c))]
        rng.shuffle(pool)
        cuts, target = [], rng.randint(2, 4)
        trivial = [tuple(range(len(graph)))]
        for cut in pool:
            if len(cuts) == target:
                break
            if not _good_cut(graph, cut):
                continue
            fam = _valid_family(graph, cuts + [cut], trivial, max_walls)
            if fam is not None and check_tree_hypotheses(graph, fam)["all_hold"]:
                cuts.append(cut)
        if cuts:
            return Instance(graph, GroupAction.trivial(graph), cuts, "random-connected-cuts")
    raise RuntimeError("no valid random instance found")
