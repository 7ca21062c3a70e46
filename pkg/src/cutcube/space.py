"""Finite graph model of the space and the finite group acting on it.

Vertices are addressed by their position in ``SpaceGraph.vertices``; every
vertex set handled by the library is a ``frozenset`` of such indices.  Outputs
that are lists of sets are ordered by least index, so everything downstream
is deterministic.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Hashable, Iterable, Sequence

from .errors import CapExceeded, ModelError

DEFAULT_GROUP_CAP = 10**6

Perm = tuple  # tuple[int, ...]; perm[i] is the image of vertex i


@dataclass(frozen=True)
class SpaceGraph:
    vertices: tuple
    edges: frozenset  # frozenset of frozenset({i, j})
    adj: tuple = field(repr=False, compare=False)

    @classmethod
    def build(cls, vertices: Sequence[Hashable], edges: Iterable[tuple]) -> "SpaceGraph":
        """Build from vertex labels and label pairs.  Rejects loops and duplicate edges."""
        vertices = tuple(vertices)
        index = {v: i for i, v in enumerate(vertices)}
        if len(index) != len(vertices):
            raise ModelError("duplicate vertex identifier")
        eset = set()
        for e in edges:
            u, v = e
            if u not in index or v not in index:
                raise ModelError(f"edge {e!r} uses an unknown vertex")
            if u == v:
                raise ModelError(f"loop at {u!r}")
            key = frozenset((index[u], index[v]))
            if key in eset:
                raise ModelError(f"duplicate edge {e!r}")
            eset.add(key)
        nbrs = [set() for _ in vertices]
        for e in eset:
            i, j = tuple(e)
            nbrs[i].add(j)
            nbrs[j].add(i)
        return cls(vertices, frozenset(eset), tuple(frozenset(s) for s in nbrs))

    @classmethod
    def from_indices(cls, n: int, edges: Iterable[tuple]) -> "SpaceGraph":
        return cls.build(range(n), edges)

    def __len__(self):
        return len(self.vertices)

    @property
    def all(self) -> frozenset:
        return frozenset(range(len(self.vertices)))

    def ix(self, *labels) -> frozenset:
        """Vertex labels -> index set."""
        index = {v: i for i, v in enumerate(self.vertices)}
        try:
            return frozenset(index[v] for v in labels)
        except KeyError as exc:
            raise ModelError(f"unknown vertex {exc.args[0]!r}") from None

    def labels(self, s: Iterable[int]) -> list:
        return [self.vertices[i] for i in sorted(s)]

    def is_connected_subset(self, s: frozenset) -> bool:
        """Connectivity of the induced subgraph on ``s``.  The empty set counts as disconnected."""
        if not s:
            return False
        return len(_components_of(self, s)) == 1


def _components_of(graph: SpaceGraph, keep: frozenset) -> list:
    seen = set()
    out = []
    for start in sorted(keep):
        if start in seen:
            continue
        comp = {start}
        seen.add(start)
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for w in graph.adj[u]:
                if w in keep and w not in seen:
                    seen.add(w)
                    comp.add(w)
                    queue.append(w)
        out.append(frozenset(comp))
    return out


def components(graph: SpaceGraph, removed: Iterable[int] = ()) -> list:
    """Connected components of ``graph`` minus ``removed``, ordered by least vertex."""
    removed = frozenset(removed)
    if not removed < graph.all:
        if removed == graph.all:
            raise ModelError("degenerate removal: nothing left")
        raise ModelError("removed set is not a subset of the vertices")
    return _components_of(graph, graph.all - removed)


@dataclass(frozen=True)
class CutSetCheck:
    is_cut: bool
    valence: int
    isolated_members: tuple  # members with no neighbour outside the set


def is_cut_set(graph: SpaceGraph, candidate: Iterable[int]) -> CutSetCheck:
    """Whether removing ``candidate`` disconnects the graph.

    Members with no neighbour outside the candidate (the graph analogue of
    failing to be nowhere dense) are reported in ``isolated_members``; they
    do not change ``is_cut``.
    """
    candidate = frozenset(candidate)
    if not candidate:
        raise ModelError("cut set candidate is empty")
    if not candidate <= graph.all:
        raise ModelError("cut set candidate is not a subset of the vertices")
    if candidate == graph.all:
        raise ModelError("cut set candidate is the whole vertex set")
    valence = len(_components_of(graph, graph.all - candidate))
    isolated = tuple(sorted(v for v in candidate if graph.adj[v] <= candidate))
    return CutSetCheck(valence >= 2, valence, isolated)


def cut_vertices(graph: SpaceGraph) -> frozenset:
    """Articulation vertices, by an iterative low-link depth-first search."""
    n = len(graph)
    if n == 0:
        return frozenset()
    disc = [-1] * n
    low = [0] * n
    out = set()
    t = 0
    for root in range(n):
        if disc[root] != -1:
            continue
        disc[root] = low[root] = t
        t += 1
        root_children = 0
        stack = [(root, -1, iter(sorted(graph.adj[root])))]
        while stack:
            u, parent, it = stack[-1]
            advanced = False
            for w in it:
                if disc[w] == -1:
                    disc[w] = low[w] = t
                    t += 1
                    if u == root:
                        root_children += 1
                    stack.append((w, u, iter(sorted(graph.adj[w]))))
                    advanced = True
                    break
                if w != parent:
                    low[u] = min(low[u], disc[w])
            if advanced:
                continue
            stack.pop()
            if parent != -1:
                low[parent] = min(low[parent], low[u])
                if parent != root and low[u] >= disc[parent]:
                    out.add(parent)
        if root_children >= 2:
            out.add(root)
    return frozenset(out)


def enumerate_cut_sets(graph: SpaceGraph, max_size: int = 4) -> list:
    """All vertex sets of size <= ``max_size`` that are cut sets with no isolated member.

    Plumbing for generating examples; exponential in ``max_size``.
    """
    out = []
    for k in range(1, max_size + 1):
        for cand in combinations(range(len(graph)), k):
            cand = frozenset(cand)
            if cand == graph.all:
                continue
            chk = is_cut_set(graph, cand)
            if chk.is_cut and not chk.isolated_members:
                out.append(cand)
    return out


# ---------------------------------------------------------------------------
# group action


def compose(g: Perm, h: Perm) -> Perm:
    """(g*h)(v) = g(h(v))."""
    return tuple(g[i] for i in h)


def inverse(g: Perm) -> Perm:
    inv = [0] * len(g)
    for i, gi in enumerate(g):
        inv[gi] = i
    return tuple(inv)


def identity(n: int) -> Perm:
    return tuple(range(n))


def is_automorphism(graph: SpaceGraph, g: Perm) -> bool:
    if sorted(g) != list(range(len(graph))):
        return False
    return all(frozenset(g[i] for i in e) in graph.edges for e in graph.edges)


@dataclass(frozen=True)
class GroupAction:
    graph: SpaceGraph
    generators: tuple  # tuple of Perm

    @classmethod
    def from_labels(cls, graph: SpaceGraph, generators: Iterable[dict]) -> "GroupAction":
        """Generators given as label->label mappings; unmapped vertices are fixed."""
        index = {v: i for i, v in enumerate(graph.vertices)}
        gens = []
        for k, mapping in enumerate(generators):
            perm = list(range(len(graph)))
            for src, dst in mapping.items():
                if src not in index or dst not in index:
                    raise ModelError(f"generator {k} mentions an unknown vertex")
                perm[index[src]] = index[dst]
            gens.append(tuple(perm))
        return cls(graph, tuple(gens))

    @classmethod
    def trivial(cls, graph: SpaceGraph) -> "GroupAction":
        return cls(graph, ())

    def check(self):
        for k, g in enumerate(self.generators):
            if len(g) != len(self.graph) or not is_automorphism(self.graph, g):
                raise ModelError(f"generator {k} is not a graph automorphism")


def enumerate_group(action: GroupAction, cap: int = DEFAULT_GROUP_CAP) -> list:
    """All group elements, breadth first from the identity.

    Right-multiplies by generators; for a finite group this already yields
    inverses, so they are not added separately.
    """
    action.check()
    e = identity(len(action.graph))
    seen = {e}
    out = [e]
    queue = deque([e])
    while queue:
        g = queue.popleft()
        for s in action.generators:
            h = compose(g, s)
            if h not in seen:
                seen.add(h)
                out.append(h)
                if len(out) > cap:
                    raise CapExceeded(f"group too large: more than {cap} elements")
                queue.append(h)
    return out


def image_of(g: Perm, subject):
    """Setwise image of a vertex set, or ``subject.apply(g)`` for structured subjects."""
    if isinstance(subject, (frozenset, set)):
        return frozenset(g[i] for i in subject)
    return subject.apply(g)


def orbit_and_stabilizer(elements: Sequence[Perm], subject) -> tuple:
    """Orbit (first-seen order over ``elements``) and stabilizer (as a sublist of ``elements``)."""
    if isinstance(subject, set):
        subject = frozenset(subject)
    orbit = []
    seen = set()
    stab = []
    for g in elements:
        img = image_of(g, subject)
        if img not in seen:
            seen.add(img)
            orbit.append(img)
        if img == subject:
            stab.append(g)
    return orbit, stab
