"""Pinching cut sets to points and the cut point tree of the quotient."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import networkx as nx

from .errors import ModelError, OracleMismatch, TheoremViolation
from .space import SpaceGraph, _components_of, cut_vertices
from .trees import MID, PRINCIPAL, SEMI, TypedTree, node_label


@dataclass
class PinchedSpace:
    source: SpaceGraph
    graph: SpaceGraph
    q: tuple  # source vertex -> quotient vertex
    cuts: list
    pinch_of: dict  # cut set -> quotient vertex
    perms: list = field(default_factory=list)  # induced quotient permutations, one per element


def pinch(graph: SpaceGraph, cuts: Sequence, elements: Sequence = ()) -> PinchedSpace:
    """Collapse each cut set to one vertex, dropping loops and parallel edges.

    A pinch vertex takes the position of its least member and the label
    ``pinch(a,b,...)``.
    """
    cuts = [frozenset(c) for c in cuts]
    owner = {}
    for c in cuts:
        for v in c:
            if v in owner and owner[v] != c:
                raise ModelError("cannot pinch overlapping cut sets")
            owner[v] = c
    labels, q, pinch_of = [], [None] * len(graph), {}
    for v in range(len(graph)):
        c = owner.get(v)
        if c is None:
            q[v] = len(labels)
            labels.append(graph.vertices[v])
        elif v == min(c):
            pinch_of[c] = len(labels)
            labels.append("pinch(" + ",".join(map(str, graph.labels(c))) + ")")
    for v in range(len(graph)):
        if q[v] is None:
            q[v] = pinch_of[owner[v]]
    if len(set(labels)) != len(labels):
        raise ModelError("pinch label collides with an existing vertex label")
    qedges = {frozenset((q[u], q[v])) for u, v in map(tuple, graph.edges) if q[u] != q[v]}
    qgraph = SpaceGraph.build(labels, [tuple(labels[i] for i in e) for e in qedges])
    perms = []
    for g in elements:
        qp = [None] * len(labels)
        for v in range(len(graph)):
            img = q[g[v]]
            if qp[q[v]] is None:
                qp[q[v]] = img
            elif qp[q[v]] != img:
                raise ModelError("group element does not map pinched cut sets to pinched cut sets")
        perms.append(tuple(qp))
    return PinchedSpace(graph, qgraph, tuple(q), cuts, pinch_of, perms)


def cyclic_elements_by_separation(graph: SpaceGraph) -> list:
    """For each non-cut vertex p: p and every vertex no cut vertex separates from p."""
    cps = sorted(cut_vertices(graph))
    comp_id = {}
    for c in cps:
        ids = {}
        for n, comp in enumerate(_components_of(graph, graph.all - {c})):
            for v in comp:
                ids[v] = n
        comp_id[c] = ids
    out = []
    for p in range(len(graph)):
        if p in comp_id:
            continue
        elem = {p}
        for x in range(len(graph)):
            if x == p:
                continue
            if all(comp_id[c][p] == comp_id[c][x] for c in cps if c != x):
                elem.add(x)
        elem = frozenset(elem)
        if elem not in out:
            out.append(elem)
    return sorted(out, key=sorted)


def cyclic_elements_by_blocks(graph: SpaceGraph) -> list:
    """Biconnected blocks containing at least one non-cut vertex (networkx)."""
    G = nx.Graph()
    G.add_nodes_from(range(len(graph)))
    G.add_edges_from(tuple(e) for e in graph.edges)
    cps = set(nx.articulation_points(G))
    blocks = [frozenset(b) for b in nx.biconnected_components(G)]
    blocks += [frozenset((v,)) for v in G.nodes if G.degree(v) == 0]
    return sorted((b for b in blocks if b - cps), key=sorted)


def cyclic_elements(pinched) -> list:
    """Nontrivial cyclic elements of the quotient; both routes must agree."""
    graph = pinched.graph if isinstance(pinched, PinchedSpace) else pinched
    a = cyclic_elements_by_separation(graph)
    b = cyclic_elements_by_blocks(graph)
    if a != b:
        raise OracleMismatch("cyclic elements: separation test and block decomposition disagree")
    return a


@dataclass
class CutPointTree:
    pinched: PinchedSpace
    cut_points: list  # quotient vertices
    cyclic: list  # frozensets of quotient vertices
    edges: list  # (cut point position, cyclic position) with positions into the two lists

    @property
    def size(self) -> int:
        return len(self.cut_points) + len(self.cyclic)

    def node(self, kind: str, pos: int) -> int:
        """Global node id: cut points first, then cyclic elements."""
        return pos if kind == "cut" else len(self.cut_points) + pos

    def global_edges(self) -> list:
        return sorted((a, self.node("cyc", b)) for a, b in self.edges)

    def label(self, n: int) -> str:
        g = self.pinched.graph
        if n < len(self.cut_points):
            return str(g.vertices[self.cut_points[n]])
        k = self.cyclic[n - len(self.cut_points)]
        return "K{" + ",".join(map(str, g.labels(k))) + "}"

    def perms(self) -> list:
        """Node permutations induced by the quotient action."""
        cpos = {v: n for n, v in enumerate(self.cut_points)}
        kpos = {k: n for n, k in enumerate(self.cyclic)}
        out = []
        for qp in self.pinched.perms:
            perm = [cpos[qp[v]] for v in self.cut_points]
            for k in self.cyclic:
                img = frozenset(qp[v] for v in k)
                if img not in kpos:
                    raise TheoremViolation("quotient action does not permute cyclic elements")
                perm.append(self.node("cyc", kpos[img]))
            out.append(tuple(perm))
        return out


def build_cutpoint_tree(pinched: PinchedSpace) -> CutPointTree:
    """Bipartite incidence graph of cut points and cyclic elements; must be a tree."""
    cps = sorted(cut_vertices(pinched.graph))
    cyc = cyclic_elements(pinched)
    edges = [(i, j) for i, v in enumerate(cps) for j, k in enumerate(cyc) if v in k]
    t = CutPointTree(pinched, cps, cyc, edges)
    n = t.size
    adj = [[] for _ in range(n)]
    for a, b in t.global_edges():
        adj[a].append(b)
        adj[b].append(a)
    seen = {0} if n else set()
    stack = list(seen)
    while stack:
        u = stack.pop()
        for w in adj[u]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    if len(edges) != n - 1 or len(seen) != n:
        raise TheoremViolation("cut point incidence graph is not a tree",
                               {"nodes": n, "edges": len(edges), "reached": len(seen)})
    return t


def cutpoint_tree_dot(t: CutPointTree) -> str:
    lines = ["graph CPT {"]
    for n in range(t.size):
        shape = "square" if n < len(t.cut_points) else "ellipse"
        lines.append(f'  c{n} [label="{t.label(n)}", shape={shape}];')
    for a, b in t.global_edges():
        lines.append(f"  c{a} -- c{b};")
    lines.append("}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- comparison


def compare_trees(tt: TypedTree, cpt: CutPointTree, tree_perms: Sequence = (), cpt_perms: Sequence = ()) -> dict:
    """Build the vertex map from the subdivided tree to the cut point tree and verify it.

    Principal vertices go to the cyclic element containing the image of their
    class; semi-principal and midpoint vertices go to the pinch point of their
    cut set.  The returned certificate has ``ok`` and, on failure,
    ``first_violation``.
    """
    P = cpt.pinched
    q = P.q
    ws = tt.tree.cx.ws
    cert = {"vertex_map": [], "edge_check": {}, "equivariance_check": {}, "lemmas": {}, "ok": False}
    fail = []

    cpos = {v: n for n, v in enumerate(cpt.cut_points)}
    kpos = {k: n for n, k in enumerate(cpt.cyclic)}
    qcuts = set(cpt.cut_points)

    # off-the-wall points <-> non-cut points of the quotient
    off_img = sorted(q[v] for v in ws.off_wall)
    noncut = sorted(set(range(len(P.graph))) - qcuts)
    cert["lemmas"]["off_wall_bijects_to_noncut"] = off_img == noncut
    cert["lemmas"]["pinch_points_are_cut_points"] = all(P.pinch_of[c] in qcuts for c in P.cuts)
    fat = [c for n, c in enumerate(tt.classes) if n not in tt.thin]
    cert["lemmas"]["classes_match_cyclic_elements"] = len(fat) == len(cpt.cyclic)
    for name, ok in cert["lemmas"].items():
        if not ok:
            fail.append(("lemma", name))

    phi = []
    for n, t in enumerate(tt.types):
        target = None
        if t == PRINCIPAL:
            img = frozenset(q[v] for v in tt.classes[tt.tags[n]])
            hits = [k for k in cpt.cyclic if img <= k]
            if len(hits) == 1 and hits[0] - qcuts == img:
                target = cpt.node("cyc", kpos[hits[0]])
            else:
                fail.append(("class image not the non-cut part of one cyclic element", node_label(tt, n)))
        elif t in (SEMI, MID):
            pv = P.pinch_of.get(tt.tags[n])
            if pv in cpos:
                target = cpt.node("cut", cpos[pv])
            else:
                fail.append(("pinch point is not a cut point", node_label(tt, n)))
        else:
            fail.append(("untyped vertex", node_label(tt, n)))
        phi.append(target)
        cert["vertex_map"].append([node_label(tt, n), cpt.label(target) if target is not None else None])

    n1 = sum(1 for t in tt.types if t == PRINCIPAL)
    n23 = sum(1 for t in tt.types if t in (SEMI, MID))
    cert["type_counts"] = {"principal": n1, "cyclic_elements": len(cpt.cyclic),
                           "semi_or_mid": n23, "cut_points": len(cpt.cut_points)}
    if n1 != len(cpt.cyclic) or n23 != len(cpt.cut_points):
        fail.append(("type count mismatch", cert["type_counts"]))

    bijective = None not in phi and sorted(phi) == list(range(cpt.size))
    cert["bijective"] = bijective
    if not bijective:
        fail.append(("vertex map is not a bijection", None))
    else:
        img_edges = sorted(tuple(sorted((phi[a], phi[b]))) for a, b in tt.tree.edges)
        target_edges = cpt.global_edges()
        cert["edge_check"] = {"tree_edges": len(tt.tree.edges), "cut_point_tree_edges": len(target_edges),
                              "preserved_both_ways": img_edges == target_edges}
        if img_edges != target_edges:
            missing = sorted(set(target_edges) - set(img_edges))
            extra = sorted(set(img_edges) - set(target_edges))
            fail.append(("edge mismatch", {"missing": missing[:1], "extra": extra[:1]}))
        checked = 0
        for gi, (tp, cp) in enumerate(zip(tree_perms, cpt_perms)):
            for n in range(len(phi)):
                checked += 1
                if phi[tp[n]] != cp[phi[n]]:
                    fail.append(("not equivariant", {"element": gi, "vertex": node_label(tt, n)}))
                    break
        cert["equivariance_check"] = {"elements": len(tree_perms), "checks": checked,
                                      "ok": not any(f[0] == "not equivariant" for f in fail)}
    cert["ok"] = not fail
    if fail:
        cert["first_violation"] = list(fail[0])
    return cert
