"""Tree detection, the subdivided tree and its three vertex types."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .cubes import ActionReport, CubeComplex
from .errors import TheoremViolation
from .space import SpaceGraph, components, image_of, orbit_and_stabilizer
from .wallspace import WallSpace

PRINCIPAL, SEMI, MID = "principal", "semi-principal", "midpoint"


def skeleton_is_tree(cx: CubeComplex) -> bool:
    n = len(cx.vertices)
    if len(cx.edges) != n - 1:
        return False
    nb = cx.neighbours()
    seen = {0}
    stack = [0]
    while stack:
        u = stack.pop()
        for w in nb[u]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == n


def is_tree(cx: CubeComplex) -> bool:
    """No two walls transverse, cross-checked against acyclicity of the 1-skeleton."""
    mat = cx.ws.transversality_matrix()
    by_walls = not any(any(row) for row in mat)
    by_skeleton = skeleton_is_tree(cx)
    if by_walls != by_skeleton:
        raise TheoremViolation("transversality and 1-skeleton disagree on tree-ness",
                               {"no_transverse_pair": by_walls, "skeleton_tree": by_skeleton})
    return by_walls


def check_tree_hypotheses(graph: SpaceGraph, family) -> dict:
    """Connectedness conditions under which the complex must be a tree.

    Empty vertex sets count as disconnected, so two divisions sharing a cut
    set always fail the pairwise condition.
    """
    divs = family.divisions
    cut_ok = [graph.is_connected_subset(d.cut) for d in divs]
    pairs = []
    for i in range(len(divs)):
        for j in range(i + 1, len(divs)):
            c1, c2 = divs[i].cut, divs[j].cut
            inter = c1 & c2
            diff_ok = graph.is_connected_subset(c1 - inter) and graph.is_connected_subset(c2 - inter)
            comp_ok = inter != graph.all and len(components(graph, inter)) == 1
            pairs.append({"pair": [i, j], "differences_connected": diff_ok, "complement_connected": comp_ok})
    return {
        "cut_connected": cut_ok,
        "pairs": pairs,
        "all_hold": all(cut_ok) and all(p["differences_connected"] and p["complement_connected"] for p in pairs),
    }


def equivalence_classes(ws: WallSpace) -> list:
    """Off-the-wall points grouped by the side they take on every division."""
    groups: dict = {}
    for p, v in enumerate(ws.off_wall):
        groups.setdefault(ws.point_masks[p], []).append(v)
    return sorted((frozenset(g) for g in groups.values()), key=min)


@dataclass
class SubdividedTree:
    cx: CubeComplex
    nodes: list  # ("x", complex vertex) or ("mid", cut set)
    edges: list  # (a, b) node indices, a < b
    cut_valence: dict  # cut set -> valence
    stab_checks: dict = field(default_factory=dict)  # cut set -> Stab(e) == Stab(C)

    def neighbours(self) -> list:
        nb = [[] for _ in self.nodes]
        for a, b in self.edges:
            nb[a].append(b)
            nb[b].append(a)
        return nb


def subdivide(cx: CubeComplex, elements: Sequence = None, action: ActionReport = None) -> SubdividedTree:
    """Insert a midpoint on the edge dual to each valence-2 cut set.

    With ``elements`` and ``action``, also checks that the subdivided edge's
    setwise stabilizer equals the cut set's stabilizer.
    """
    if not is_tree(cx):
        raise TheoremViolation("cannot subdivide: the complex is not a tree")
    ws = cx.ws
    graph = ws.graph
    valence = {}
    for d in ws.walls:
        valence.setdefault(d.cut, len(components(graph, d.cut)))
    nodes = [("x", v) for v in range(len(cx.vertices))]
    mid_of_wall = {}
    for i, d in enumerate(ws.walls):
        if valence[d.cut] == 2:
            mid_of_wall[i] = len(nodes)
            nodes.append(("mid", d.cut))
    edges = []
    sub_edge = {}
    for u, v, w in cx.edges:
        if w in mid_of_wall:
            if w in sub_edge:
                raise TheoremViolation("a valence-2 wall is dual to more than one edge")
            m = mid_of_wall[w]
            sub_edge[w] = (u, v)
            edges += [(u, m), (v, m)]
        else:
            edges.append((u, v))
    edges = sorted((min(a, b), max(a, b)) for a, b in edges)
    checks = {}
    if elements is not None and action is not None:
        for w, (u, v) in sub_edge.items():
            cut = ws.walls[w].cut
            e_stab = [gi for gi, vp in enumerate(action.vertex_perms) if {vp[u], vp[v]} == {u, v}]
            pos = {g: n for n, g in enumerate(elements)}
            c_stab = sorted(pos[g] for g in orbit_and_stabilizer(elements, cut)[1])
            checks[cut] = e_stab == c_stab
        if not all(checks.values()):
            raise TheoremViolation("a subdivided edge's stabilizer differs from its cut set's stabilizer")
    return SubdividedTree(cx, nodes, edges, valence, checks)


@dataclass
class TypedTree:
    tree: SubdividedTree
    types: list  # per node: PRINCIPAL / SEMI / MID / None
    tags: list  # per node: class index, cut set, or None
    classes: list
    thin: list  # indices of classes with fewer than two points
    violations: list

    @property
    def assertable(self) -> bool:
        return not self.thin


def class_orientation(ws: WallSpace, cls) -> int:
    """Orientation principal for a class with >= 2 points; checked against every third point."""
    pts = sorted(cls)
    a, b = pts[0], pts[1]
    codes = {ws.principal_code((a, b, c)) for c in ws.off_wall if c not in (a, b)}
    if len(codes) != 1:
        raise TheoremViolation("principal vertex of a class depends on the third point")
    return codes.pop()


def semi_principal_orientation(ws: WallSpace, cut) -> int:
    """Big side for the cut set's own divisions, the side containing it for the others."""
    graph = ws.graph
    comps = components(graph, cut)
    code = 0
    for i, d in enumerate(ws.walls):
        if d.cut == cut:
            plus_big = d.plus not in comps
            if plus_big:
                code |= 1 << i
        elif cut <= d.plus:
            code |= 1 << i
        elif not cut <= d.minus:
            raise TheoremViolation(f"cut set {graph.labels(cut)} meets both sides of wall {i}")
    return code


def classify_vertices(st: SubdividedTree) -> TypedTree:
    """Assign each node exactly one type.

    Hard errors are raised only when every class has at least two points;
    otherwise violations are recorded and the instance is flagged.
    """
    cx = st.cx
    ws = cx.ws
    classes = equivalence_classes(ws)
    thin = [n for n, c in enumerate(classes) if len(c) < 2]
    violations = []
    claims: dict = {}
    for n, c in enumerate(classes):
        if n in thin:
            continue
        code = class_orientation(ws, c)
        claims.setdefault(code, []).append((PRINCIPAL, n))
    for cut, val in st.cut_valence.items():
        if val >= 3:
            code = semi_principal_orientation(ws, cut)
            if code not in cx.index:
                violations.append(("semi-principal orientation is not a vertex", ws.graph.labels(cut)))
            claims.setdefault(code, []).append((SEMI, cut))
    types, tags = [], []
    for kind, ref in st.nodes:
        if kind == "mid":
            types.append(MID)
            tags.append(ref)
            continue
        got = claims.get(cx.vertices[ref], [])
        if len(got) == 1:
            types.append(got[0][0])
            tags.append(got[0][1])
        else:
            types.append(None)
            tags.append(None)
            what = "no type" if not got else "several types"
            violations.append((f"vertex has {what}", cx.label(ref)))
    tt = TypedTree(st, types, tags, classes, thin, violations)
    if violations and tt.assertable:
        raise TheoremViolation("classification violation", {"violations": violations})
    return tt


def adjacency_laws(tt: TypedTree) -> dict:
    """Same types never adjacent; semi-principal never next to a midpoint; valence matches."""
    st = tt.tree
    same, semi_mid, bad_valence = [], [], []
    for a, b in st.edges:
        ta, tb = tt.types[a], tt.types[b]
        if ta is not None and ta == tb:
            same.append((a, b))
        if {ta, tb} == {SEMI, MID}:
            semi_mid.append((a, b))
    nb = st.neighbours()
    for n, t in enumerate(tt.types):
        if t in (SEMI, MID):
            want = st.cut_valence[tt.tags[n]]
            if len(nb[n]) != want:
                bad_valence.append((n, len(nb[n]), want))
    rep = {
        "same_type_adjacent": same,
        "semi_mid_adjacent": semi_mid,
        "valence_mismatch": bad_valence,
        "holds": not (same or semi_mid or bad_valence),
    }
    if not rep["holds"] and tt.assertable:
        clause = "(i)" if same else "(ii)" if semi_mid else "(iii)"
        raise TheoremViolation(f"adjacency law {clause} fails", rep)
    return rep


def tree_action(tt: TypedTree, elements: Sequence, action: ActionReport) -> list:
    """Node permutations of the subdivided tree; checks edges and types are preserved."""
    st = tt.tree
    mid_pos = {ref: n for n, (kind, ref) in enumerate(st.nodes) if kind == "mid"}
    class_pos = {c: n for n, c in enumerate(tt.classes)}
    edge_set = set(st.edges)
    perms = []
    for gi, g in enumerate(elements):
        vp = action.vertex_perms[gi]
        perm = []
        for kind, ref in st.nodes:
            perm.append(vp[ref] if kind == "x" else mid_pos[image_of(g, ref)])
        for a, b in st.edges:
            if (min(perm[a], perm[b]), max(perm[a], perm[b])) not in edge_set:
                raise TheoremViolation(f"element {gi} does not preserve the subdivided tree")
        for n, t in enumerate(tt.types):
            m = perm[n]
            if tt.types[m] != t:
                raise TheoremViolation(f"element {gi} does not preserve vertex types")
            if t == PRINCIPAL:
                if class_pos[image_of(g, tt.classes[tt.tags[n]])] != tt.tags[m]:
                    raise TheoremViolation(f"element {gi} does not commute with classification")
            elif t in (SEMI, MID) and image_of(g, tt.tags[n]) != tt.tags[m]:
                raise TheoremViolation(f"element {gi} does not commute with classification")
        perms.append(tuple(perm))
    return perms


_TYPE_STYLE = {PRINCIPAL: "fillcolor=lightblue", SEMI: "fillcolor=salmon", MID: "fillcolor=khaki", None: "fillcolor=white"}


def node_label(tt: TypedTree, n: int) -> str:
    graph = tt.tree.cx.ws.graph
    t, tag = tt.types[n], tt.tags[n]
    if t == PRINCIPAL:
        return "P{" + ",".join(map(str, graph.labels(tt.classes[tag]))) + "}"
    if t == SEMI:
        return "S{" + ",".join(map(str, graph.labels(tag))) + "}"
    if t == MID:
        return "mid{" + ",".join(map(str, graph.labels(tag))) + "}"
    kind, ref = tt.tree.nodes[n]
    return tt.tree.cx.label(ref)


def typed_tree_dot(tt: TypedTree) -> str:
    lines = ["graph T {", "  node [style=filled];"]
    for n, t in enumerate(tt.types):
        lines.append(f'  t{n} [label="{node_label(tt, n)}", {_TYPE_STYLE[t]}];')
    for a, b in tt.tree.edges:
        lines.append(f"  t{a} -- t{b};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def typed_tree_json(tt: TypedTree) -> dict:
    graph = tt.tree.cx.ws.graph
    return {
        "nodes": [{"id": n, "type": t, "label": node_label(tt, n)} for n, t in enumerate(tt.types)],
        "edges": [list(e) for e in tt.tree.edges],
        "classes": [graph.labels(c) for c in tt.classes],
        "thin_classes": tt.thin,
        "violations": [list(v) for v in tt.violations],
    }
