"""End-to-end runs: validate a model, build the dual complex, build and compare the trees."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .cubes import (DEFAULT_ORACLE_WALLS, DEFAULT_VERTEX_CAP, build_complex, check_principal_equivariance,
                    compare_with_oracle, hyperplanes, induced_action)
from .cutpoint import build_cutpoint_tree, compare_trees, pinch
from .divisions import (DivisionFamily, canonical_divisions, canonically_oriented, close_under_action,
                        fullness_index, mutually_non_separating, validate_division)
from .errors import ModelError, TheoremViolation
from .space import DEFAULT_GROUP_CAP, components, cut_vertices, enumerate_group, is_cut_set
from .trees import (MID, PRINCIPAL, SEMI, adjacency_laws, check_tree_hypotheses, classify_vertices, is_tree,
                    node_label, subdivide, tree_action)
from .wallspace import WallSpace, max_transverse_clique


@dataclass
class Caps:
    group: int = DEFAULT_GROUP_CAP
    vertices: int = DEFAULT_VERTEX_CAP
    walls: int = DEFAULT_ORACLE_WALLS

    def check(self):
        for name in ("group", "vertices", "walls"):
            if getattr(self, name) <= 0:
                raise ModelError(f"cap {name} must be positive")


@dataclass
class Validation:
    checks: list = field(default_factory=list)  # (name, ok, detail)
    elements: list = None
    family: DivisionFamily = None
    ws: WallSpace = None

    @property
    def ok(self) -> bool:
        return all(ok for _, ok, _ in self.checks)

    def add(self, name, ok, detail=""):
        self.checks.append((name, bool(ok), detail))

    def failures(self) -> list:
        return [(n, d) for n, ok, d in self.checks if not ok]


def _fmt(graph, s) -> str:
    return "{" + ",".join(map(str, graph.labels(s))) + "}"


def validate(inst, caps: Caps = None) -> Validation:
    """Every standing assumption of the model, reported clause by clause.

    Cap violations raise; everything else is recorded so one run shows all
    failures.
    """
    caps = caps or Caps()
    caps.check()
    g = inst.graph
    rep = Validation()
    rep.add("at_least_4_vertices", len(g) >= 4, f"{len(g)} vertices")
    connected = len(components(g)) == 1
    rep.add("connected", connected)
    if connected:
        cv = cut_vertices(g)
        rep.add("no_cut_vertex", not cv, "cut vertices: " + _fmt(g, cv) if cv else "")
    try:
        inst.action.check()
        rep.add("generators_are_automorphisms", True)
    except ModelError as e:
        rep.add("generators_are_automorphisms", False, str(e))
        return rep
    rep.elements = enumerate_group(inst.action, caps.group)
    rep.add("group_order_below_cap", True, f"order {len(rep.elements)}")
    if not connected:
        return rep

    cuts_ok = True
    for c in inst.cuts:
        if c == g.all:
            rep.add(f"cut_set {_fmt(g, c)}", False, "cut set is every vertex")
            cuts_ok = False
            continue
        chk = is_cut_set(g, c)
        detail = f"valence {chk.valence}"
        if chk.isolated_members:
            detail += "; members without an outside neighbour: " + _fmt(g, chk.isolated_members)
        ok = chk.is_cut and not chk.isolated_members
        rep.add(f"cut_set {_fmt(g, c)}", ok, detail)
        cuts_ok &= ok
    if not cuts_ok:
        return rep

    base = canonical_divisions(g, inst.cuts)
    for d in base:
        r = validate_division(g, d)
        rep.add(f"division {_fmt(g, d.cut)}|{_fmt(g, d.plus)}", r.valid, ", ".join(r.failures))
    closed = close_under_action(base, rep.elements)
    family = DivisionFamily([canonically_oriented(g, d) for d in closed.divisions], closed.orbits)
    rep.family = family
    rep.add("family_closed_under_action", True,
            f"{len(base)} canonical divisions, {len(family)} after closure, {len(family.orbits)} orbit(s)")
    idx = [fullness_index(rep.elements, d) for d in family]
    rep.add("divisions_full", True, "stabilizer indices " + str(idx))
    rep.add("point_convergent", True, "automatic for finite families")
    ws = WallSpace.build(g, family, strict=False)
    rep.ws = ws
    rep.add("off_the_wall_points", ws.n >= 3, f"{ws.n} off-the-wall point(s)")
    for name, msg in ws.diagnostics:
        if name != "too_few_off_the_wall":
            rep.add(name, False, msg)
    return rep


def require_valid(rep: Validation):
    if not rep.ok:
        raise ModelError("validation failed: " + "; ".join(f"{n}" + (f" ({d})" if d else "") for n, d in rep.failures()))


@dataclass
class Build:
    validation: Validation
    cx: object
    hyps: list
    action: object
    clique: tuple
    oracle: object = None  # OracleReport, or None when skipped
    oracle_note: str = ""
    equivariance_checks: int = 0

    @property
    def ws(self) -> WallSpace:
        return self.cx.ws

    @property
    def elements(self) -> list:
        return self.validation.elements


def build(inst, caps: Caps = None, oracle: bool = True) -> Build:
    """Wallspace, dual complex, hyperplanes and group action, with every check enforced."""
    caps = caps or Caps()
    val = validate(inst, caps)
    require_valid(val)
    ws = val.ws
    cx = build_complex(ws, caps.vertices)
    orep, note = None, ""
    if oracle:
        if ws.k <= caps.walls:
            orep = compare_with_oracle(cx, caps.walls)
        else:
            note = f"skipped: {ws.k} walls exceed the oracle cap of {caps.walls}"
    else:
        note = "disabled"
    hyps = hyperplanes(cx)
    act = induced_action(cx, val.elements, hyps)
    if not act.stabilizers_match:
        raise TheoremViolation("hyperplane and division stabilizers differ", {
            "hyperplane_stabilizers": act.hyperplane_stabilizers,
            "division_stabilizers": act.division_stabilizers,
            "hyperplane_orbits": len(act.hyperplane_orbits),
            "division_orbits": len(act.division_orbits)})
    clique = max_transverse_clique(ws)
    if cx.dimension != clique[0]:
        raise TheoremViolation("complex dimension differs from the largest transverse set",
                               {"dimension": cx.dimension, "clique": clique[0], "witness": clique[1]})
    eq = check_principal_equivariance(cx, val.elements, act)
    return Build(val, cx, hyps, act, clique, orep, note, eq)


def _plural(n, word, plural=None):
    return f"{n} {word if n == 1 else (plural or word + 's')}"


_CUBE_NAMES = {2: "square", 3: "cube"}


def summary_line(b: Build) -> str:
    cx = b.cx
    parts = [_plural(len(cx.vertices), "vertex", "vertices")]
    if cx.edges:
        parts.append(_plural(len(cx.edges), "edge"))
    for d, n in cx.counts().items():
        if d >= 2:
            parts.append(_plural(n, _CUBE_NAMES.get(d, f"{d}-cube")))
    parts.append(f"dimension {cx.dimension}")
    if b.ws.k:
        parts.append(f"{_plural(len(b.action.hyperplane_orbits), 'hyperplane orbit')} = "
                     f"{_plural(len(b.action.division_orbits), 'division orbit')}")
    return ", ".join(parts)


def build_report(inst, b: Build) -> str:
    g = inst.graph
    ws, cx, act = b.ws, b.cx, b.action
    lines = [
        f"instance: {inst.name or '-'}",
        f"graph: {len(g)} vertices, {len(g.edges)} edges; group order {len(b.elements)}",
        f"walls: {ws.k}; off-the-wall points: {ws.n}",
        f"summary: {summary_line(b)}",
        "cubes by dimension: " + (", ".join(f"{d}: {n}" for d, n in cx.counts().items()) or "none"),
        f"largest transverse set: {b.clique[0]} {list(b.clique[1])}",
        f"principal vertices: {len(cx.principal)}",
        f"hyperplane stabilizers = division stabilizers: {act.stabilizers_match}",
        "stabilizer orders: " + str([len(s) for s in act.hyperplane_stabilizers]),
        "inversions: " + (", ".join(f"element {gi} on wall {w}" for gi, w in act.inversions) or "none"),
        f"equivariance checks: {b.equivariance_checks}",
    ]
    if b.oracle is not None:
        o = b.oracle
        lines.append(f"oracle: agreement; {o.built_vertices} built vertices; "
                     f"{o.oracle_vertices} consistent orientations overall; "
                     f"{o.nonprincipal_components} non-principal component(s)")
    else:
        lines.append(f"oracle: {b.oracle_note}")
    for i, d in enumerate(ws.walls):
        lines.append(f"  W{i}: cut {_fmt(g, d.cut)} plus {_fmt(g, d.plus)} minus {_fmt(g, d.minus)}")
    return "\n".join(lines) + "\n"


def oracle_report(inst, b: Build) -> str:
    o = b.oracle
    pc = o.pair_checks
    lines = [
        f"instance: {inst.name or '-'}",
        f"walls: {b.ws.k}",
        f"built vertices: {o.built_vertices}",
        f"consistent orientations: {o.oracle_vertices} in {len(o.components)} component(s), "
        f"{o.nonprincipal_components} non-principal",
        f"transversality pairs checked: {pc['transversality_pairs']}",
        f"inclusion pairs checked: {pc['inclusion_pairs']}",
        "oracle agreement: 100%",
    ]
    return "\n".join(lines) + "\n"


@dataclass
class TreeRun:
    build: Build
    hypotheses: dict
    typed: object
    laws: dict
    tree_perms: list
    cpt: object
    certificate: dict

    @property
    def asserted(self) -> bool:
        return self.typed.assertable


def separation_failures(graph, cuts) -> list:
    out = []
    for c1, c2 in combinations(cuts, 2):
        sep = mutually_non_separating(graph, c1, c2)
        if not sep.ok:
            out.append((c1, c2, sep.reason))
    return out


def tree(inst, caps: Caps = None, oracle: bool = True) -> TreeRun:
    """Subdivided tree, vertex types, cut point tree and the comparison certificate.

    Raises ``ModelError`` when two cut sets separate each other and
    ``TheoremViolation`` when an assertion fails on an instance without thin
    classes.
    """
    caps = caps or Caps()
    val = validate(inst, caps)
    require_valid(val)
    g = inst.graph
    cuts = val.family.cut_sets
    bad = separation_failures(g, cuts)
    if bad:
        c1, c2, why = bad[0]
        raise ModelError(f"mutual separation violated by ({_fmt(g, c1)},{_fmt(g, c2)}): {why}")
    b = build(inst, caps, oracle)
    hyp = check_tree_hypotheses(g, val.family)
    if not is_tree(b.cx):
        raise TheoremViolation("complex over mutually non-separating cut sets is not a tree",
                               {"dimension": b.cx.dimension})
    st = subdivide(b.cx, b.elements, b.action)
    tt = classify_vertices(st)
    laws = adjacency_laws(tt)
    tperms = tree_action(tt, b.elements, b.action) if not tt.violations else []
    P = pinch(g, cuts, b.elements)
    cpt = build_cutpoint_tree(P)
    cert = compare_trees(tt, cpt, tperms, cpt.perms()) if not tt.violations else {
        "ok": False, "vertex_map": [], "edge_check": {}, "equivariance_check": {}, "lemmas": {},
        "first_violation": ["classification", [list(v) for v in tt.violations][:1]]}
    cert["asserted"] = tt.assertable
    cert["thin_classes"] = [g.labels(tt.classes[n]) for n in tt.thin]
    if not cert["ok"] and tt.assertable:
        raise TheoremViolation("subdivided tree and cut point tree do not match", cert)
    return TreeRun(b, hyp, tt, laws, tperms, cpt, cert)


def tree_report(inst, r: TreeRun) -> str:
    g = inst.graph
    tt, cert = r.typed, r.certificate
    counts = {t: sum(1 for x in tt.types if x == t) for t in (PRINCIPAL, SEMI, MID)}
    lines = [
        f"instance: {inst.name or '-'}",
        f"summary: {summary_line(r.build)}",
        f"tree hypotheses hold: {r.hypotheses['all_hold']}",
        f"subdivided tree: {len(tt.types)} vertices ({counts[PRINCIPAL]} principal, "
        f"{counts[SEMI]} semi-principal, {counts[MID]} midpoint), {len(tt.tree.edges)} edges",
        "classes: " + " ".join(_fmt(g, c) for c in tt.classes),
        "thin classes: " + (" ".join(_fmt(g, tt.classes[n]) for n in tt.thin) or "none"),
        f"adjacency laws hold: {r.laws['holds']}",
        f"cut point tree: {len(r.cpt.cut_points)} cut point(s), {len(r.cpt.cyclic)} cyclic element(s)",
        f"isomorphism verified: {cert['ok']}" + ("" if cert["asserted"] else " (not asserted: thin classes)"),
    ]
    if cert.get("equivariance_check"):
        ec = cert["equivariance_check"]
        lines.append(f"equivariance: {ec['checks']} checks over {ec['elements']} element(s)")
    for n in range(len(tt.types)):
        lines.append(f"  {node_label(tt, n)} [{tt.types[n] or 'untyped'}]")
    return "\n".join(lines) + "\n"
