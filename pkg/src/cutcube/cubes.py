"""The cube complex dual to the wallspace on triples.

Vertices are orientations stored as ints: bit ``i`` set means the plus
halfspace of wall ``i`` is chosen.  With finitely many walls every
ultrafilter satisfies the descending chain condition, so consistency is the
only constraint.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

from . import kernels
from .divisions import division_orbits, stabilizer
from .errors import CapExceeded, ModelError, OracleMismatch, TheoremViolation
from .wallspace import WallSpace

DEFAULT_VERTEX_CAP = 10**5
DEFAULT_ORACLE_WALLS = 20

_PALETTE = ["red", "blue", "darkgreen", "orange", "purple", "brown", "magenta",
            "cyan4", "gold3", "gray40", "navy", "olivedrab"]


def orientation_label(code: int, k: int) -> str:
    if k == 0:
        return "."
    return "".join("+" if (code >> i) & 1 else "-" for i in range(k))


def _sign(code: int, i: int) -> int:
    return 1 if (code >> i) & 1 else -1


def principal_ultrafilter(ws: WallSpace, triple) -> int:
    return ws.principal_code(triple)


def is_consistent(ws: WallSpace, code: int) -> bool:
    """No two chosen halfspaces are disjoint (equivalently, none sits inside an unchosen one)."""
    chosen = [(i, _sign(code, i)) for i in range(ws.k)]
    return not any(ws.disjoint(h1, h2) for h1, h2 in combinations(chosen, 2))


class _Tables:
    """Inclusion data from the counting route, indexed by wall and sign bit."""

    def __init__(self, ws: WallSpace):
        k = ws.k
        # sub[i][s][j][t]: halfspace (j, t) is inside halfspace (i, s); sign bit 1 = plus
        self.sub = [[[[ws.halfspace_subset((j, 1 if t else -1), (i, 1 if s else -1)) and j != i
                       for t in (0, 1)] for j in range(k)] for s in (0, 1)] for i in range(k)]
        self.k = k

    def minimal_walls(self, code: int) -> list:
        """Walls whose chosen halfspace contains no other chosen halfspace."""
        out = []
        for i in range(self.k):
            row = self.sub[i][(code >> i) & 1]
            if not any(row[j][(code >> j) & 1] for j in range(self.k)):
                out.append(i)
        return out


@dataclass
class Hyperplane:
    wall: int
    edges: list  # indices into CubeComplex.edges


@dataclass
class CubeComplex:
    ws: WallSpace
    vertices: list  # orientation codes, ascending
    edges: list  # (u, v, wall), vertex indices with u < v
    cubes: dict  # dim -> sorted list of (walls tuple, base code with those bits cleared)
    principal: list  # indices of principal vertices
    index: dict = field(repr=False, default_factory=dict)

    @property
    def dimension(self) -> int:
        return max(self.cubes) if self.cubes else 0

    def cube_vertices(self, walls, base) -> list:
        out = []
        for r in range(len(walls) + 1):
            for sub in combinations(walls, r):
                code = base
                for w in sub:
                    code |= 1 << w
                out.append(self.index[code])
        return sorted(out)

    def neighbours(self) -> list:
        nb = [[] for _ in self.vertices]
        for u, v, _ in self.edges:
            nb[u].append(v)
            nb[v].append(u)
        return nb

    def label(self, v: int) -> str:
        return orientation_label(self.vertices[v], self.ws.k)

    def counts(self) -> dict:
        return {d: len(c) for d, c in sorted(self.cubes.items())}


def build_complex(ws: WallSpace, cap: int = DEFAULT_VERTEX_CAP) -> CubeComplex:
    """Breadth-first search from every principal orientation, flipping minimal halfspaces."""
    if ws.diagnostics:
        raise ModelError("wallspace has diagnostics: " + "; ".join(m for _, m in ws.diagnostics))
    tabs = _Tables(ws)
    seeds = kernels.principal_codes(ws.point_masks, ws.k) if ws.k else [0]
    seen = set(seeds)
    if len(seen) > cap:
        raise CapExceeded(f"complex too large: more than {cap} vertices")
    queue = deque(seeds)
    flips = {}
    while queue:
        code = queue.popleft()
        mins = tabs.minimal_walls(code)
        flips[code] = mins
        for i in mins:
            nxt = code ^ (1 << i)
            if nxt not in seen:
                seen.add(nxt)
                if len(seen) > cap:
                    raise CapExceeded(f"complex too large: more than {cap} vertices")
                queue.append(nxt)
    vertices = sorted(seen)
    index = {c: n for n, c in enumerate(vertices)}
    edges = []
    for code in vertices:
        for i in flips[code]:
            other = code ^ (1 << i)
            if code < other:
                edges.append((index[code], index[other], i))
    edges.sort()

    trans = ws.transversality_matrix()
    cubes: dict = {}
    if edges:
        cubes[1] = sorted({((i,), vertices[u] & ~(1 << i)) for u, _, i in edges})
    found = set()

    def grow(base_code, walls, cand):
        for idx, w in enumerate(cand):
            if not all(trans[w][x] for x in walls):
                continue
            new = walls + (w,)
            corners_ok = True
            for r in range(len(walls) + 1):
                for sub in combinations(walls, r):
                    c = base_code ^ (1 << w)
                    for x in sub:
                        c ^= 1 << x
                    if c not in index:
                        corners_ok = False
                        break
                if not corners_ok:
                    break
            if not corners_ok:
                continue
            if len(new) >= 2:
                key = (tuple(sorted(new)), _clear(base_code, new))
                found.add(key)
            grow(base_code, new, cand[idx + 1:])

    for code in vertices:
        grow(code, (), flips[code])
    for walls, base in found:
        cubes.setdefault(len(walls), []).append((walls, base))
    for d in cubes:
        cubes[d].sort()

    principal = sorted(index[c] for c in seeds)
    return CubeComplex(ws, vertices, edges, cubes, principal, index)


def _clear(code: int, walls) -> int:
    for w in walls:
        code &= ~(1 << w)
    return code


# --------------------------------------------------------------------- oracle


def oracle_enumerate(ws: WallSpace, cap: int = DEFAULT_ORACLE_WALLS) -> list:
    """Every consistent orientation among all 2**k, judged by the triple scan."""
    k = ws.k
    if k > cap:
        raise CapExceeded(f"oracle limited to {cap} walls, family has {k}")
    bad = {(s, t): [0] * k for s in (1, -1) for t in (1, -1)}
    for i in range(k):
        for j in range(k):
            if i == j:
                continue
            for s in (1, -1):
                for t in (1, -1):
                    if not ws.oracle_meets((i, s), (j, t)):
                        bad[s, t][i] |= 1 << j
    return kernels.consistent_scan(k, bad[1, 1], bad[1, -1], bad[-1, 1], bad[-1, -1])


@dataclass
class OracleReport:
    oracle_vertices: int
    built_vertices: int
    components: list  # sizes of the components of the full consistent set
    nonprincipal_components: int
    agreement: bool
    pair_checks: dict


def compare_with_oracle(cx: CubeComplex, cap: int = DEFAULT_ORACLE_WALLS) -> OracleReport:
    """Diff the built complex against exhaustive enumeration.

    The oracle's adjacency is "differ on exactly one wall"; its component
    containing the principal orientations must equal the built vertex set.
    Raises ``OracleMismatch`` on any disagreement.
    """
    ws = cx.ws
    pair_checks = ws.check_against_oracle()
    allc = oracle_enumerate(ws, cap)
    aset = set(allc)
    comp_of = {}
    comps = []
    for c in allc:
        if c in comp_of:
            continue
        cid = len(comps)
        comp_of[c] = cid
        members = [c]
        queue = deque([c])
        while queue:
            x = queue.popleft()
            for i in range(ws.k):
                y = x ^ (1 << i)
                if y in aset and y not in comp_of:
                    comp_of[y] = cid
                    members.append(y)
                    queue.append(y)
        comps.append(members)
    seeds = kernels.principal_codes(ws.point_masks, ws.k) if ws.k else [0]
    pcomps = {comp_of.get(s) for s in seeds}
    if None in pcomps:
        raise OracleMismatch("a principal orientation is inconsistent according to the triple scan")
    principal_set = set().union(*(set(comps[c]) for c in pcomps))
    agreement = principal_set == set(cx.vertices)
    rep = OracleReport(len(allc), len(cx.vertices), sorted(len(c) for c in comps),
                       len(comps) - len(pcomps), agreement, pair_checks)
    if not agreement:
        raise OracleMismatch(f"built complex has {len(cx.vertices)} vertices, oracle principal component has {len(principal_set)}")
    return rep


# ----------------------------------------------------------------- hyperplanes


def hyperplanes(cx: CubeComplex) -> list:
    """Edge classes under "opposite sides of a square"; one per wall, checked."""
    parent = list(range(len(cx.edges)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    eid = {(u, v): n for n, (u, v, _) in enumerate(cx.edges)}

    def edge(c1, c2):
        a, b = cx.index[c1], cx.index[c2]
        return eid[(min(a, b), max(a, b))]

    for (a, b), base in cx.cubes.get(2, []):
        ma, mb = 1 << a, 1 << b
        for e1, e2 in (
            (edge(base, base | ma), edge(base | mb, base | ma | mb)),
            (edge(base, base | mb), edge(base | ma, base | ma | mb)),
        ):
            r1, r2 = find(e1), find(e2)
            if r1 != r2:
                parent[max(r1, r2)] = min(r1, r2)
    classes: dict = {}
    for n in range(len(cx.edges)):
        classes.setdefault(find(n), []).append(n)
    out = []
    for members in classes.values():
        walls = {cx.edges[n][2] for n in members}
        if len(walls) != 1:
            raise TheoremViolation(f"hyperplane crosses several walls: {sorted(walls)}")
        out.append(Hyperplane(walls.pop(), sorted(members)))
    out.sort(key=lambda h: h.wall)
    if [h.wall for h in out] != list(range(cx.ws.k)):
        raise TheoremViolation("walls and hyperplanes are not in bijection",
                               {"hyperplane_walls": [h.wall for h in out]})
    return out


# ------------------------------------------------------------------- action


@dataclass
class ActionReport:
    vertex_perms: list  # per group element, tuple of vertex images
    wall_perms: list
    flips: list
    hyperplane_stabilizers: list  # per wall, indices into the element list
    division_stabilizers: list
    hyperplane_orbits: list
    division_orbits: list
    inversions: list  # (element index, wall)
    stabilizers_match: bool


def act_on_code(code: int, perm, flip) -> int:
    """g*alpha: the halfspace chosen on wall i moves to wall perm[i], swapping sign if flipped."""
    out = 0
    for i, j in enumerate(perm):
        if ((code >> i) & 1) ^ flip[i]:
            out |= 1 << j
    return out


def induced_action(cx: CubeComplex, elements: Sequence, hyps: list = None) -> ActionReport:
    """Act on vertices; compute stabilizers; compare hyperplane and division stabilizers.

    Hyperplane stabilizers come from images of edge classes, division
    stabilizers from the graph action on divisions; the two routes share
    nothing beyond the element list.
    """
    ws = cx.ws
    hyps = hyps if hyps is not None else hyperplanes(cx)
    edge_set = {(u, v) for u, v, _ in cx.edges}
    vperms, wperms, flips = [], [], []
    for g in elements:
        perm, flip = ws.wall_action(g)
        try:
            vp = tuple(cx.index[act_on_code(c, perm, flip)] for c in cx.vertices)
        except KeyError:
            raise TheoremViolation("group element maps a vertex outside the complex") from None
        for u, v, _ in cx.edges:
            a, b = vp[u], vp[v]
            if (min(a, b), max(a, b)) not in edge_set:
                raise TheoremViolation("group element does not preserve adjacency")
        vperms.append(vp)
        wperms.append(perm)
        flips.append(flip)

    def edge_image(vp, n):
        u, v, _ = cx.edges[n]
        a, b = vp[u], vp[v]
        return (min(a, b), max(a, b))

    hkeys = [frozenset((cx.edges[n][0], cx.edges[n][1]) for n in h.edges) for h in hyps]
    hpos = {key: i for i, key in enumerate(hkeys)}
    h_stabs = []
    h_images = []
    for h, key in zip(hyps, hkeys):
        st, imgs = [], []
        for gi, vp in enumerate(vperms):
            img = frozenset(edge_image(vp, n) for n in h.edges)
            if img not in hpos:
                raise TheoremViolation("group element does not map hyperplanes to hyperplanes")
            imgs.append(hpos[img])
            if img == key:
                st.append(gi)
        h_stabs.append(st)
        h_images.append(imgs)
    h_orbits = []
    seen = set()
    for i in range(len(hyps)):
        if i in seen:
            continue
        orb = sorted(set(h_images[i]))
        seen.update(orb)
        h_orbits.append(orb)

    pos = {g: n for n, g in enumerate(elements)}
    d_stabs = [sorted(pos[g] for g in stabilizer(elements, d)) for d in ws.walls]
    d_orbits = division_orbits(ws.family, elements)
    hyp_by_wall = {h.wall: st for h, st in zip(hyps, h_stabs)}
    stabilizers_match = (
        all(hyp_by_wall[i] == d_stabs[i] for i in range(ws.k))
        and len(h_orbits) == len(d_orbits)
    )
    inversions = [(gi, i) for gi, (perm, flip) in enumerate(zip(wperms, flips))
                  for i in range(ws.k) if perm[i] == i and flip[i]]
    return ActionReport(vperms, wperms, flips, [hyp_by_wall[i] for i in range(ws.k)], d_stabs,
                        h_orbits, d_orbits, inversions, stabilizers_match)


def check_principal_equivariance(cx: CubeComplex, elements: Sequence, action: ActionReport) -> int:
    """principal(g t) == g principal(t) for every element and every off-the-wall triple.

    Returns the number of checks made; raises ``TheoremViolation`` on failure.
    """
    ws = cx.ws
    checks = 0
    for gi, g in enumerate(elements):
        perm, flip = action.wall_perms[gi], action.flips[gi]
        for t in combinations(ws.off_wall, 3):
            gt = tuple(g[v] for v in t)
            if ws.principal_code(gt) != act_on_code(ws.principal_code(t), perm, flip):
                raise TheoremViolation(f"principal ultrafilter not equivariant at element {gi}, triple {t}")
            checks += 1
    return checks


# ------------------------------------------------------------------- export


def complex_dot(cx: CubeComplex, hyps: list = None) -> str:
    hyps = hyps if hyps is not None else hyperplanes(cx)
    colour = {}
    for h in hyps:
        for n in h.edges:
            colour[n] = _PALETTE[h.wall % len(_PALETTE)]
    lines = ["graph X {"]
    for v in range(len(cx.vertices)):
        shape = ', shape=doublecircle' if v in cx.principal else ''
        lines.append(f'  v{v} [label="{cx.label(v)}"{shape}];')
    for n, (u, v, w) in enumerate(cx.edges):
        lines.append(f'  v{u} -- v{v} [color={colour[n]}, label="W{w}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def complex_json(cx: CubeComplex, hyps: list = None, action: ActionReport = None) -> dict:
    hyps = hyps if hyps is not None else hyperplanes(cx)
    out = {
        "walls": cx.ws.k,
        "vertices": [{"id": v, "orientation": cx.label(v), "principal": v in cx.principal}
                     for v in range(len(cx.vertices))],
        "edges": [{"u": u, "v": v, "wall": w} for u, v, w in cx.edges],
        "cubes": {str(d): [{"walls": list(w), "vertices": cx.cube_vertices(w, b)} for w, b in cs]
                  for d, cs in sorted(cx.cubes.items())},
        "dimension": cx.dimension,
        "hyperplanes": [{"wall": h.wall, "edges": h.edges} for h in hyps],
    }
    if action is not None:
        out["stabilizers"] = {
            "hyperplane": action.hyperplane_stabilizers,
            "division": action.division_stabilizers,
            "hyperplane_orbits": action.hyperplane_orbits,
            "division_orbits": action.division_orbits,
            "inversions": [list(x) for x in action.inversions],
            "stabilizers_match": action.stabilizers_match,
        }
    return out
