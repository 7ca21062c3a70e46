"""Walls on triples of off-the-wall points.

A triple lies on the side of a division that holds at least two of its
points.  Halfspaces are never materialized: every query is answered from
counts of off-the-wall points in the regions cut out by one or two
divisions.  The brute-force route enumerates all triples (through the
kernels) and must agree with the counts.

Signed halfspaces are pairs ``(wall, sign)`` with ``sign`` in ``{+1, -1}``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from . import kernels
from .divisions import DivisionFamily
from .errors import ModelError, OracleMismatch, WallspaceError
from .space import SpaceGraph


def _pc(x: int) -> int:
    return bin(x).count("1")


def meets(s1: int, s2: int) -> bool:
    """Whether some triple has >= 2 points in each of the point sets ``s1``, ``s2``.

    Needs at least 3 points overall.  Two points in the overlap suffice; with
    one point there, the triple needs a point of ``s1 - s2`` and one of ``s2 - s1``.
    """
    a = _pc(s1 & s2)
    return a >= 2 or (a == 1 and bool(s1 & ~s2) and bool(s2 & ~s1))


@dataclass
class WallSpace:
    graph: SpaceGraph
    family: DivisionFamily
    off_wall: tuple  # vertex indices, ascending
    side_masks: list  # side_masks[i] = (plus mask, minus mask) over off-wall positions
    point_masks: list  # point_masks[p] = mask of walls whose plus side holds point p
    diagnostics: list = field(default_factory=list)
    _occ: list = field(default=None, repr=False)

    @classmethod
    def build(cls, graph: SpaceGraph, family: DivisionFamily, strict: bool = True) -> "WallSpace":
        """Set up the wallspace.  ``strict`` raises on any diagnostic; otherwise
        diagnostics are collected and queries still work where defined."""
        walls = family.divisions
        used = frozenset().union(*(d.cut for d in walls)) if walls else frozenset()
        off = tuple(sorted(graph.all - used))
        pos = {v: p for p, v in enumerate(off)}
        side_masks = []
        for d in walls:
            plus = sum(1 << pos[v] for v in d.plus if v in pos)
            minus = sum(1 << pos[v] for v in d.minus if v in pos)
            side_masks.append((plus, minus))
        point_masks = [0] * len(off)
        for i, (plus, _) in enumerate(side_masks):
            for p in range(len(off)):
                if (plus >> p) & 1:
                    point_masks[p] |= 1 << i
        diags = []
        if len(off) < 3:
            diags.append(("too_few_off_the_wall", f"{len(off)} off-the-wall points, need 3"))
        for i, (plus, minus) in enumerate(side_masks):
            for sign, m in (("+", plus), ("-", minus)):
                if _pc(m) < 2:
                    diags.append(("empty_halfspace", f"wall {i} {walls[i]!r}: side {sign} holds {_pc(m)} off-the-wall point(s)"))
        seen = {}
        for i, (plus, minus) in enumerate(side_masks):
            key = frozenset((plus, minus))
            if key in seen:
                diags.append(("duplicate_wall", f"walls {seen[key]} and {i} split the off-the-wall points identically"))
            else:
                seen[key] = i
        ws = cls(graph, family, off, side_masks, point_masks, diags)
        if strict and diags:
            raise WallspaceError("; ".join(f"{name}: {msg}" for name, msg in diags))
        return ws

    @property
    def k(self) -> int:
        return len(self.family.divisions)

    @property
    def n(self) -> int:
        return len(self.off_wall)

    @property
    def walls(self) -> list:
        return self.family.divisions

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    def side(self, i: int, sign: int) -> int:
        return self.side_masks[i][0 if sign > 0 else 1]

    def positions(self, vertices) -> int:
        pos = {v: p for p, v in enumerate(self.off_wall)}
        mask = 0
        for v in vertices:
            if v not in pos:
                raise ModelError(f"not off-the-wall: vertex {self.graph.vertices[v]!r}")
            mask |= 1 << pos[v]
        return mask

    # ---------------------------------------------------------------- queries

    def side_of_triple(self, i: int, triple) -> int:
        mask = self._triple_mask(triple)
        return 1 if _pc(mask & self.side_masks[i][0]) >= 2 else -1

    def _triple_mask(self, triple) -> int:
        triple = tuple(triple)
        if len(set(triple)) != 3:
            raise ModelError("a triple needs three distinct points")
        return self.positions(triple)

    def principal_code(self, triple) -> int:
        """Orientation (bit i set = plus side of wall i) chosen by the triple."""
        a, b, c = (self.point_masks[_pos] for _pos in _bits(self._triple_mask(triple)))
        return (a & b) | (a & c) | (b & c)

    def finiteness_count(self, t1, t2) -> int:
        return _pc(self.principal_code(t1) ^ self.principal_code(t2))

    def regions(self, i: int, j: int) -> dict:
        """Off-the-wall counts in the four regions side_i(s) & side_j(t)."""
        return {(s, t): _pc(self.side(i, s) & self.side(j, t)) for s in (1, -1) for t in (1, -1)}

    def transverse(self, i: int, j: int) -> bool:
        if i == j:
            raise ModelError("transversality of a wall with itself is undefined")
        return all(meets(self.side(i, s), self.side(j, t)) for s in (1, -1) for t in (1, -1))

    def halfspace_subset(self, h1, h2) -> bool:
        """Every triple of halfspace h1 lies in halfspace h2."""
        (i, s), (j, t) = h1, h2
        return not meets(self.side(i, s), self.side(j, -t))

    def halfspace_empty(self, h) -> bool:
        return _pc(self.side(*h)) < 2

    def disjoint(self, h1, h2) -> bool:
        return not meets(self.side(*h1), self.side(*h2))

    def transversality_matrix(self) -> list:
        k = self.k
        return [[i != j and self.transverse(i, j) for j in range(k)] for i in range(k)]

    def inclusion_table(self) -> dict:
        """``table[(h1, h2)]`` for all signed halfspaces."""
        hs = [(i, s) for i in range(self.k) for s in (1, -1)]
        return {(h1, h2): self.halfspace_subset(h1, h2) for h1 in hs for h2 in hs}

    # ----------------------------------------------------------------- oracle

    def occupancy(self) -> list:
        """Brute force over all triples: ``occ[i][j]`` bit ``2*s+t`` (1 = plus) is set
        when some triple chooses sign s on wall i and t on wall j."""
        if self._occ is None:
            codes = kernels.principal_codes(self.point_masks, self.k)
            self._occ = kernels.occupancy(codes, self.k)
        return self._occ

    def oracle_meets(self, h1, h2) -> bool:
        (i, s), (j, t) = h1, h2
        bit = (2 if s > 0 else 0) | (1 if t > 0 else 0)
        return bool((self.occupancy()[i][j] >> bit) & 1)

    def oracle_transverse(self, i: int, j: int) -> bool:
        return self.occupancy()[i][j] == 0b1111

    def oracle_subset(self, h1, h2) -> bool:
        (j, t) = h2
        return not self.oracle_meets(h1, (j, -t))

    def check_against_oracle(self) -> dict:
        """Compare region-count answers with the triple scan for every pair.

        Returns counts of comparisons; raises ``OracleMismatch`` on the first
        disagreement.
        """
        k = self.k
        n_t = n_s = 0
        for i in range(k):
            for j in range(k):
                if i != j:
                    n_t += 1
                    if self.transverse(i, j) != self.oracle_transverse(i, j):
                        raise OracleMismatch(f"transversality of walls {i},{j}: counts and triple scan disagree")
                for s in (1, -1):
                    for t in (1, -1):
                        n_s += 1
                        if self.halfspace_subset((i, s), (j, t)) != self.oracle_subset((i, s), (j, t)):
                            raise OracleMismatch(f"inclusion {(i, s)} <= {(j, t)}: counts and triple scan disagree")
        return {"transversality_pairs": n_t, "inclusion_pairs": n_s}

    # --------------------------------------------------------------- symmetry

    def wall_action(self, g) -> tuple:
        """Wall permutation and side flips induced by a vertex permutation.

        ``perm[i]`` is the wall index of g*D_i; ``flip[i]`` is True when g sends
        the plus side of D_i to the minus side of that wall.
        """
        pos = {d: i for i, d in enumerate(self.walls)}
        perm, flip = [], []
        for d in self.walls:
            img = d.apply(g)
            j = pos.get(img)
            if j is None:
                raise ModelError(f"action does not preserve the wall family: image of {d!r} missing")
            perm.append(j)
            flip.append(img.plus != self.walls[j].plus)
        return perm, flip

    def to_json(self) -> dict:
        labels = self.graph.labels
        return {
            "off_the_wall": labels(self.off_wall),
            "transverse": self.transversality_matrix(),
            "diagnostics": [list(x) for x in self.diagnostics],
            "walls": [
                {"cut_set": labels(d.cut), "plus": labels(d.plus), "minus": labels(d.minus)}
                for d in self.walls
            ],
        }


def _bits(mask: int):
    p = 0
    while mask:
        if mask & 1:
            yield p
        mask >>= 1
        p += 1


def triple_space(ws: WallSpace):
    """All off-the-wall triples, as sorted vertex-index tuples."""
    return combinations(ws.off_wall, 3)


def max_transverse_clique(ws_or_matrix) -> tuple:
    """Largest set of pairwise transverse walls: ``(size, witness)``.

    Exact branch and bound; ties go to the lexicographically first witness.
    """
    mat = ws_or_matrix.transversality_matrix() if isinstance(ws_or_matrix, WallSpace) else ws_or_matrix
    k = len(mat)
    nbr = [{j for j in range(k) if mat[i][j]} for i in range(k)]
    best: list = []

    def grow(clique, cand):
        nonlocal best
        if len(clique) > len(best):
            best = list(clique)
        for idx, v in enumerate(cand):
            if len(clique) + len(cand) - idx <= len(best):
                return
            grow(clique + [v], [w for w in cand[idx + 1:] if w in nbr[v]])

    grow([], list(range(k)))
    return len(best), best


def crossing_dot(ws: WallSpace) -> str:
    """Graphviz source: walls as nodes, transverse pairs as edges."""
    lines = ["graph crossing {"]
    for i, d in enumerate(ws.walls):
        lab = ",".join(map(str, ws.graph.labels(d.cut)))
        lines.append(f'  w{i} [label="W{i} {{{lab}}}"];')
    mat = ws.transversality_matrix()
    for i in range(ws.k):
        for j in range(i + 1, ws.k):
            if mat[i][j]:
                lines.append(f"  w{i} -- w{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"
