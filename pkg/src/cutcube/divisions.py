"""Divisions of the graph model and the canonical family attached to cut sets."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Sequence

from .errors import CapExceeded, ModelError
from .space import SpaceGraph, components, image_of, is_cut_set, orbit_and_stabilizer

DEFAULT_FAMILY_CAP = 10**5


class Division:
    """A cut set with an ordered pair of sides.

    Equality and hashing ignore the order of the sides, so a group element
    that swaps them still stabilizes the division.  ``plus``/``minus`` keep
    the orientation used for the wall built from it.
    """

    __slots__ = ("cut", "plus", "minus", "_key")

    def __init__(self, cut: Iterable[int], plus: Iterable[int], minus: Iterable[int]):
        self.cut = frozenset(cut)
        self.plus = frozenset(plus)
        self.minus = frozenset(minus)
        self._key = (self.cut, frozenset((self.plus, self.minus)))

    def __eq__(self, other):
        return isinstance(other, Division) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"Division({sorted(self.cut)}, {sorted(self.plus)} | {sorted(self.minus)})"

    def apply(self, g) -> "Division":
        return Division(image_of(g, self.cut), image_of(g, self.plus), image_of(g, self.minus))

    def side(self, sign: int) -> frozenset:
        return self.plus if sign > 0 else self.minus

    def sort_key(self):
        return (sorted(self.cut), sorted(self.plus), sorted(self.minus))


def small_side(graph: SpaceGraph, d: Division):
    """'+' or '-' for the side that is a single component when the cut set has
    valence >= 3; ``None`` for valence 2 or when neither side is a single component."""
    comps = components(graph, d.cut)
    if len(comps) < 3:
        return None
    if d.plus in comps:
        return "+"
    if d.minus in comps:
        return "-"
    return None


@dataclass
class DivisionReport:
    failures: list = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return not self.failures


def validate_division(graph: SpaceGraph, d: Division) -> DivisionReport:
    """Check every clause; never raises for a bad division."""
    rep = DivisionReport()
    fail = rep.failures.append
    rest = graph.all - d.cut
    if not d.cut:
        fail("cut_set_nonempty")
    if not d.cut <= graph.all or not (d.plus | d.minus) <= graph.all:
        fail("subset_of_vertices")
        return rep
    if d.cut and d.cut != graph.all:
        chk = is_cut_set(graph, d.cut)
        if not chk.is_cut:
            fail("cut_disconnects")
        if chk.isolated_members:
            fail("nowhere_dense")
    if d.plus & d.minus or (d.plus | d.minus) != rest:
        fail("sides_partition_complement")
    if not d.plus or not d.minus:
        fail("sides_nonempty")
    if rest:
        for comp in components(graph, d.cut):
            if not (comp <= d.plus or comp <= d.minus):
                fail("sides_are_unions_of_components")
                break
    for c in sorted(d.cut):
        if not (graph.adj[c] & d.plus and graph.adj[c] & d.minus):
            fail("closure_meets_both_sides")
            break
    return rep


@dataclass
class DivisionFamily:
    divisions: list
    orbits: list = None  # list of lists of positions into ``divisions``

    def __len__(self):
        return len(self.divisions)

    def __iter__(self):
        return iter(self.divisions)

    def index(self, d: Division) -> int:
        return self.divisions.index(d)

    @property
    def cut_sets(self) -> list:
        out = []
        for d in self.divisions:
            if d.cut not in out:
                out.append(d.cut)
        return out

    def to_json(self, graph: SpaceGraph) -> dict:
        orbit_of = {}
        for k, orb in enumerate(self.orbits or []):
            for i in orb:
                orbit_of[i] = k
        return {
            "divisions": [
                {
                    "cut_set": graph.labels(d.cut),
                    "side_plus": graph.labels(d.plus),
                    "side_minus": graph.labels(d.minus),
                    "small_side_flag": small_side(graph, d),
                    "orbit": orbit_of.get(i),
                }
                for i, d in enumerate(self.divisions)
            ],
            "orbit_count": len(self.orbits) if self.orbits is not None else None,
        }


def canonical_divisions(graph: SpaceGraph, cuts: Sequence[Iterable[int]]) -> DivisionFamily:
    """One division per complementary component of each cut set.

    A valence-2 cut set yields a single division, oriented so the side holding
    the least vertex is ``plus``.  For valence >= 3 the component is the
    ``plus`` (small) side.
    """
    out = []
    for cut in cuts:
        cut = frozenset(cut)
        comps = components(graph, cut)
        if len(comps) < 2:
            raise ModelError(f"not a cut set: {graph.labels(cut)}")
        if len(comps) == 2:
            cand = [Division(cut, comps[0], comps[1])]
        else:
            rest = graph.all - cut
            cand = [Division(cut, a, rest - a) for a in comps]
        for d in cand:
            if d not in out:
                out.append(d)
    return DivisionFamily(out)


def canonically_oriented(graph: SpaceGraph, d: Division) -> Division:
    """Same division with sides ordered as ``canonical_divisions`` would order them."""
    comps = components(graph, d.cut)
    if len(comps) >= 3:
        small = d.plus in comps or d.minus not in comps
    else:
        small = min(d.plus) < min(d.minus)
    return d if small else Division(d.cut, d.minus, d.plus)


def close_under_action(family: DivisionFamily, elements: Sequence, cap: int = DEFAULT_FAMILY_CAP) -> DivisionFamily:
    """Add all translates; orbits are kept contiguous in input order."""
    out = []
    pos = {}
    orbits = []
    for d in family.divisions:
        if d in pos:
            continue
        orb = []
        for g in elements:
            img = d.apply(g)
            if img not in pos:
                pos[img] = len(out)
                out.append(img)
                orb.append(pos[img])
                if len(out) > cap:
                    raise CapExceeded(f"division family larger than {cap}")
        orbits.append(orb)
    return DivisionFamily(out, orbits)


def division_orbits(family: DivisionFamily, elements: Sequence) -> list:
    """Orbit decomposition of an already closed family (positions into the family)."""
    pos = {d: i for i, d in enumerate(family.divisions)}
    seen = set()
    orbits = []
    for i, d in enumerate(family.divisions):
        if i in seen:
            continue
        orb = []
        for g in elements:
            j = pos.get(d.apply(g))
            if j is None:
                raise ModelError(f"family is not closed under the action: image of {d!r} missing")
            if j not in seen:
                seen.add(j)
                orb.append(j)
        orbits.append(sorted(orb))
    return orbits


def stabilizer(elements: Sequence, d: Division, side_preserving: bool = False) -> list:
    """Stab(D) as a sublist of ``elements``; with ``side_preserving`` only the
    elements fixing each side (Stab of the plus side)."""
    if side_preserving:
        return [g for g in elements if image_of(g, d.cut) == d.cut and image_of(g, d.plus) == d.plus]
    return orbit_and_stabilizer(elements, d)[1]


def fullness_index(elements: Sequence, d: Division) -> int:
    """[Stab(C_D) : Stab(D)]."""
    return len(orbit_and_stabilizer(elements, d.cut)[1]) // len(stabilizer(elements, d))


class Separation(NamedTuple):
    ok: bool
    reason: str = None


def mutually_non_separating(graph: SpaceGraph, c1: Iterable[int], c2: Iterable[int]) -> Separation:
    """Each cut set lies inside a single component of the complement of the other."""
    c1, c2 = frozenset(c1), frozenset(c2)
    if c1 & c2:
        return Separation(False, "overlap")
    for a, b in ((c1, c2), (c2, c1)):
        if not any(b <= comp for comp in components(graph, a)):
            return Separation(False, "separates")
    return Separation(True)
