from pathlib import Path

import pytest

from cutcube import pipeline
from cutcube.divisions import canonical_divisions, close_under_action
from cutcube.io import load_instance
from cutcube.space import GroupAction, SpaceGraph, enumerate_group
from cutcube.wallspace import WallSpace

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"

VALID = ["theta", "c8_crossing", "c8_crossing_rot4", "c8_single_wall", "c12_nested",
         "grid_3x7", "wedge", "theta_pocket", "empty_family"]
TREE = ["theta", "c8_single_wall", "c12_nested", "grid_3x7", "wedge", "theta_pocket", "empty_family"]


def fixture_path(name):
    return FIXTURES / f"{name}.json"


def load(name):
    return load_instance(fixture_path(name))


def cycle(n):
    return SpaceGraph.from_indices(n, [(i, (i + 1) % n) for i in range(n)])


def theta_graph():
    V = ["a", "b", "x1", "y1", "x2", "y2", "x3", "y3"]
    E = [("a", "x1"), ("x1", "y1"), ("y1", "b"), ("a", "x2"), ("x2", "y2"), ("y2", "b"),
         ("a", "x3"), ("x3", "y3"), ("y3", "b")]
    return SpaceGraph.build(V, E)


def wallspace(graph, cuts, gens=(), strict=True):
    elements = enumerate_group(GroupAction(graph, tuple(gens)))
    fam = close_under_action(canonical_divisions(graph, cuts), elements)
    return WallSpace.build(graph, fam, strict=strict)


@pytest.fixture
def theta():
    return theta_graph()


@pytest.fixture
def theta_ws(theta):
    return wallspace(theta, [theta.ix("a", "b")])


@pytest.fixture
def c8_cross_ws():
    return wallspace(cycle(8), [{0, 4}, {2, 6}])


@pytest.fixture(scope="session")
def builds():
    return {name: pipeline.build(load(name)) for name in VALID}


@pytest.fixture(scope="session")
def tree_runs():
    return {name: pipeline.tree(load(name)) for name in TREE}


ACCEPTANCE = {}


def record(criterion: int, title: str, ok: bool, detail: str = ""):
    ACCEPTANCE[criterion] = (title, ok, detail)
    return ok


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        title, ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {title}" + (f"  ({detail})" if detail else ""))
