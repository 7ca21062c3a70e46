import os
import subprocess
import sys

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cutcube import _kernels_py, kernels

try:
    from cutcube import _kernels as compiled
except ImportError:  # pragma: no cover
    compiled = None

needs_compiled = pytest.mark.skipif(compiled is None, reason="compiled kernels not built")

masks = st.integers(min_value=1, max_value=10).flatmap(
    lambda k: st.tuples(st.just(k), st.lists(st.integers(0, (1 << k) - 1), min_size=3, max_size=14)))


def naive_principal(point_masks, k):
    out = set()
    n = len(point_masks)
    for a in range(n):
        for b in range(a + 1, n):
            for c in range(b + 1, n):
                code = 0
                for i in range(k):
                    votes = sum((point_masks[x] >> i) & 1 for x in (a, b, c))
                    code |= (votes >= 2) << i
                out.add(code)
    return sorted(out)


@settings(max_examples=150, deadline=None)
@given(masks)
def test_principal_codes_python_matches_bitwise_vote(data):
    k, pm = data
    assert _kernels_py.principal_codes(pm) == naive_principal(pm, k)


@needs_compiled
@settings(max_examples=150, deadline=None)
@given(masks)
def test_compiled_matches_python(data):
    k, pm = data
    codes = _kernels_py.principal_codes(pm)
    assert sorted(compiled.principal_codes(pm)) == codes
    assert compiled.occupancy(codes, k) == _kernels_py.occupancy(codes, k)


bad_tables = st.integers(1, 9).flatmap(lambda k: st.tuples(
    st.just(k), *[st.lists(st.integers(0, (1 << k) - 1), min_size=k, max_size=k) for _ in range(4)]))


@needs_compiled
@settings(max_examples=150, deadline=None)
@given(bad_tables)
def test_consistent_scan_backends_agree(data):
    k, pp, pm, mp, mm = data
    assert list(compiled.consistent_scan(k, pp, pm, mp, mm)) == _kernels_py.consistent_scan(k, pp, pm, mp, mm)


def test_consistent_scan_with_no_constraints():
    k = 4
    zero = [0] * k
    assert _kernels_py.consistent_scan(k, zero, zero, zero, zero) == list(range(16))


def test_occupancy_bits():
    occ = _kernels_py.occupancy([0b01, 0b10], 2)
    # code 0b01: wall 0 plus, wall 1 minus -> bit 2*1+0 at [0][1]
    assert occ[0][1] == (1 << 2) | (1 << 1)
    assert occ[0][0] == (1 << 3) | (1 << 0)


def test_dispatch_falls_back_for_wide_families():
    pm = [1 << 70, 0, (1 << 70) | 1]
    assert kernels.principal_codes(pm, 71) == _kernels_py.principal_codes(pm)


def test_pure_environment_switch():
    code = "import cutcube.kernels as k; print(k.BACKEND)"
    env = dict(os.environ, CUTCUBE_PURE="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True).stdout.strip()
    assert out == "python"
    env.pop("CUTCUBE_PURE")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True).stdout.strip()
    assert out == ("compiled" if compiled is not None else "python")


def test_pure_backend_reproduces_golden_report(tmp_path):
    env = dict(os.environ, CUTCUBE_PURE="1")
    root = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
    res = subprocess.run([sys.executable, "-m", "cutcube.cli", "build", "-i", "fixtures/c8_crossing.json",
                          "-o", str(tmp_path)], cwd=root, env=env, capture_output=True, text=True)
    assert res.returncode == 0
    with open(os.path.join(root, "fixtures", "golden", "build-c8_crossing.txt"), encoding="utf-8") as fh:
        golden = fh.read()
    assert golden == f"exit: 0\n--- stdout\n{res.stdout}--- stderr\n{res.stderr}"


@needs_compiled
@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(0, (1 << 40) - 1), min_size=3, max_size=12))
def test_compiled_wide_masks_use_sorted_route(pm):
    assert list(compiled.principal_codes(pm)) == _kernels_py.principal_codes(pm)
