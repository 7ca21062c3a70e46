"""Time the compiled kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""
import argparse
import random
import timeit

from cutcube import _kernels_py

try:
    from cutcube import _kernels as compiled
except ImportError:
    compiled = None


def workloads(rng):
    k = 12
    masks = [rng.getrandbits(k) for _ in range(60)]
    codes = _kernels_py.principal_codes(masks)
    tables = [[rng.getrandbits(k) & rng.getrandbits(k) & rng.getrandbits(k) for _ in range(k)] for _ in range(4)]
    return {
        "principal_codes (60 points, 12 walls)": lambda m: m.principal_codes(masks),
        f"occupancy ({len(codes)} codes, 12 walls)": lambda m: m.occupancy(codes, k),
        "consistent_scan (12 walls)": lambda m: m.consistent_scan(k, *tables),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    rng = random.Random(0)
    print(f"{'kernel':42} {'python ms':>10} {'compiled ms':>12} {'speedup':>8}")
    for name, fn in workloads(rng).items():
        py = min(timeit.repeat(lambda: fn(_kernels_py), number=1, repeat=args.repeat)) * 1e3
        if compiled is None:
            print(f"{name:42} {py:10.2f} {'n/a':>12} {'n/a':>8}")
            continue
        if sorted(fn(compiled)) != sorted(fn(_kernels_py)):
            raise SystemExit(f"{name}: backends disagree")
        cy = min(timeit.repeat(lambda: fn(compiled), number=1, repeat=args.repeat)) * 1e3
        print(f"{name:42} {py:10.2f} {cy:12.3f} {py / cy:7.1f}x")


if __name__ == "__main__":
    main()
