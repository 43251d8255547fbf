"""Compare the compiled and pure-Python Descartes kernels.

    python3 benchmarks/bench_kernels.py [--repeat 5]
"""

import argparse
import random
import time
from fractions import Fraction

from deltalp import _kernels_py
from deltalp import exact as Q

try:
    from deltalp import _kernels
except ImportError:
    _kernels = None


def workload(seed: int = 7):
    """Integer boxes for polynomials with many roots in (0, 1)."""
    rng = random.Random(seed)
    cases = []
    for deg in (6, 10, 14, 18):
        roots = sorted({Fraction(rng.randint(1, 999), 1000) for _ in range(deg)})
        coeffs = Q.from_roots(roots)
        den = Q.common_denominator(coeffs)
        M = [int(c * den) for c in coeffs]
        cases.append((f"exact deg {len(M) - 1}", M, [0] * len(M)))
        R = [abs(m) >> 40 for m in M]
        cases.append((f"ball deg {len(M) - 1}", M, R))
    return cases


def bench(mod, cases, repeat):
    out = {}
    for name, M, R in cases:
        best = float("inf")
        for _ in range(repeat):
            t = time.perf_counter()
            mod.isolate01(list(M), list(R), 200, 50_000, None)
            best = min(best, time.perf_counter() - t)
        out[name] = best
    return out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    cases = workload()
    py = bench(_kernels_py, cases, args.repeat)
    cy = bench(_kernels, cases, args.repeat) if _kernels else None
    print(f"{'case':<16}{'python (ms)':>14}{'cython (ms)':>14}{'speedup':>10}")
    for name in py:
        if cy:
            print(f"{name:<16}{py[name] * 1e3:>14.2f}{cy[name] * 1e3:>14.2f}{py[name] / cy[name]:>10.2f}")
        else:
            print(f"{name:<16}{py[name] * 1e3:>14.2f}{'n/a':>14}")
    if not cy:
        print("compiled kernels not built; only the fallback was timed")


if __name__ == "__main__":
    main()
