"""Benchmark the compiled kernels against the pure-Python fallback.

Run as:  python3 benchmarks/bench_backends.py [--repeat N]

Each kernel is timed on the workloads that dominate the acceptance
suite: small exact determinants, full minor enumeration of a TU matrix,
the incremental-extension DFS searches, and cube-orbit canonicalization.
"""

import argparse
import random
import time
from itertools import permutations, product

from tumax import _pykernels

try:
    from tumax import _ckernels
except ImportError:
    _ckernels = None


def batch_dets(backend, mats):
    for flat, n in mats:
        backend.det_entries(flat, n)


def tu_enumeration(backend, flat, rows, cols):
    backend.tu_violation(flat, rows, cols)


def search_heller_m3(backend):
    cands = list(product((-1, 0, 1), repeat=3))
    flat = [x for c in cands for x in c]
    backend.max_tu_subset(3, flat, len(cands))


def search_polytopal_m5(backend):
    cands = [v for v in product((-1, 0, 1), repeat=5)
             if sum(v) == 1 and sum(1 for x in v if x) > 1]
    flat = [x for c in cands for x in c]
    backend.max_tu_subset(5, flat, len(cands))


def cube_orbits_d4(backend, perms):
    backend.canonical_masks(16, perms, 5, 10)


def cube_perms(d):
    pts = list(product((0, 1), repeat=d))
    index = {p: i for i, p in enumerate(pts)}
    out = []
    for sigma in permutations(range(d)):
        for flips in product((0, 1), repeat=d):
            perm = [index[tuple(p[sigma[k]] ^ flips[k] for k in range(d))]
                    for p in pts]
            if perm != list(range(len(pts))):
                out.append(perm)
    return out


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    rng = random.Random(0)
    mats = []
    for _ in range(2000):
        n = rng.randint(3, 6)
        mats.append(([rng.randint(-1, 1) for _ in range(n * n)], n))
    sporadic = [
        1, 0, 0, 0, 0, 1, 0, 0, 1, -1,
        0, 1, 0, 0, 0, -1, 1, 0, 0, 1,
        0, 0, 1, 0, 0, 1, -1, 1, 0, 0,
        0, 0, 0, 1, 0, 0, 1, -1, 1, 0,
        0, 0, 0, 0, 1, 0, 0, 1, -1, 1,
    ]
    perms = cube_perms(4)

    workloads = [
        ("2000 determinants (3x3..6x6)", batch_dets, (mats,)),
        ("full minor enumeration, TU 5x10", tu_enumeration,
         (sporadic, 5, 10)),
        ("DFS max TU subset, 27 candidates (m=3)", search_heller_m3, ()),
        ("DFS max TU subset, 40 candidates (m=5)", search_polytopal_m5, ()),
        ("cube-orbit canonical masks (d=4)", cube_orbits_d4, (perms,)),
    ]
    backends = [("pure-python", _pykernels)]
    if _ckernels is not None:
        backends.append(("compiled", _ckernels))
    else:
        print("note: compiled kernels not built; showing pure numbers only")

    width = max(len(name) for name, _, _ in workloads)
    header = f"{'workload':<{width}}  " + "  ".join(
        f"{name:>12}" for name, _ in backends)
    if len(backends) == 2:
        header += f"  {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for name, fn, extra in workloads:
        times = []
        for _, backend in backends:
            best = min(
                _timed(fn, (backend,) + extra) for _ in range(args.repeat))
            times.append(best)
        line = f"{name:<{width}}  " + "  ".join(f"{t:>10.4f}s" for t in times)
        if len(times) == 2 and times[1] > 0:
            line += f"  {times[0] / times[1]:>7.1f}x"
        print(line)


def _timed(fn, fn_args):
    start = time.perf_counter()
    fn(*fn_args)
    return time.perf_counter() - start


if __name__ == "__main__":
    main()
