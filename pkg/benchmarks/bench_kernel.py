"""Compare the compiled and pure-Python straightening kernels on cold caches.

Usage: python3 benchmarks/bench_kernel.py [--repeat 3]
"""

from __future__ import annotations

import argparse
import random
import time

from qcanon import _kernel_py

try:
    from qcanon import _kernel
except ImportError:
    _kernel = None


def random_mono(rng, n, d):
    A = [0] * (n * n)
    for _ in range(d):
        A[rng.randrange(n * n)] += 1
    return tuple(A)


def workload_products(mod, n=3, d=8, count=400, seed=0):
    rng = random.Random(seed)
    s = mod.Straightener(n)
    pairs = [(random_mono(rng, n, d), random_mono(rng, n, d)) for _ in range(count)]
    out = 0
    for A, B in pairs:
        out += len(s.mono_mul(A, B))
    return out


def workload_bar(mod, n=3, d=9, count=400, seed=1):
    rng = random.Random(seed)
    s = mod.Straightener(n)
    return sum(len(s.bar_mono(random_mono(rng, n, d))) for _ in range(count))


def workload_n4(mod, d=8, count=200, seed=2):
    rng = random.Random(seed)
    s = mod.Straightener(4)
    return sum(len(s.bar_mono(random_mono(rng, 4, d))) for _ in range(count))


WORKLOADS = {"products n=3 deg 8+8": workload_products, "bar n=3 deg 9": workload_bar, "bar n=4 deg 8": workload_n4}


def timed(fn, mod, repeat):
    best = float("inf")
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn(mod)
        best = min(best, time.perf_counter() - t0)
    return best, result


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    backends = [("python", _kernel_py)] + ([("cython", _kernel)] if _kernel is not None else [])
    if _kernel is None:
        print("compiled kernel not built; timing the pure-Python kernel only")
    print(f"{'workload':<24}" + "".join(f"{name:>12}" for name, _ in backends) + ("   speedup" if len(backends) == 2 else ""))
    for label, fn in WORKLOADS.items():
        times = []
        results = set()
        for _, mod in backends:
            t, r = timed(fn, mod, args.repeat)
            times.append(t)
            results.add(r)
        if len(results) != 1:
            raise SystemExit(f"backends disagree on {label}: {results}")
        line = f"{label:<24}" + "".join(f"{t:>11.3f}s" for t in times)
        if len(times) == 2:
            line += f"   {times[0] / times[1]:.2f}x"
        print(line)


if __name__ == "__main__":
    main()
