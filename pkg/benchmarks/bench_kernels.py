"""Compare the compiled and pure Python tableau-counting kernels.

    python3 benchmarks/bench_kernels.py [--repeat 3]

Both backends must agree on every case; timings are best of ``--repeat``.
"""
import argparse
import random
import time

from schubsep import _kernels_py
from schubsep.perm import Permutation

try:
    from schubsep import _kernels
except ImportError:
    _kernels = None


def partitions(n, cap=None):
    cap = n if cap is None else cap
    if n == 0:
        yield ()
        return
    for first in range(min(n, cap), 0, -1):
        for rest in partitions(n - first, first):
            yield (first,) + rest


def workload(n, count, seed):
    """Seeded permutations of [1, n] with every shape of size l(u)."""
    rng = random.Random(seed)
    jobs = []
    for _ in range(count):
        vals = list(range(1, n + 1))
        rng.shuffle(vals)
        u = Permutation(1, vals)
        size = sum(1 for a in range(n) for b in range(a + 1, n) if vals[a] > vals[b])
        jobs.extend((u, shape) for shape in partitions(size) if len(shape) < n and shape[0] < n)
    return jobs


CASES = [
    ("S6, 200 perms, all shapes", workload(6, 200, 1)),
    ("S7, 100 perms, all shapes", workload(7, 100, 2)),
    ("S8, 40 perms, all shapes", workload(8, 40, 3)),
]


def run(kernel, jobs):
    return sum(kernel.count_word_tableaux(u.values, u.start, shape) for u, shape in jobs)


def best(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return out, min(times)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    print(f"{'case':38s} {'classes':>8s} {'python':>10s} {'cython':>10s} {'speedup':>8s}")
    for name, jobs in CASES:
        n_py, t_py = best(lambda: run(_kernels_py, jobs), args.repeat)
        if _kernels is None:
            print(f"{name:38s} {n_py:8d} {t_py:10.4f} {'-':>10s} {'-':>8s}")
            continue
        n_cy, t_cy = best(lambda: run(_kernels, jobs), args.repeat)
        if n_py != n_cy:
            raise SystemExit(f"backends disagree on {name}: {n_py} vs {n_cy}")
        print(f"{name:38s} {n_py:8d} {t_py:10.4f} {t_cy:10.4f} {t_py / t_cy:7.1f}x")


if __name__ == "__main__":
    main()
