"""Compare the compiled and pure-Python kernels.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import random
import timeit

from peiffer import _kernels


def workloads(tab, rng):
    words = [[rng.choice((1, -1)) * rng.randint(1, 2) for _ in range(40)] for _ in range(200)]
    elems = None

    def project(k):
        for w in words:
            k.project_letters(w, tab)

    def mul(k):
        nonlocal elems
        elems = elems or [k.project_letters(w, tab) for w in words]
        for a, b in zip(elems, elems[1:]):
            k.series_mul(a, b, tab)
            k.series_inv(a, tab)

    def closure(k):
        gens = [k.project_letters((1,), tab), k.project_letters((2,), tab)]
        k.closure(gens, [], tab, 10 ** 7)

    def reduce(k):
        for w in words:
            k.reduce_letters(w * 3)

    return {"reduce": reduce, "project": project, "mul+inv": mul, "closure": closure}


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    backends = _kernels.available_backends()
    print(f"selected backend: {_kernels.BACKEND}; available: {', '.join(sorted(backends))}")
    for p, d in ((2, 3), (3, 3)):
        tab = _kernels.monomial_table(2, d, p)
        print(f"\nQ(2 generators, p={p}, d={d})")
        print(f"{'kernel':<10}" + "".join(f"{name:>12}" for name in sorted(backends)) + f"{'speedup':>10}")
        for name, fn in workloads(tab, random.Random(0)).items():
            times = {b: min(timeit.repeat(lambda: fn(m), number=1, repeat=args.repeat)) for b, m in backends.items()}
            row = f"{name:<10}" + "".join(f"{times[b] * 1e3:>10.2f}ms" for b in sorted(backends))
            if "cython" in times:
                row += f"{times['python'] / times['cython']:>9.1f}x"
            print(row)


if __name__ == "__main__":
    main()
