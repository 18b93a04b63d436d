"""Compare the compiled and pure-Python kernels.

    python benchmarks/bench_kernels.py [--sizes 8 16 32] [--repeat 5]

Prints best-of-N wall time per (kernel, field, n) and the speedup.  Both
backends are first checked to agree on every input.
"""

import argparse
import random
import timeit

from hadpow import _pykernels

try:
    from hadpow import _ckernels
except ImportError:
    _ckernels = None

FIELDS = {"Z": 0, "GF(10007)": 10007, "GF(2^61-1)": 2**61 - 1}


def _random_flat(rng, n, p):
    if p:
        return [rng.randrange(p) for _ in range(n * n)]
    return [rng.randint(-9, 9) for _ in range(n * n)]


def _diagonal_flat(rng, n, p):
    # powers coincide for diagonal matrices, so power_scan runs to r_max
    vals = [rng.randint(1, 9) for _ in range(n)]
    return [vals[i] if i == j else 0 for i in range(n) for j in range(n)]


def _best(fn, repeat):
    number = max(1, int(0.05 / max(timeit.timeit(fn, number=1), 1e-7)))
    return min(timeit.repeat(fn, number=number, repeat=repeat)) / number


def run(sizes, repeat):
    rng = random.Random(0)
    print(f"{'kernel':<11}{'field':<12}{'n':>4}{'python':>12}{'cython':>12}{'speedup':>9}")
    for n in sizes:
        for label, p in FIELDS.items():
            a, b = _random_flat(rng, n, p), _random_flat(rng, n, p)
            d = _diagonal_flat(rng, n, p)
            cases = {
                "matmul": lambda mod, a=a, b=b, p=p: mod.matmul(a, b, n, n, n, p),
                "power_scan": lambda mod, d=d, p=p: mod.power_scan(d, n, n + 1, p),
            }
            for name, call in cases.items():
                py = _best(lambda: call(_pykernels), repeat)
                if _ckernels is None:
                    print(f"{name:<11}{label:<12}{n:>4}{py * 1e3:>10.3f}ms{'n/a':>12}{'':>9}")
                    continue
                assert call(_ckernels) == call(_pykernels), (name, label, n)
                cy = _best(lambda: call(_ckernels), repeat)
                print(f"{name:<11}{label:<12}{n:>4}{py * 1e3:>10.3f}ms{cy * 1e3:>10.3f}ms{py / cy:>8.1f}x")


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", type=int, nargs="+", default=[4, 8, 16, 32])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    if _ckernels is None:
        print("compiled kernels not built; timing the Python fallback only")
    run(args.sizes, args.repeat)


if __name__ == "__main__":
    main()
