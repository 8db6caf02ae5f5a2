"""Compare the compiled and pure-Python F_p row reduction kernels.

    python3 benchmarks/bench_kernels.py [--sizes 8,16,32,64] [--repeat 5]
"""

import argparse
import random
import timeit

from rootlie import _fp_py

try:
    from rootlie import _fp as _fp_c
except ImportError:
    _fp_c = None


def random_rows(n, p, rng):
    return [[rng.randrange(p) for _ in range(n)] for _ in range(n)]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", default="8,16,32,64")
    ap.add_argument("--primes", default="2,5,101")
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    rng = random.Random(0)
    print(f"{'n':>4} {'p':>4} {'python ms':>10} {'cython ms':>10} {'speedup':>8}")
    for n in map(int, args.sizes.split(",")):
        for p in map(int, args.primes.split(",")):
            mats = [random_rows(n, p, rng) for _ in range(args.repeat)]
            t_py = min(timeit.repeat(lambda: [_fp_py.rref(m, n, p) for m in mats], number=1, repeat=3))
            # both backends must agree before timings mean anything
            if _fp_c is not None:
                assert all(_fp_c.rref(m, n, p) == _fp_py.rref(m, n, p) for m in mats)
                t_c = min(timeit.repeat(lambda: [_fp_c.rref(m, n, p) for m in mats], number=1, repeat=3))
                print(f"{n:>4} {p:>4} {1e3 * t_py / args.repeat:>10.3f} {1e3 * t_c / args.repeat:>10.3f} "
                      f"{t_py / t_c:>7.1f}x")
            else:
                print(f"{n:>4} {p:>4} {1e3 * t_py / args.repeat:>10.3f} {'n/a':>10} {'-':>8}")


if __name__ == "__main__":
    main()
