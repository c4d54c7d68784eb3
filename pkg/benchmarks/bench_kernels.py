"""Compare the compiled kernels with the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat N]

Both backends are run on the same seeded inputs; results must agree
exactly before timings are reported.
"""

from __future__ import annotations

import argparse
import random
import timeit

from colaxreedy import _kernels_py

try:
    from colaxreedy import _kernels as _compiled
except ImportError:
    _compiled = None


def rref_inputs(rng, n, p):
    return [([[rng.randrange(p) for _ in range(n)] for _ in range(n)], n, p) for _ in range(20)]


def limit_inputs(rng, n, size):
    out = []
    for _ in range(10):
        sizes = [size] * n
        edges = [(i, i + 1, [rng.randrange(size) for _ in range(size)]) for i in range(0, n - 1, 2)]
        out.append((sizes, edges))
    return out


CASES = [
    ("rref 16x16 mod 2", "rref_mod_p", lambda rng: rref_inputs(rng, 16, 2)),
    ("rref 48x48 mod 2", "rref_mod_p", lambda rng: rref_inputs(rng, 48, 2)),
    ("rref 32x32 mod 5", "rref_mod_p", lambda rng: rref_inputs(rng, 32, 5)),
    ("finset limit 6 nodes size 4", "finset_limit", lambda rng: limit_inputs(rng, 6, 4)),
    ("finset limit 8 nodes size 4", "finset_limit", lambda rng: limit_inputs(rng, 8, 4)),
]


def main(argv=None):
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    if _compiled is None:
        print("compiled kernels not built; only the Python fallback is available")
    print(f"{'case':32} {'python ms':>10} {'cython ms':>10} {'speedup':>8}")
    for label, fn, make in CASES:
        inputs = make(random.Random(args.seed))
        py = getattr(_kernels_py, fn)

        def run_py():
            return [py(*x) for x in inputs]

        t_py = min(timeit.repeat(run_py, number=1, repeat=args.repeat)) * 1000
        if _compiled is None:
            print(f"{label:32} {t_py:10.2f} {'-':>10} {'-':>8}")
            continue
        cy = getattr(_compiled, fn)

        def run_cy():
            return [cy(*x) for x in inputs]

        if [_norm(r) for r in run_py()] != [_norm(r) for r in run_cy()]:
            raise SystemExit(f"{label}: backends disagree")
        t_cy = min(timeit.repeat(run_cy, number=1, repeat=args.repeat)) * 1000
        print(f"{label:32} {t_py:10.2f} {t_cy:10.2f} {t_py / t_cy:7.1f}x")


def _norm(r):
    if isinstance(r, tuple):
        return tuple(_norm(x) for x in r)
    if isinstance(r, list):
        return [_norm(x) for x in r]
    return r


if __name__ == "__main__":
    main()
