#!/usr/bin/env python3
"""Compare the compiled and pure-Python arithmetic kernels.

Times the three hot kernels on representative workloads (dense rational
convolution, generator-polynomial products, capped multivariate products)
and a small end-to-end assembly, for whichever backends are importable.

Run:  python benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import importlib
import sys
import time
from fractions import Fraction


def load_backends():
    backends = {}
    try:
        backends["compiled"] = importlib.import_module("qmgw._kernels")
    except ImportError:
        pass
    backends["pure"] = importlib.import_module("qmgw._kernels_py")
    return backends


def dense_workload(n=220):
    a = [Fraction(i * 7 - 3, i + 1) for i in range(n)]
    b = [Fraction(5 - i, 2 * i + 3) for i in range(n)]
    return a, b


def qm_workload(size=60):
    import random

    rng = random.Random(7)
    d1 = {
        (rng.randrange(6), rng.randrange(4), rng.randrange(3)): Fraction(
            rng.randrange(-9, 10), rng.randrange(1, 9)
        )
        for _ in range(size)
    }
    d2 = {
        (rng.randrange(6), rng.randrange(4), rng.randrange(3)): Fraction(
            rng.randrange(-9, 10), rng.randrange(1, 9)
        )
        for _ in range(size)
    }
    return d1, d2


def multi_workload(degree=14, nvars=3):
    import itertools

    keys = [
        k
        for k in itertools.product(range(degree + 1), repeat=nvars)
        if sum(k) <= degree
    ]
    d1 = {k: Fraction(sum(k) + 1, 2) for k in keys}
    d2 = {k: Fraction(1, sum(k) + 3) for k in keys}
    return d1, d2, degree


def time_call(fn, *args, repeat=3):
    best = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        dt = time.perf_counter() - t0
        best = dt if best is None else min(best, dt)
    return best


def bench_kernels(backends, repeat):
    rows = []
    a, b = dense_workload()
    d1, d2 = qm_workload()
    m1, m2, cap = multi_workload()
    for name, mod in backends.items():
        rows.append(
            (
                name,
                time_call(mod.conv_trunc, a, b, len(a) - 1, Fraction(0), repeat=repeat),
                time_call(lambda: [mod.exp_mul_dict(d1, d2) for _ in range(50)], repeat=repeat),
                time_call(mod.exp_mul_dict_capped, m1, m2, cap, repeat=repeat),
            )
        )
    return rows


def bench_end_to_end(repeat):
    """Two-point assembly at z-order 8 under each backend (subprocesses,
    since the backend is chosen at import time)."""
    import os
    import subprocess

    script = (
        "import time; t0=time.perf_counter();"
        "from qmgw.npoint import npoint; npoint(2, 8);"
        "print(time.perf_counter()-t0)"
    )
    out = {}
    for name, env_value in (("compiled", "0"), ("pure", "1")):
        env = dict(os.environ, QMGW_PURE=env_value)
        best = None
        for _ in range(repeat):
            proc = subprocess.run(
                [sys.executable, "-c", script],
                capture_output=True,
                text=True,
                env=env,
            )
            if proc.returncode != 0:
                best = None
                break
            dt = float(proc.stdout.strip())
            best = dt if best is None else min(best, dt)
        if best is not None:
            out[name] = best
    return out


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    backends = load_backends()
    print(f"backends available: {', '.join(backends)}")
    rows = bench_kernels(backends, args.repeat)
    print(f"\n{'backend':<10} {'conv_trunc':>12} {'qm products':>12} {'capped dict':>12}")
    for name, t1, t2, t3 in rows:
        print(f"{name:<10} {t1 * 1e3:>10.2f}ms {t2 * 1e3:>10.2f}ms {t3 * 1e3:>10.2f}ms")
    if len(rows) == 2:
        base = {r[0]: r[1:] for r in rows}
        speedups = [
            base["pure"][i] / base["compiled"][i] for i in range(3)
        ]
        print(
            "speedup (pure/compiled): "
            + "  ".join(f"{s:.2f}x" for s in speedups)
        )

    e2e = bench_end_to_end(args.repeat)
    if e2e:
        print("\ntwo-point assembly (z-order 8), per backend:")
        for name, dt in sorted(e2e.items()):
            print(f"  {name:<10} {dt * 1e3:.1f}ms")


if __name__ == "__main__":
    main()
