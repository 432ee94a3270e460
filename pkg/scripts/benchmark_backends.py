#!/usr/bin/env python3
"""Compare the compiled kernels against the pure-Python fallback.

Runs the same seeded workloads through both backends, checks they agree
bit-for-bit, and reports throughput.
"""

import argparse
import time
from fractions import Fraction

import numpy as np

from metaising import _pykernels
from metaising.graphs import generate_random_regular
from metaising.model import EnergyParams, scaled_energy_table

try:
    from metaising import _kernels
except ImportError:
    _kernels = None


def bench(label, fn, *args):
    start = time.perf_counter()
    result = fn(*args)
    elapsed = time.perf_counter() - start
    print(f"  {label:<10} {elapsed * 1e3:10.1f} ms")
    return result, elapsed


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--n", type=int, default=14)
    parser.add_argument("--r", type=int, default=3)
    parser.add_argument("--steps", type=int, default=2_000_000)
    parser.add_argument("--seed", type=int, default=1)
    args = parser.parse_args()

    if _kernels is None:
        print("compiled extension not available; nothing to compare")
        return

    G = generate_random_regular(args.n, args.r, args.seed)
    params = EnergyParams(h=Fraction(1, 2), beta=1.5)
    indptr, indices = G.csr()
    h, beta = float(params.h), params.beta
    target = (1 << G.n) - 1

    print(f"graph: n={G.n}, r={G.r}; chain: {args.steps} steps at beta={beta}")

    print("run_until_hit:")
    res_c, t_c = bench(
        "cython",
        _kernels.run_until_hit,
        indptr, indices, h, beta, 0, target, args.steps, args.seed,
    )
    res_p, t_p = bench(
        "python",
        _pykernels.run_until_hit,
        indptr, indices, h, beta, 0, target, args.steps, args.seed,
    )
    assert res_c == res_p, f"backend mismatch: {res_c} vs {res_p}"
    steps = res_c[0] or args.steps
    print(f"  agree (steps={res_c[0]}, hit={res_c[1]}); speedup {t_p / t_c:.1f}x, "
          f"{steps / t_c / 1e6:.1f} Msteps/s compiled")

    print("stability_sweep:")
    scaled, _ = scaled_energy_table(G, params)
    order = np.argsort(scaled, kind="stable").astype(np.int64)
    v_c, t_c = bench("cython", _kernels.stability_sweep, order, scaled, G.n)
    v_p, t_p = bench("python", _pykernels.stability_sweep, order, scaled, G.n)
    assert np.array_equal(v_c, v_p)
    print(f"  agree ({1 << G.n} states); speedup {t_p / t_c:.1f}x")


if __name__ == "__main__":
    main()
