#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-numpy fallback.

Times the two hot paths (Hermitian Jacobi eigensolve, convex-roof pair
descent) plus the tau3 pipeline that sits on top of the eigensolver.

Usage: python benchmarks/bench_backends.py [--repeat N]
"""

import argparse
import time

import numpy as np

import decolab
from decolab import backend
from decolab.channels import evolve_analytic
from decolab.convexroof import _random_isometry, _round_robin
from decolab.linalg import hermitian_eigen
from decolab.measures import tau3


def time_call(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_eigh(repeat):
    rng = np.random.default_rng(1)
    g = rng.standard_normal((8, 8)) + 1j * rng.standard_normal((8, 8))
    h = (g + g.conj().T) / 2

    def run():
        for _ in range(200):
            hermitian_eigen(h)

    return time_call(run, repeat) / 200


def bench_tau3(repeat):
    rho = evolve_analytic("w", "depolarizing", 0.08)

    def run():
        for _ in range(20):
            tau3(rho, family="w")

    return time_call(run, repeat) / 20


def bench_roof_sweep(repeat):
    rho = evolve_analytic("ghz", "pauli-x", 0.2)
    w, v = hermitian_eigen(rho)
    keep = w > 1e-12
    a = v[:, keep] * np.sqrt(w[keep])
    m, r = 16, int(keep.sum())
    rounds = _round_robin(m)

    def run():
        iso = _random_isometry(m, r, seed=0, restart=1)
        phi = np.ascontiguousarray(iso @ a.T)
        backend.pair_descend(phi, iso, rounds, max_sweeps=5, ftol=0.0)

    return time_call(run, repeat) / 5


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=3,
                        help="timing repetitions per case (best is kept)")
    args = parser.parse_args()

    cases = [
        ("8x8 Hermitian eigensolve", bench_eigh),
        ("tau3 of a full-rank state", bench_tau3),
        ("roof pair-descent sweep (m=16)", bench_roof_sweep),
    ]

    timings = {}
    for name in decolab.backend_available():
        backend.select(name)
        timings[name] = [fn(args.repeat) for _, fn in cases]
    backend.select("auto")

    names = list(timings)
    header = f"{'kernel':35s}" + "".join(f"{n:>14s}" for n in names)
    if len(names) == 2:
        header += f"{'speedup':>10s}"
    print(header)
    print("-" * len(header))
    for i, (label, _) in enumerate(cases):
        row = f"{label:35s}"
        for n in names:
            row += f"{timings[n][i] * 1e6:12.1f}us"
        if len(names) == 2:
            row += f"{timings['python'][i] / timings['native'][i]:9.1f}x"
        print(row)


if __name__ == "__main__":
    main()
