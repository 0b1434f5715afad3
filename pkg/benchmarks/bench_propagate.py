#!/usr/bin/env python3
"""Benchmark the propagator's numba kernel against the numpy fallback.

The workload is the manufactured-solution march that dominates the
package's runtime (verification suites, convergence studies, the CLI
``propagate`` command).  Both backends run the identical RK4 loop; the
numba path is selected by default when importable, the numpy path via
``QNLSE_NUMBA=0`` or ``backend="numpy"``.

Usage: python benchmarks/bench_propagate.py [--steps N] [--nx N] [--repeat R]
"""

import argparse
import statistics
import time
import warnings

import numpy as np

from qnlse._kernels import HAVE_NUMBA, available_backends
from qnlse.integrators import GridSpec, manufactured_field, propagate, sample_field
from qnlse.solutions import FreeParticleSpec, SolutionKind


def run_once(backend: str, grid: GridSpec, spec: FreeParticleSpec):
    exact = manufactured_field(SolutionKind.NEW, spec)
    initial = sample_field(exact, grid, 0.0)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        start = time.perf_counter()
        frames = propagate(SolutionKind.NEW, initial, spec.q, spec.m, spec.hbar,
                           boundary=exact, backend=backend)
        elapsed = time.perf_counter() - start
    return elapsed, frames


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--steps", type=int, default=1000)
    parser.add_argument("--nx", type=int, default=401)
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    # mild deformation: the fractional-power path runs at every point
    # while the fields stay O(1) over the whole march
    spec = FreeParticleSpec(q=1.02)
    grid = GridSpec(-2.0, 2.0, args.nx, 2e-5, args.steps)
    short = GridSpec(-2.0, 2.0, args.nx, 2e-5, 100)
    print(f"workload: {args.steps} RK4 steps x {args.nx} points "
          f"({4 * args.steps} stencil sweeps), repeat={args.repeat}")
    print(f"available backends: {', '.join(available_backends())}")

    timings = {}
    reference = None
    for backend in available_backends():
        if backend == "numba":
            warm, _ = run_once(backend, grid, spec)  # includes JIT compile
            print(f"numba first call (compile included): {warm:.3f}s")
        runs = []
        for _ in range(args.repeat):
            elapsed, _ = run_once(backend, grid, spec)
            runs.append(elapsed)
        timings[backend] = runs
        _, frames = run_once(backend, short, spec)
        final = frames[-1].values
        if reference is None:
            reference = final
        else:
            gap = float(np.max(np.abs(final - reference)))
            print(f"cross-backend max |difference| (100-step run): {gap:.3e}")
        best = min(runs)
        med = statistics.median(runs)
        rate = args.steps * (args.nx - 2) / best / 1e6
        print(f"{backend:>6}: best {best:.4f}s  median {med:.4f}s  "
              f"({rate:.1f} M point-updates/s)")

    if HAVE_NUMBA and "numba" in timings:
        speedup = min(timings["numpy"]) / min(timings["numba"])
        print(f"speedup (numpy best / numba best): {speedup:.1f}x")


if __name__ == "__main__":
    main()
