"""Benchmark the compiled path-simulation kernel against the numpy fallback.

Usage: python benchmarks/bench_pathsim.py

Times the two implementations of the feedback-coupled Euler recursion (the
case the backends actually own; the beta = 0 shortcut bypasses both) on
shared precomputed increments, checks they agree to rounding error, and
also reports end-to-end simulate_paths timings where noise generation is a
common cost.
"""

import time

import numpy as np

from voctrl import (
    ControlProblem,
    FractionalKernel,
    TimeGrid,
    gaussian_increments,
    optimal_control_poly,
    simulate_paths,
)
from voctrl import _pathsim_py
from voctrl.simulate import DEFAULT_BACKEND, _kernel_table, _pathsim

WORKLOADS = [
    # (n_paths, dt)
    (20_000, 0.05),
    (20_000, 0.01),
    (5_000, 0.005),
    (50_000, 0.01),
]


def main():
    if _pathsim is None:
        print("compiled backend not built; only the numpy fallback is available")
        print(f"default backend: {DEFAULT_BACKEND}")
        return

    kernel = FractionalKernel(T=2.0, exponent=0.3)
    problem = ControlProblem(alpha=1.0, beta=1.0, sigma=1.0, a1=1.0, a2=1.0, x0=0.0, kernel=kernel)
    control = optimal_control_poly(problem, 20, 50)

    print("inner loop on shared increments:")
    print(f"{'n_paths':>8} {'n_steps':>8} {'numpy [s]':>10} {'cython [s]':>10} {'speedup':>8} {'max diff':>10}")
    blocks = {"numpy": _pathsim_py.simulate_block, "cython": _pathsim.simulate_block}
    for n_paths, dt in WORKLOADS:
        grid = TimeGrid(T=2.0, dt=dt)
        ktab = _kernel_table(problem, grid)
        ctl = np.array([control(t) for t in grid.nodes[:-1]])
        dw = gaussian_increments(123, n_paths, grid.n_steps, dt)
        times, results = {}, {}
        for name, fn in blocks.items():
            out = np.empty((n_paths, grid.n_steps + 1))
            t0 = time.perf_counter()
            fn(ktab, ctl, problem.x0, problem.alpha, problem.beta, problem.sigma, dt, dw, out)
            times[name] = time.perf_counter() - t0
            results[name] = out
        diff = float(np.abs(results["numpy"] - results["cython"]).max())
        scale = float(np.abs(results["cython"]).max())
        assert diff <= 1e-9 * max(1.0, scale), f"backends disagree: {diff}"
        print(
            f"{n_paths:>8} {grid.n_steps:>8} {times['numpy']:>10.3f} {times['cython']:>10.3f} "
            f"{times['numpy'] / times['cython']:>8.2f} {diff:>10.2e}"
        )

    print("\nend to end (includes shared noise generation):")
    print(f"{'n_paths':>8} {'n_steps':>8} {'numpy [s]':>10} {'cython [s]':>10} {'speedup':>8}")
    for n_paths, dt in WORKLOADS:
        grid = TimeGrid(T=2.0, dt=dt)
        times = {}
        for backend in ("numpy", "cython"):
            t0 = time.perf_counter()
            simulate_paths(problem, control, grid, n_paths, seed=123, backend=backend)
            times[backend] = time.perf_counter() - t0
        print(
            f"{n_paths:>8} {grid.n_steps:>8} {times['numpy']:>10.3f} {times['cython']:>10.3f} "
            f"{times['numpy'] / times['cython']:>8.2f}"
        )


if __name__ == "__main__":
    main()
