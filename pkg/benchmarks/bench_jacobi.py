"""Benchmark the one-sided Jacobi kernel: compiled lane vs pure Python.

Runs both kernels on the same random complex matrices and reports per-call
times and the speedup.  The compiled lane is optional; without it only the
Python lane is timed.

Usage::

    python benchmarks/bench_jacobi.py [--sizes 16,32,64] [--repeats 5]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from tenrol import _jacobi_py

try:
    from tenrol import _jacobi_cy
except ImportError:
    _jacobi_cy = None

EPS = 1e-14
MAX_SWEEPS = 30


def run_kernel(kernel, mat: np.ndarray) -> tuple[float, np.ndarray]:
    cols = np.ascontiguousarray(mat.T.copy())
    vrows = np.eye(mat.shape[1], dtype=np.complex128)
    start = time.perf_counter()
    sweeps = kernel.jacobi_sweeps(cols, vrows, EPS, MAX_SWEEPS)
    elapsed = time.perf_counter() - start
    if sweeps < 0:
        raise RuntimeError("kernel did not converge")
    s = np.sort(np.linalg.norm(cols, axis=1))[::-1]
    return elapsed, s


def bench(size: int, repeats: int, rng: np.random.Generator) -> None:
    mats = [
        rng.standard_normal((size, size)) + 1j * rng.standard_normal((size, size))
        for _ in range(repeats)
    ]
    py_times = []
    cy_times = []
    for mat in mats:
        t_py, s_py = run_kernel(_jacobi_py, mat)
        py_times.append(t_py)
        if _jacobi_cy is not None:
            t_cy, s_cy = run_kernel(_jacobi_cy, mat)
            cy_times.append(t_cy)
            worst = np.max(np.abs(s_py - s_cy)) / max(1.0, s_py[0])
            if worst > 1e-10:
                raise RuntimeError(f"lane disagreement {worst:.3e} at size {size}")
    py_ms = 1e3 * np.median(py_times)
    line = f"{size:>5}  python {py_ms:10.2f} ms"
    if cy_times:
        cy_ms = 1e3 * np.median(cy_times)
        line += f"  compiled {cy_ms:10.2f} ms  speedup {py_ms / cy_ms:6.1f}x"
    print(line)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", default="16,32,64", help="comma-separated matrix sizes")
    parser.add_argument("--repeats", type=int, default=5, help="matrices per size (median)")
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]
    rng = np.random.default_rng(args.seed)
    backend = "compiled available" if _jacobi_cy is not None else "python only"
    print(f"one-sided Jacobi kernel benchmark ({backend})")
    print(f"{'n':>5}  {'per call':>12}")
    for size in sizes:
        bench(size, args.repeats, rng)


if __name__ == "__main__":
    main()
