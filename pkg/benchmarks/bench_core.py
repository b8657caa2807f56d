#!/usr/bin/env python3
"""Compare the compiled quadrature core against the pure-Python fallback.

Runs the same workloads on both backends and reports timings and the
largest cross-backend deviation.  Usage:

    python benchmarks/bench_core.py [--repeat N]
"""

import argparse
import time

import numpy as np

from epskk import _core, kk
from epskk import models as M


def graphene_models(k=1.0):
    p = M.GrapheneParams(k=k, v_fermi=1.0, alpha=M.ALPHA_DEFAULT, c=300.0)
    return M.GrapheneLongitudinal(p), M.GrapheneTransverse(p)


def workload_engine_raw():
    """Bare engine on a moderately oscillatory integrand."""
    vals = []
    for a in (3.0, 5.0, 9.0):
        v, *_ = _core.adaptive_quad(
            lambda x, a=a: np.exp(-x) * np.cos(a * x) / (1.0 + x * x),
            [0.0, 2.0, 20.0], abs_tol=1e-13, rel_tol=1e-11)
        vals.append(v)
    return vals


def workload_kk_sweep():
    """Dispersion-relation reconstructions on a coarse grid, both models."""
    L, T = graphene_models()
    grid = np.geomspace(0.02, 50.0, 24)
    grid = grid[np.abs(grid - 1.0) >= 0.05]
    out = []
    for model in (L, T):
        for w in grid:
            out.append(kk.kk_re_from_im(model, float(w)).reconstructed)
            out.append(kk.kk_im_from_re(model, float(w)).reconstructed)
    return out


def workload_imag_axis():
    L, T = graphene_models()
    out = []
    for model in (L, T):
        for xi in np.geomspace(0.05, 50.0, 20):
            out.append(kk.kk_imag_axis(model, float(xi)).reconstructed)
    return out


WORKLOADS = [
    ("raw engine", workload_engine_raw),
    ("kk real-axis sweep", workload_kk_sweep),
    ("imaginary-axis sweep", workload_imag_axis),
]


def run(repeat):
    if "compiled" not in _core.available_backends():
        print("compiled backend not built; nothing to compare")
        return
    print(f"{'workload':<24} {'python':>10} {'compiled':>10} {'speedup':>8}   max |diff|")
    for name, fn in WORKLOADS:
        times = {}
        results = {}
        for backend in ("python", "compiled"):
            _core.set_backend(backend)
            fn()  # warm up
            best = np.inf
            for _ in range(repeat):
                t0 = time.perf_counter()
                results[backend] = fn()
                best = min(best, time.perf_counter() - t0)
            times[backend] = best
        diff = max(abs(complex(a) - complex(b))
                   for a, b in zip(results["python"], results["compiled"]))
        print(f"{name:<24} {times['python'] * 1e3:>8.2f}ms "
              f"{times['compiled'] * 1e3:>8.2f}ms "
              f"{times['python'] / times['compiled']:>7.2f}x   {diff:.2e}")
    _core.set_backend("compiled")


if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    run(ap.parse_args().repeat)
