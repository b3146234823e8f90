"""Time the compiled kernels against the NumPy fallback.

Usage: python3 benchmarks/bench_kernels.py [--repeat 5]
"""

from __future__ import annotations

import argparse
import timeit

import numpy as np

from curvelab import _kernels_py as pure

try:
    from curvelab import _kernels as compiled
except ImportError:  # extension not built
    compiled = None


def _cases(rng):
    x = rng.uniform(-2.2, 2.2, size=64)
    evals = np.sort(rng.standard_normal((64, 100)), axis=-1)
    w = np.abs(rng.standard_normal((64, 100, 100))) ** 2
    return {
        "hermite_tail(64 pts, N=400)": lambda m: m.hermite_tail(x, 400, 400),
        "hermite_tail(1 pt, N=2000)": lambda m: m.hermite_tail(x[:1], 2000, 2000),
        "curvature_sums(64 x N=100)": lambda m: m.curvature_sums(evals, w),
    }


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=5)
    a = p.parse_args(argv)
    rng = np.random.default_rng(0)
    print(f"{'kernel':32s} {'numpy [ms]':>11s} {'cython [ms]':>12s} {'speedup':>8s} {'max |diff|':>11s}")
    for name, fn in _cases(rng).items():
        t_py = min(timeit.repeat(lambda: fn(pure), number=1, repeat=a.repeat)) * 1e3
        if compiled is None:
            print(f"{name:32s} {t_py:11.3f} {'n/a':>12s}")
            continue
        t_cy = min(timeit.repeat(lambda: fn(compiled), number=1, repeat=a.repeat)) * 1e3
        r_py, r_cy = fn(pure), fn(compiled)
        if isinstance(r_py, tuple):
            diff = max(float(np.max(np.abs(np.asarray(u) - np.asarray(v)))) for u, v in zip(r_py, r_cy))
        else:
            diff = float(np.max(np.abs(np.asarray(r_py) - np.asarray(r_cy))))
        print(f"{name:32s} {t_py:11.3f} {t_cy:12.3f} {t_py / t_cy:8.1f} {diff:11.2e}")


if __name__ == "__main__":
    main()
