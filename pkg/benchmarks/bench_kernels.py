"""Compare the compiled and numpy Euler-Maclaurin kernels.

    python3 benchmarks/bench_kernels.py [--repeat 5]

Each case sums one zeta-jet circle (64 nodes) at a given height, which is
the unit of work behind a single Z^(n)(t) evaluation.
"""
import argparse
import time

import numpy as np

from hardyz import kernels
from hardyz.bernoulli import B2K_OVER_FACT
from hardyz.zeta import estimate_em_params

HEIGHTS = (50.0, 500.0, 5000.0)


def _case(t, nodes=64, radius=0.2):
    s = complex(0.5, t)
    pts = s + radius * np.exp(2j * np.pi * np.arange(nodes) / nodes)
    cfg = estimate_em_params(complex(0.5 - radius, t + radius))
    return pts, cfg.em_cutoff, B2K_OVER_FACT[: cfg.em_depth]


def _time(fn, args, repeat):
    best = np.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn(*args, True)
        best = min(best, time.perf_counter() - t0)
    return best, out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    compiled = kernels.em_sum if kernels.BACKEND == "cython" else None
    print(f"default backend: {kernels.BACKEND}")
    print(f"{'t':>8} {'M':>6} {'python ms':>10} {'cython ms':>10} {'speedup':>8} {'max diff':>10}")
    for t in HEIGHTS:
        case = _case(t)
        tp, vp = _time(kernels.em_sum_python, case, args.repeat)
        if compiled is None:
            print(f"{t:8.0f} {case[1]:6d} {tp * 1e3:10.3f} {'n/a':>10} {'n/a':>8} {'n/a':>10}")
            continue
        tc, vc = _time(compiled, case, args.repeat)
        diff = float(np.max(np.abs(vp - vc)))
        print(f"{t:8.0f} {case[1]:6d} {tp * 1e3:10.3f} {tc * 1e3:10.3f} {tp / tc:8.1f} {diff:10.2e}")


if __name__ == "__main__":
    main()
