"""Compare the compiled kernels with the numpy fallback.

Usage: python3 benchmarks/bench_kernels.py [--points 65536] [--repeat 5]
"""
import argparse
import json
import sys
import timeit

import numpy as np

from bernlab import _kernels_py

try:
    from bernlab import _core
except ImportError:  # extension not built
    _core = None


def cases(n_points, seed):
    rng = np.random.default_rng(seed)
    t = 2 * np.pi * np.arange(n_points) / n_points
    z = 0.999 * np.exp(1j * t)
    coeffs = rng.standard_normal(513) + 1j * rng.standard_normal(513)
    log2exp = np.arange(16, dtype=np.int64)
    lac = rng.standard_normal(16) + 0j
    zeros = 0.95 * np.exp(2j * np.pi * rng.random(256)) * np.sqrt(rng.random(256))
    return {
        "horner deg 512": ("horner_eval", (coeffs, z)),
        "lacunary 2^0..2^15": ("lacunary_eval", (log2exp, lac, z)),
        "blaschke m=256": ("blaschke_eval", (zeros.astype(np.complex128), z)),
    }


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--points", type=int, default=1 << 16)
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--json", action="store_true", help="print results as JSON")
    args = ap.parse_args(argv)

    rows = []
    for name, (fn, fargs) in cases(args.points, args.seed).items():
        py = getattr(_kernels_py, fn)
        t_py = min(timeit.repeat(lambda: py(*fargs), number=1, repeat=args.repeat))
        row = {"kernel": name, "python_s": t_py, "compiled_s": None, "speedup": None, "max_rel_diff": None}
        if _core is not None:
            cc = getattr(_core, fn)
            t_c = min(timeit.repeat(lambda: cc(*fargs), number=1, repeat=args.repeat))
            (v1, d1), (v2, d2) = py(*fargs), cc(*fargs)
            scale = max(np.abs(v1).max(), np.abs(d1).max(), 1.0)
            diff = max(np.abs(v1 - v2).max(), np.abs(d1 - d2).max()) / scale
            row.update(compiled_s=t_c, speedup=t_py / t_c, max_rel_diff=float(diff))
        rows.append(row)

    if args.json:
        json.dump(rows, sys.stdout, indent=2)
        print()
        return 0
    print(f"points={args.points} repeat={args.repeat} compiled={'yes' if _core else 'no'}")
    print(f"{'kernel':<22}{'python [ms]':>13}{'compiled [ms]':>15}{'speedup':>10}{'rel diff':>11}")
    for r in rows:
        c = "-" if r["compiled_s"] is None else f"{1e3 * r['compiled_s']:.2f}"
        s = "-" if r["speedup"] is None else f"{r['speedup']:.1f}x"
        d = "-" if r["max_rel_diff"] is None else f"{r['max_rel_diff']:.1e}"
        print(f"{r['kernel']:<22}{1e3 * r['python_s']:>13.2f}{c:>15}{s:>10}{d:>11}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
