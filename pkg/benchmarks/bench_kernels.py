"""Compare the compiled kernels with the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat 3]

Kernel timings call both modules directly on identical inputs.  The
end-to-end timings run the same workload in a subprocess with and without
HYPERCONE_PURE_PYTHON=1.
"""
import argparse
import importlib
import os
import subprocess
import sys
import timeit

from hypercone import _pykernels
from hypercone.hyperbolic import random_direction, sample_rng
from hypercone.vamoslab import builtin_vamos

END_TO_END = """
import time
from hypercone import kernels
from hypercone.hyperbolic import HyperbolicInstance, check_hyperbolic_sampled
from hypercone.vamoslab import builtin_vamos
b = builtin_vamos()
t = time.perf_counter(); b.pencil.det(); t_det = time.perf_counter() - t
t = time.perf_counter(); check_hyperbolic_sampled(HyperbolicInstance(b.q, b.e), 1000, 0); t_hyp = time.perf_counter() - t
print(kernels.BACKEND, t_det, t_hyp)
"""


def workloads(b):
    q, h4 = b.q.terms, b.h4.terms
    prod = _pykernels.poly_mul(q, h4)
    lines = []
    for i in range(200):
        v = random_direction(sample_rng(0, i), 4)
        u = b.q.restrict_to_line(b.e, v)
        den = 1
        for c in u:
            den = den * getattr(c, "denominator", 1)
        lines.append([int(c * den) for c in u])
    return {
        "poly_mul q*h4": lambda k: k.poly_mul(q, h4),
        "poly_divexact (q*h4)/h4": lambda k: k.poly_divexact(prod, h4),
        "sturm chains x200": lambda k: [k.upoly_sturm(u) for u in lines],
        "sturm count at 0 x200": lambda k: [k.upoly_variations(k.upoly_sturm(u), 0, 1) for u in lines],
    }


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    try:
        ck = importlib.import_module("hypercone._ckernels")
    except ImportError:
        sys.exit("compiled extension not built; run `pip install -e . --no-build-isolation`")

    print(f"{'kernel':28s} {'cython s':>10s} {'python s':>10s} {'speedup':>8s}")
    for name, fn in workloads(builtin_vamos()).items():
        tc = min(timeit.repeat(lambda: fn(ck), number=1, repeat=args.repeat))
        tp = min(timeit.repeat(lambda: fn(_pykernels), number=1, repeat=args.repeat))
        print(f"{name:28s} {tc:10.4f} {tp:10.4f} {tp / tc:7.2f}x")

    print()
    print(f"{'end to end':28s} {'det s':>10s} {'hyperbolic N=1000 s':>20s}")
    for pure in ("0", "1"):
        env = dict(os.environ, HYPERCONE_PURE_PYTHON=pure, HYPERCONE_THREADS="1")
        out = subprocess.run([sys.executable, "-c", END_TO_END], env=env, capture_output=True,
                             text=True, check=True).stdout.split()
        print(f"{out[0]:28s} {float(out[1]):10.3f} {float(out[2]):20.3f}")


if __name__ == "__main__":
    main()
