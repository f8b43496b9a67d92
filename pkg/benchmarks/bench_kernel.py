"""Benchmark the compiled kernel against the pure-Python fallback.

Run:  python3 benchmarks/bench_kernel.py
The relation verifier and character expansions spend their time in these
sparse Laurent-dict operations, so this is the whole hot path.
"""

import random
import time
from fractions import Fraction

from shiftedq import _kernel_py

try:
    from shiftedq import _kernel_cy
except ImportError:
    _kernel_cy = None


def make_data(rng, n_pairs, size):
    out = []
    for _ in range(n_pairs):
        a = {rng.randint(-30, 30): Fraction(rng.randint(-9, 9) or 1, rng.randint(1, 5))
             for _ in range(size)}
        b = {rng.randint(-30, 30): Fraction(rng.randint(-9, 9) or 1, rng.randint(1, 5))
             for _ in range(size)}
        out.append((a, b))
    return out


def bench(kernel, data, reps=1):
    t0 = time.perf_counter()
    acc = 0
    for _ in range(reps):
        for a, b in data:
            acc += len(kernel.poly_mul(a, b))
            acc += len(kernel.poly_add(a, b))
            acc += len(kernel.poly_sub(a, b))
    return time.perf_counter() - t0, acc


def bench_end_to_end(reps=1):
    """Relation verification timing under each backend (subprocess so the
    import-time backend selection is exercised)."""
    import os
    import subprocess
    import sys

    code = (
        "import time; from shiftedq.modrep import build_module, check_relations; "
        "t0=time.time(); m=build_module('eval_sl2', {'gamma_exp':1,'shift':0}, 8, 4); "
        "r=check_relations(m); print(f'{time.time()-t0:.3f}', r['ok'])"
    )
    for env_val, label in (("0", "compiled"), ("1", "pure")):
        env = dict(os.environ, SHIFTEDQ_PURE=env_val)
        out = subprocess.run([sys.executable, "-c", code], env=env,
                             capture_output=True, text=True)
        print(f"  relation suite ({label:8s}): {out.stdout.strip()} s")


def main():
    rng = random.Random(12345)
    print("sparse Laurent kernels, 4000 pairs x {mul, add, sub}")
    for size, label in ((3, "small (3 terms)"), (12, "medium (12 terms)"), (40, "large (40 terms)")):
        data = make_data(rng, 4000 // (1 if size < 40 else 4), size)
        tp, cp = bench(_kernel_py, data)
        line = f"  {label:18s} python {tp*1000:8.1f} ms"
        if _kernel_cy is not None:
            tc, cc = bench(_kernel_cy, data)
            assert cc == cp
            line += f"   cython {tc*1000:8.1f} ms   speedup x{tp/tc:.2f}"
        print(line)
    if _kernel_cy is None:
        print("  (compiled kernel not built; pure fallback only)")
    print("end-to-end:")
    bench_end_to_end()


if __name__ == "__main__":
    main()
