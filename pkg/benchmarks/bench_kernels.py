"""Compare the compiled kernels with the numpy fallback.

    python benchmarks/bench_kernels.py [--repeat R]

Kernel timings call both modules directly. The end-to-end row runs an
automorphism count in a subprocess per backend, since the backend is chosen
once at import.
"""

import argparse
import os
import subprocess
import sys
import timeit

import numpy as np

from sandwich_is import _kernels_py, core
from sandwich_is.sandwich import context_k

try:
    from sandwich_is import _kernels_c
except ImportError:
    _kernels_c = None

COUNT_SNIPPET = (
    "import time\n"
    "from sandwich_is import oracle\n"
    "from sandwich_is.sandwich import context_k\n"
    "t = oracle.cayley(context_k({n}, {k}))\n"
    "s = time.perf_counter(); oracle.count_automorphisms(t)\n"
    "print(time.perf_counter() - s)\n"
)


def best(fn, repeat: int) -> float:
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def kernel_cases(n: int, k: int):
    images, e, lookup = core.image_matrix(n), context_k(n, k).e.images, core.index_lookup(n)
    table = _kernels_py.product_table(images, e, lookup)
    m = len(table)
    colors = np.random.default_rng(0).integers(0, 8, size=m)
    perm = np.arange(m)
    return {
        "product_table": lambda mod: mod.product_table(images, e, lookup),
        "check_morphism": lambda mod: mod.check_morphism(table, table, perm),
        "row_hashes": lambda mod: mod.row_hashes(table, colors, 8),
    }


def end_to_end(n: int, k: int, pure: bool) -> float:
    env = dict(os.environ)
    if pure:
        env["SANDWICH_IS_PURE"] = "1"
    else:
        env.pop("SANDWICH_IS_PURE", None)
    out = subprocess.run([sys.executable, "-c", COUNT_SNIPPET.format(n=n, k=k)],
                         env=env, capture_output=True, text=True, check=True)
    return float(out.stdout)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=20)
    parser.add_argument("--skip-n4", action="store_true", help="skip the slow (4,2) count")
    args = parser.parse_args()
    if _kernels_c is None:
        sys.exit("compiled extension not built; run pip install --no-build-isolation -e .")

    print(f"{'case':<28}{'cython (ms)':>14}{'numpy (ms)':>14}{'ratio':>9}")
    for n, k in [(3, 1), (4, 2)]:
        for name, call in kernel_cases(n, k).items():
            c = best(lambda: call(_kernels_c), args.repeat) * 1e3
            p = best(lambda: call(_kernels_py), args.repeat) * 1e3
            print(f"{name + f' n={n}':<28}{c:>14.3f}{p:>14.3f}{p / c:>9.2f}")
    for n, k in [(3, 1)] + ([] if args.skip_n4 else [(4, 2)]):
        c, p = end_to_end(n, k, pure=False) * 1e3, end_to_end(n, k, pure=True) * 1e3
        label = f"count_automorphisms ({n},{k})"
        print(f"{label:<28}{c:>14.1f}{p:>14.1f}{p / c:>9.2f}")


if __name__ == "__main__":
    main()
