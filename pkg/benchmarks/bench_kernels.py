"""Benchmark the compiled polynomial kernel against the pure-Python one.

Both kernels expose the same raw-dict operations; this script times the
hot paths (multiplication, exact division, evaluation) on deterministic
workloads and prints a comparison table.  Run:

    python benchmarks/bench_kernels.py
"""

from __future__ import annotations

import random
import time

from ogzkit import _poly_py
from ogzkit._ratio import QQ

try:
    from ogzkit import _poly_cy
except ImportError:  # compiled kernel not built
    _poly_cy = None


def random_poly(rng: random.Random, nvars: int, degree: int, terms: int) -> dict:
    out: dict = {}
    while len(out) < terms:
        mono = [0] * nvars
        for _ in range(degree):
            mono[rng.randrange(nvars)] += 1
        out[tuple(mono)] = QQ(rng.randint(-99, 99), rng.randint(1, 9))
    return out


def bench(kernel, reps: int, workload) -> float:
    t0 = time.perf_counter()
    for _ in range(reps):
        workload(kernel)
    return (time.perf_counter() - t0) / reps


def main():
    rng = random.Random(20240817)
    nvars = 5
    a = random_poly(rng, nvars, 6, 60)
    b = random_poly(rng, nvars, 6, 60)
    small = random_poly(rng, nvars, 3, 8)
    prod_for_div = _poly_py.p_mul(a, small)

    cases = [
        ("mul 60x60 terms", 5, lambda K: K.p_mul(a, b)),
        ("mul 60x8 terms", 20, lambda K: K.p_mul(a, small)),
        ("divmod (exact)", 10, lambda K: K.p_divmod(prod_for_div, small)),
        ("eval one var", 50, lambda K: K.p_eval_int(a, 0, 7)),
    ]

    kernels = [("pure", _poly_py)]
    if _poly_cy is not None:
        kernels.append(("compiled", _poly_cy))
    else:
        print("compiled kernel unavailable; showing pure only")

    # agreement check before timing
    for name, K in kernels[1:]:
        assert K.p_mul(a, b) == _poly_py.p_mul(a, b), "kernel mismatch: mul"
        assert K.p_divmod(prod_for_div, small) == _poly_py.p_divmod(
            prod_for_div, small
        ), "kernel mismatch: divmod"
        assert K.p_eval_int(a, 0, 7) == _poly_py.p_eval_int(a, 0, 7), (
            "kernel mismatch: eval"
        )
    print("kernels agree on all benchmark workloads")

    width = max(len(c[0]) for c in cases)
    header = f"{'case':<{width}}" + "".join(f"  {n:>12}" for n, _ in kernels)
    if len(kernels) == 2:
        header += f"  {'speedup':>9}"
    print(header)
    for label, reps, fn in cases:
        times = [bench(K, reps, fn) for _, K in kernels]
        row = f"{label:<{width}}" + "".join(f"  {t * 1e3:>10.2f}ms" for t in times)
        if len(times) == 2 and times[1] > 0:
            row += f"  {times[0] / times[1]:>8.2f}x"
        print(row)


if __name__ == "__main__":
    main()
