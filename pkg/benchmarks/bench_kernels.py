#!/usr/bin/env python3
"""Benchmark the compiled kernel core against the pure-numpy fallback.

Times the three kernel primitives and a full GPK round at a few group sizes,
then prints one row per (operation, size) with both backends side by side.

Usage: python benchmarks/bench_kernels.py [--repeats 200]
"""

import argparse
import time

import numpy as np

from phasekick.groups import make_group
from phasekick.kernels import available_backends, roots_of_unity
from phasekick.simulate import Oracle, gpk_run
from phasekick.characters import Character


def timeit(fn, repeats):
    # warm up, then best-of-three batches
    fn()
    best = float("inf")
    for _ in range(3):
        t0 = time.perf_counter()
        for _ in range(repeats):
            fn()
        best = min(best, (time.perf_counter() - t0) / repeats)
    return best


def bench_primitives(repeats):
    rows = []
    backends = available_backends()
    for orders in ([12], [24], [8, 8], [12, 12]):
        g = make_group(orders)
        coords = np.ascontiguousarray(g.coords_matrix)
        w = np.asarray(g.pairing_weights, dtype=np.int64)
        L = g.lcm_exponent
        roots = np.ascontiguousarray(roots_of_unity(L))
        rng = np.random.default_rng(0)
        E = backends["pure"].exponent_table(coords, coords, w, L)
        vec = np.ascontiguousarray(
            rng.normal(size=(g.order, 1)) + 1j * rng.normal(size=(g.order, 1)))
        mat = np.ascontiguousarray(
            rng.normal(size=(g.order, g.order)) + 1j * rng.normal(size=(g.order, g.order)))
        f_idx = rng.integers(0, g.order, size=g.order).astype(np.int64)
        add = np.ascontiguousarray(g.addition_table)

        per_backend = {}
        for name, impl in backends.items():
            per_backend[name] = {
                "exponent_table": timeit(lambda: impl.exponent_table(coords, coords, w, L), repeats),
                "phase_matvec": timeit(lambda: impl.phase_apply(E, roots, vec, 1.0), repeats),
                "phase_matmat": timeit(lambda: impl.phase_apply(E, roots, mat, 1.0), repeats),
                "oracle_shift": timeit(lambda: impl.oracle_shift(mat, f_idx, add), repeats),
            }
        for op in ("exponent_table", "phase_matvec", "phase_matmat", "oracle_shift"):
            rows.append((op, f"|G|={g.order}", {n: per_backend[n][op] for n in per_backend}))
    return rows


def bench_gpk_round(repeats):
    rows = []
    rng = np.random.default_rng(1)
    for orders in ([12], [24]):
        g = make_group(orders)
        oracle = Oracle(g, g, rng.integers(0, g.order, size=g.order))
        marker = Character(g.element_at(1))

        def round_once():
            gpk_run(oracle, marker, rng)

        # the active backend is fixed at import; report it for context
        from phasekick.kernels import BACKEND

        rows.append((f"gpk_run ({BACKEND} backend)", f"|G|=|H|={g.order}",
                     {BACKEND: timeit(round_once, max(repeats // 10, 5))}))
    return rows


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeats", type=int, default=200)
    args = parser.parse_args()

    backends = available_backends()
    print(f"available backends: {', '.join(backends)}")
    if len(backends) == 1:
        print("compiled core not built; only the pure backend will be timed")
    print()

    rows = bench_primitives(args.repeats) + bench_gpk_round(args.repeats)
    names = sorted({n for _, _, times in rows for n in times})
    header = f"{'operation':28s} {'size':14s}" + "".join(f"{n:>14s}" for n in names)
    print(header)
    print("-" * len(header))
    for op, size, times in rows:
        cells = ""
        for n in names:
            cells += f"{times[n] * 1e6:12.1f}us" if n in times else f"{'-':>14s}"
        print(f"{op:28s} {size:14s}{cells}")
    if {"pure", "compiled"} <= set(names):
        print()
        print("speedup = pure time / compiled time (per primitive):")
        for op, size, times in rows:
            if {"pure", "compiled"} <= set(times):
                print(f"  {op:26s} {size:12s} {times['pure'] / times['compiled']:6.2f}x")


if __name__ == "__main__":
    main()
