"""Compiled vs pure-Python kernels on the same inputs.

    python3 benchmarks/bench_kernels.py [--group "S(6)"] [--pairs 20000] [--repeat 3]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from engelgraph import kernels
from engelgraph.catalog import make
from engelgraph.connectivity import engel_digraph
from engelgraph.engel import GAMMA


def best_of(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--group", default="S(6)")
    ap.add_argument("--pairs", type=int, default=20000)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)

    g = make(args.group)
    t = g.table
    rng = np.random.default_rng(0)
    xs = rng.integers(t.order, size=args.pairs).astype(np.int64)
    ys = rng.integers(t.order, size=args.pairs).astype(np.int64)
    perms = np.ascontiguousarray(t.perms, dtype=np.int32)
    csr = engel_digraph(g, GAMMA).csr()
    indptr = np.ascontiguousarray(csr.indptr, dtype=np.int64)
    indices = np.ascontiguousarray(csr.indices, dtype=np.int64)

    names = ["python"] + (["cython"] if kernels.compiled_kernels is not None else [])
    print(f"group {args.group} (order {t.order}), {args.pairs} Engel pairs, graph {len(indptr) - 1} vertices / {len(indices)} edges")
    results = {}
    for name in names:
        k = kernels.get_kernels(name)
        te, lens = best_of(lambda: k.engel_lengths(perms, xs, ys), args.repeat)
        ts, comp = best_of(lambda: k.tarjan_csr(indptr, indices), args.repeat)
        results[name] = (te, ts, np.asarray(lens), np.asarray(comp[0] if isinstance(comp, tuple) else comp))
        print(f"{name:<7} engel_lengths {te * 1e3:9.1f} ms   tarjan_csr {ts * 1e3:9.1f} ms")
    if "cython" in results:
        py, cy = results["python"], results["cython"]
        assert np.array_equal(py[2], cy[2]), "engel_lengths disagree"
        print(f"speedup engel_lengths x{py[0] / cy[0]:.1f}, tarjan_csr x{py[1] / cy[1]:.1f}")
    else:
        print("compiled kernels not built; only the fallback was timed")


if __name__ == "__main__":
    main()
