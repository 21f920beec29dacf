"""Pure-Python twins of the compiled kernels (same contracts, same results)."""

from __future__ import annotations

import numpy as np


def _engel_one(x, y, yinv) -> int:
    def comm(z):
        zinv = [0] * len(z)
        for i, a in enumerate(z):
            zinv[a] = i
        # z^-1 y^-1 z y under "apply left factor first"
        return tuple(y[z[yinv[a]]] for a in zinv)

    ident = tuple(range(len(x)))
    hare = comm(x)
    step = 1
    if hare == ident:
        return 1
    tort = hare
    power, lam = 1, 0
    while True:
        if power == lam:
            tort = hare
            power *= 2
            lam = 0
        hare = comm(hare)
        step += 1
        lam += 1
        if hare == ident:
            return step
        if hare == tort:
            return 0


def engel_lengths(perms, xs, ys, nthreads: int = 1) -> np.ndarray:
    rows = [tuple(r) for r in np.asarray(perms).tolist()]
    out = np.zeros(len(xs), dtype=np.int32)
    inv_cache: dict[int, tuple] = {}
    for k, (xi, yi) in enumerate(zip(np.asarray(xs).tolist(), np.asarray(ys).tolist())):
        y = rows[yi]
        yinv = inv_cache.get(yi)
        if yinv is None:
            lst = [0] * len(y)
            for i, a in enumerate(y):
                lst[a] = i
            yinv = inv_cache[yi] = tuple(lst)
        out[k] = _engel_one(rows[xi], y, yinv)
    return out


def tarjan_csr(indptr, indices):
    indptr = np.asarray(indptr).tolist()
    indices = np.asarray(indices).tolist()
    n = len(indptr) - 1
    comp = [-1] * n
    index = [-1] * n
    low = [0] * n
    onstack = [False] * n
    stack: list[int] = []
    counter = 0
    ncomp = 0
    for root in range(n):
        if index[root] >= 0:
            continue
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        onstack[root] = True
        call = [(root, indptr[root])]
        while call:
            v, e = call[-1]
            if e < indptr[v + 1]:
                call[-1] = (v, e + 1)
                w = indices[e]
                if index[w] < 0:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    onstack[w] = True
                    call.append((w, indptr[w]))
                elif onstack[w] and index[w] < low[v]:
                    low[v] = index[w]
            else:
                call.pop()
                if call:
                    u = call[-1][0]
                    if low[v] < low[u]:
                        low[u] = low[v]
                if low[v] == index[v]:
                    while True:
                        w = stack.pop()
                        onstack[w] = False
                        comp[w] = ncomp
                        if w == v:
                            break
                    ncomp += 1
    return np.array(comp, dtype=np.int64), ncomp
