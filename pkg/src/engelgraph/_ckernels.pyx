# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled hot loops: Engel-word evaluation on permutation rows and Tarjan SCC."""

import numpy as np
cimport numpy as cnp
from libc.stdlib cimport malloc, free
from libc.string cimport memcpy
from cython.parallel cimport prange, parallel

cnp.import_array()


cdef inline void _compose(const int* a, const int* b, int* out, Py_ssize_t d) noexcept nogil:
    cdef Py_ssize_t i
    for i in range(d):
        out[i] = b[a[i]]


cdef inline void _invert(const int* a, int* out, Py_ssize_t d) noexcept nogil:
    cdef Py_ssize_t i
    for i in range(d):
        out[a[i]] = <int>i


cdef inline bint _is_identity(const int* a, Py_ssize_t d) noexcept nogil:
    cdef Py_ssize_t i
    for i in range(d):
        if a[i] != i:
            return False
    return True


cdef inline bint _equal(const int* a, const int* b, Py_ssize_t d) noexcept nogil:
    cdef Py_ssize_t i
    for i in range(d):
        if a[i] != b[i]:
            return False
    return True


cdef inline void _comm(const int* z, const int* y, const int* yinv, int* out,
                       int* t1, int* t2, Py_ssize_t d) noexcept nogil:
    # out = z^-1 y^-1 z y
    _invert(z, t1, d)
    _compose(t1, yinv, t2, d)
    _compose(t2, z, t1, d)
    _compose(t1, y, out, d)


cdef int _engel_one(const int* x, const int* y, int* buf, Py_ssize_t d) noexcept nogil:
    """First n >= 1 with [x,_n y] = 1, or 0 when the iteration cycles away from 1."""
    cdef int* yinv = buf
    cdef int* hare = buf + d
    cdef int* tort = buf + 2 * d
    cdef int* nxt = buf + 3 * d
    cdef int* t1 = buf + 4 * d
    cdef int* t2 = buf + 5 * d
    cdef int* tmp
    cdef long power = 1, lam = 0
    cdef int step = 1
    _invert(y, yinv, d)
    _comm(x, y, yinv, hare, t1, t2, d)
    if _is_identity(hare, d):
        return 1
    memcpy(tort, hare, d * sizeof(int))
    while True:
        if power == lam:
            memcpy(tort, hare, d * sizeof(int))
            power *= 2
            lam = 0
        _comm(hare, y, yinv, nxt, t1, t2, d)
        tmp = hare
        hare = nxt
        nxt = tmp
        step += 1
        lam += 1
        if _is_identity(hare, d):
            return step
        if _equal(hare, tort, d):
            return 0


def engel_lengths(int[:, ::1] perms, cnp.int64_t[::1] xs, cnp.int64_t[::1] ys,
                  int nthreads=1):
    """For each pair k: least n >= 1 with [x_k,_n y_k] = 1, else 0."""
    cdef Py_ssize_t m = xs.shape[0]
    cdef Py_ssize_t d = perms.shape[1]
    cdef Py_ssize_t k
    cdef int* buf
    out = np.zeros(m, dtype=np.int32)
    cdef cnp.int32_t[::1] o = out
    if m == 0:
        return out
    if nthreads < 1:
        nthreads = 1
    with nogil, parallel(num_threads=nthreads):
        buf = <int*> malloc(sizeof(int) * 6 * (d + 1))
        for k in prange(m, schedule="dynamic", chunksize=256):
            o[k] = _engel_one(&perms[xs[k], 0], &perms[ys[k], 0], buf, d)
        free(buf)
    return out


def tarjan_csr(cnp.int64_t[::1] indptr, cnp.int64_t[::1] indices):
    """Iterative Tarjan.  Component ids are assigned in emission order,
    which is a reverse topological order of the condensation."""
    cdef Py_ssize_t n = indptr.shape[0] - 1
    comp_arr = np.full(n, -1, dtype=np.int64)
    index_arr = np.full(n, -1, dtype=np.int64)
    low_arr = np.zeros(n, dtype=np.int64)
    onstack_arr = np.zeros(n, dtype=np.uint8)
    stack_arr = np.zeros(n, dtype=np.int64)
    cstack_arr = np.zeros(n, dtype=np.int64)
    cpos_arr = np.zeros(n, dtype=np.int64)
    cdef cnp.int64_t[::1] comp = comp_arr
    cdef cnp.int64_t[::1] index = index_arr
    cdef cnp.int64_t[::1] low = low_arr
    cdef cnp.uint8_t[::1] onstack = onstack_arr
    cdef cnp.int64_t[::1] stack = stack_arr
    cdef cnp.int64_t[::1] cstack = cstack_arr
    cdef cnp.int64_t[::1] cpos = cpos_arr
    cdef Py_ssize_t sp = 0, csp = 0, counter = 0, ncomp = 0
    cdef Py_ssize_t root, v, w, e
    with nogil:
        for root in range(n):
            if index[root] >= 0:
                continue
            index[root] = counter
            low[root] = counter
            counter += 1
            stack[sp] = root
            sp += 1
            onstack[root] = 1
            cstack[csp] = root
            cpos[csp] = indptr[root]
            csp += 1
            while csp > 0:
                v = cstack[csp - 1]
                e = cpos[csp - 1]
                if e < indptr[v + 1]:
                    cpos[csp - 1] = e + 1
                    w = indices[e]
                    if index[w] < 0:
                        index[w] = counter
                        low[w] = counter
                        counter += 1
                        stack[sp] = w
                        sp += 1
                        onstack[w] = 1
                        cstack[csp] = w
                        cpos[csp] = indptr[w]
                        csp += 1
                    elif onstack[w] and index[w] < low[v]:
                        low[v] = index[w]
                else:
                    csp -= 1
                    if csp > 0:
                        w = cstack[csp - 1]
                        if low[v] < low[w]:
                            low[w] = low[v]
                    if low[v] == index[v]:
                        while True:
                            sp -= 1
                            w = stack[sp]
                            onstack[w] = 0
                            comp[w] = ncomp
                            if w == v:
                                break
                        ncomp += 1
    return comp_arr, ncomp
