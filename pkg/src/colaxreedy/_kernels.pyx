# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the kernels in ``_kernels_py``.

Signatures and results are identical to the pure-Python module.
"""

import numpy as np
cimport numpy as cnp

cnp.import_array()


cdef inline long long _mod(long long a, long long p) nogil:
    a %= p
    if a < 0:
        a += p
    return a


cdef long long _inv(long long a, long long p):
    cdef long long result = 1, base = a % p, e = p - 2
    while e > 0:
        if e & 1:
            result = result * base % p
        base = base * base % p
        e >>= 1
    return result


def rref_mod_p(rows, Py_ssize_t ncols, long long p):
    cdef Py_ssize_t nrows = len(rows)
    if nrows == 0 or ncols == 0:
        return [], []
    cdef cnp.ndarray[cnp.int64_t, ndim=2] arr = np.array(rows, dtype=np.int64).reshape(nrows, ncols)
    cdef long long[:, :] m = arr
    cdef Py_ssize_t r = 0, c, i, k, piv
    cdef long long inv, f, tmp
    pivots = []
    for i in range(nrows):
        for k in range(ncols):
            m[i, k] = _mod(m[i, k], p)
    for c in range(ncols):
        if r == nrows:
            break
        piv = -1
        for i in range(r, nrows):
            if m[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for k in range(ncols):
                tmp = m[r, k]
                m[r, k] = m[piv, k]
                m[piv, k] = tmp
        inv = _inv(m[r, c], p)
        if inv != 1:
            for k in range(c, ncols):
                m[r, k] = m[r, k] * inv % p
        for i in range(nrows):
            if i != r:
                f = m[i, c]
                if f != 0:
                    for k in range(c, ncols):
                        if m[r, k] != 0:
                            m[i, k] = _mod(m[i, k] - f * m[r, k], p)
        pivots.append(c)
        r += 1
    return [[int(v) for v in arr[i]] for i in range(r)], pivots


def finset_limit(sizes, edges):
    cdef Py_ssize_t n = len(sizes)
    if n == 0:
        return [()]
    cdef Py_ssize_t ne = len(edges)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] sz = np.array(sizes, dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] esrc = np.zeros(ne, dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] edst = np.zeros(ne, dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] eoff = np.zeros(ne, dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] elev = np.zeros(ne, dtype=np.int64)
    flat = []
    cdef Py_ssize_t e, k
    for e in range(ne):
        i, j, table = edges[e]
        esrc[e] = i
        edst[e] = j
        eoff[e] = len(flat)
        elev[e] = i if i > j else j
        flat.extend(table)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] tab = np.array(flat if flat else [0], dtype=np.int64)
    for k in range(n):
        if sz[k] == 0:
            return []
    cdef cnp.ndarray[cnp.int64_t, ndim=1] x = np.zeros(n, dtype=np.int64)
    cdef long long[:] xv = x
    cdef long long[:] szv = sz
    cdef long long[:] es = esrc
    cdef long long[:] ed = edst
    cdef long long[:] eo = eoff
    cdef long long[:] el = elev
    cdef long long[:] tv = tab
    out = []
    cdef Py_ssize_t pos = 0
    cdef bint ok
    xv[0] = 0
    while True:
        ok = True
        for e in range(ne):
            if el[e] == pos:
                if tv[eo[e] + xv[es[e]]] != xv[ed[e]]:
                    ok = False
                    break
        if ok:
            if pos == n - 1:
                out.append(tuple([xv[k] for k in range(n)]))
            else:
                pos += 1
                xv[pos] = 0
                continue
        # advance
        while True:
            xv[pos] += 1
            if xv[pos] < szv[pos]:
                break
            if pos == 0:
                return out
            pos -= 1
