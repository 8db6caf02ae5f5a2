# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled row reduction over F_p; same contract as ``_fp_py``."""

from libc.stdlib cimport malloc, free


cdef inline long _inv(long a, long p):
    cdef long r = 1, b = a % p, e = p - 2
    while e > 0:
        if e & 1:
            r = (r * b) % p
        b = (b * b) % p
        e >>= 1
    return r


def rref(rows, Py_ssize_t ncols, long p):
    cdef Py_ssize_t nrows = len(rows)
    cdef Py_ssize_t i, j, c, r = 0, piv
    cdef long f, inv, t
    cdef long *m = NULL
    pivots = []
    if nrows == 0 or ncols == 0:
        return [], pivots
    m = <long *> malloc(nrows * ncols * sizeof(long))
    if m == NULL:
        raise MemoryError()
    try:
        for i in range(nrows):
            row = rows[i]
            for j in range(ncols):
                t = row[j] % p
                if t < 0:
                    t += p
                m[i * ncols + j] = t
        for c in range(ncols):
            if r == nrows:
                break
            piv = -1
            for i in range(r, nrows):
                if m[i * ncols + c] != 0:
                    piv = i
                    break
            if piv < 0:
                continue
            if piv != r:
                for j in range(ncols):
                    t = m[r * ncols + j]
                    m[r * ncols + j] = m[piv * ncols + j]
                    m[piv * ncols + j] = t
            inv = _inv(m[r * ncols + c], p)
            if inv != 1:
                for j in range(c, ncols):
                    m[r * ncols + j] = (m[r * ncols + j] * inv) % p
            for i in range(nrows):
                if i == r:
                    continue
                f = m[i * ncols + c]
                if f == 0:
                    continue
                for j in range(c, ncols):
                    m[i * ncols + j] = (m[i * ncols + j] - f * m[r * ncols + j]) % p
                    if m[i * ncols + j] < 0:
                        m[i * ncols + j] += p
            pivots.append(c)
            r += 1
        out = [[m[i * ncols + j] for j in range(ncols)] for i in range(r)]
    finally:
        free(m)
    return out, pivots


def rank(rows, Py_ssize_t ncols, long p):
    return len(rref(rows, ncols, p)[1])
