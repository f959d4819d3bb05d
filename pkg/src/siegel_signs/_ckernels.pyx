# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled convolution kernels.

Same contracts as ``_pykernels``; coefficients stay generic Python objects
so exact ``int``/``Fraction`` arithmetic is preserved.
"""

from fractions import Fraction


def conv1d(list a, list b, Py_ssize_t n):
    cdef list out = [0] * n
    cdef Py_ssize_t i, j, stop, la = len(a), lb = len(b)
    cdef object ai, bj
    if la > n:
        la = n
    for i in range(la):
        ai = a[i]
        if not ai:
            continue
        stop = n - i
        if stop > lb:
            stop = lb
        for j in range(stop):
            bj = b[j]
            if bj:
                out[i + j] = out[i + j] + ai * bj
    return out


def inv1d(list u, Py_ssize_t n):
    cdef list w = [0] * n
    cdef Py_ssize_t k, j, top, lu = len(u)
    cdef object s, uj, inv0, u0
    if n == 0:
        return w
    u0 = u[0]
    inv0 = u0 if u0 in (1, -1) else Fraction(1) / u0
    w[0] = inv0
    for k in range(1, n):
        s = 0
        top = k
        if top > lu - 1:
            top = lu - 1
        for j in range(1, top + 1):
            uj = u[j]
            if uj:
                s = s + uj * w[k - j]
        w[k] = -s * inv0
    return w


cdef void _acc_row(list acc, Py_ssize_t base, list row1, list row2):
    cdef Py_ssize_t i, j, k, l1 = len(row1), l2 = len(row2)
    cdef object x, y
    for i in range(l1):
        x = row1[i]
        if not x:
            continue
        k = base + i
        for j in range(l2):
            y = row2[j]
            if y:
                acc[k + j] = acc[k + j] + x * y


def conv2d(dict a, dict b, Py_ssize_t nlo, Py_ssize_t nhi):
    cdef dict bounds = {}
    cdef dict out = {}
    cdef Py_ssize_t n1, n2, n, lo1, lo2, lo, hi
    cdef list row1, row2, cur, acc
    for n1, (lo1, row1) in a.items():
        if not row1:
            continue
        for n2, (lo2, row2) in b.items():
            if not row2:
                continue
            n = n1 + n2
            if n < nlo or n >= nhi:
                continue
            lo = lo1 + lo2
            hi = lo + len(row1) + len(row2) - 2
            cur = bounds.get(n)
            if cur is None:
                bounds[n] = [lo, hi]
            else:
                if lo < <Py_ssize_t>cur[0]:
                    cur[0] = lo
                if hi > <Py_ssize_t>cur[1]:
                    cur[1] = hi
    for n, cur in bounds.items():
        out[n] = (cur[0], [0] * (<Py_ssize_t>cur[1] - <Py_ssize_t>cur[0] + 1))
    for n1, (lo1, row1) in a.items():
        if not row1:
            continue
        for n2, (lo2, row2) in b.items():
            n = n1 + n2
            if n < nlo or n >= nhi or not row2:
                continue
            lo, acc = out[n]
            _acc_row(acc, lo1 + lo2 - lo, row1, row2)
    return out
