"""Pure-Python convolution kernels (reference and fallback backend).

Coefficients are arbitrary Python numbers (``int`` or ``Fraction``); the
kernels never coerce them, so exactness is whatever the inputs carry.

A two-variable table is a ``dict`` mapping a row key ``n`` to a pair
``(lo, row)`` where ``row[j]`` is the coefficient at column ``lo + j``.
"""

from fractions import Fraction


def conv1d(a, b, n):
    """First ``n`` coefficients of the product of two dense coefficient lists."""
    out = [0] * n
    lb = len(b)
    for i in range(min(len(a), n)):
        ai = a[i]
        if not ai:
            continue
        stop = min(lb, n - i)
        for j in range(stop):
            bj = b[j]
            if bj:
                out[i + j] += ai * bj
    return out


def inv1d(u, n):
    """First ``n`` coefficients of ``1/u`` for a dense list with ``u[0] != 0``."""
    u0 = u[0]
    w = [0] * n
    if n == 0:
        return w
    inv0 = u0 if u0 in (1, -1) else Fraction(1) / u0
    w[0] = inv0
    lu = len(u)
    for k in range(1, n):
        s = 0
        for j in range(1, min(k, lu - 1) + 1):
            uj = u[j]
            if uj:
                s += uj * w[k - j]
        w[k] = -s * inv0
    return w


def _row_bounds(a, b, nlo, nhi):
    bounds = {}
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
                if lo < cur[0]:
                    cur[0] = lo
                if hi > cur[1]:
                    cur[1] = hi
    return bounds


def conv2d(a, b, nlo, nhi):
    """Rows ``nlo <= n < nhi`` of the product of two row tables."""
    bounds = _row_bounds(a, b, nlo, nhi)
    out = {n: (lo, [0] * (hi - lo + 1)) for n, (lo, hi) in bounds.items()}
    for n1, (lo1, row1) in a.items():
        for n2, (lo2, row2) in b.items():
            n = n1 + n2
            if n < nlo or n >= nhi or not row1 or not row2:
                continue
            olo, acc = out[n]
            base = lo1 + lo2 - olo
            for i, x in enumerate(row1):
                if not x:
                    continue
                k = base + i
                for j, y in enumerate(row2):
                    if y:
                        acc[k + j] += x * y
    return out
