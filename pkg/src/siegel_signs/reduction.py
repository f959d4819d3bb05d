"""Binary half-integral matrices ``T = [[n, r/2], [r/2, m]]`` and their reduction.

Reduction is Gauss reduction extended by the determinant ``-1`` flip, so each
``GL2(Z)``-orbit of positive definite ``T`` has exactly one representative with
``0 <= r <= n <= m``. This is the right notion of equivalence for even weight,
where ``a(T[U]) = det(U)^k a(T) = a(T)``.
"""

from __future__ import annotations

from typing import NamedTuple

from .errors import NotPositiveDefinite, NotUnimodular

Matrix2 = tuple  # ((a, b), (c, d))

IDENTITY = ((1, 0), (0, 1))


class BinaryHalfIntegral(NamedTuple):
    n: int
    r: int
    m: int

    @property
    def discriminant(self) -> int:
        return 4 * self.n * self.m - self.r * self.r

    @property
    def trace(self) -> int:
        return self.n + self.m

    @property
    def content(self) -> int:
        from math import gcd

        return gcd(gcd(self.n, self.r), self.m)

    def sort_key(self):
        return (self.trace, self.n, self.r)

    def as_dict(self) -> dict:
        return {"n": self.n, "r": self.r, "m": self.m}


def as_form(T) -> BinaryHalfIntegral:
    return T if isinstance(T, BinaryHalfIntegral) else BinaryHalfIntegral(*T)


def is_positive_definite(T) -> bool:
    n, r, m = T
    return n >= 1 and 4 * n * m - r * r > 0


def leading_minors_positive(T) -> bool:
    """Sylvester's criterion on ``2T = [[2n, r], [r, 2m]]``."""
    n, r, m = T
    return 2 * n > 0 and (2 * n) * (2 * m) - r * r > 0


def _matmul(A, B):
    return (
        (A[0][0] * B[0][0] + A[0][1] * B[1][0], A[0][0] * B[0][1] + A[0][1] * B[1][1]),
        (A[1][0] * B[0][0] + A[1][1] * B[1][0], A[1][0] * B[0][1] + A[1][1] * B[1][1]),
    )


def det(U) -> int:
    return U[0][0] * U[1][1] - U[0][1] * U[1][0]


def act_unimodular(T, U) -> BinaryHalfIntegral:
    """``T[U] = U^t T U``."""
    if abs(det(U)) != 1:
        raise NotUnimodular(f"det {det(U)} for U = {U}")
    n, r, m = T
    (a, b), (c, d) = U
    # columns (a, c) and (b, d) of U, evaluated on the quadratic form
    n2 = n * a * a + r * a * c + m * c * c
    m2 = n * b * b + r * b * d + m * d * d
    r2 = 2 * n * a * b + r * (a * d + b * c) + 2 * m * c * d
    return BinaryHalfIntegral(n2, r2, m2)


def reduce(T):
    """Return ``(T_red, U)`` with ``T_red = T[U]`` and ``0 <= r <= n <= m``."""
    T = as_form(T)
    if not is_positive_definite(T):
        raise NotPositiveDefinite(f"{tuple(T)} is not positive definite")
    n, r, m = T
    U = IDENTITY
    while True:
        if abs(r) > n:
            k = (n - r) // (2 * n)  # brings r into (-n, n]
            S = ((1, k), (0, 1))
            n, r, m = act_unimodular((n, r, m), S)
            U = _matmul(U, S)
        elif n > m:
            S = ((0, 1), (1, 0))
            n, r, m = m, r, n
            U = _matmul(U, S)
        else:
            break
    if r < 0:
        S = ((1, 0), (0, -1))
        r = -r
        U = _matmul(U, S)
    return BinaryHalfIntegral(n, r, m), U


def is_reduced(T) -> bool:
    n, r, m = T
    return 0 <= r <= n <= m and n >= 1


def enumerate_reduced(trace_max: int) -> list:
    """All reduced ``T > 0`` with ``n + m <= trace_max`` ordered by ``(trace, n, r)``."""
    out = []
    for t in range(2, trace_max + 1):
        for n in range(1, t // 2 + 1):
            m = t - n
            for r in range(0, n + 1):
                out.append(BinaryHalfIntegral(n, r, m))
    return out
