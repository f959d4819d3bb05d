"""Genus-two Siegel cusp forms as Maass lifts of index-1 Jacobi cusp forms.

The lift attached to ``phi = sum c(n, r) q^n zeta^r`` of weight ``k`` has
coefficients

    a(n, r, m) = sum_{d | gcd(n, r, m)} d^(k-1) c((4nm - r^2) / d^2),

where ``c(D)`` is the coefficient of ``phi`` at discriminant ``D``.

:func:`theta_oracle_chi10` computes the product of the squares of the ten
even theta constants by finite lattice sums; it is an independent check of
the weight-10 lift up to one scalar.
"""

from __future__ import annotations

import threading
from functools import lru_cache
from math import gcd, isqrt

import numpy as np

from ._parallel import ordered_map
from .errors import NotPositiveDefinite, PrecisionExceeded, RadiusTooSmall
from .jacobi import JacobiTable, cusp_generator
from .reduction import BinaryHalfIntegral, as_form, is_positive_definite, reduce


def _divisors(g: int):
    small = [d for d in range(1, isqrt(g) + 1) if g % d == 0]
    return sorted(set(small + [g // d for d in small]))


class SiegelLift:
    """Coefficient oracle ``T -> a(T)`` of the Maass lift of an index-1 cusp form."""

    def __init__(self, source: JacobiTable, weight: int | None = None):
        if source.index != 1:
            raise ValueError("the Maass lift needs an index-1 source")
        if source.kind != "cusp":
            raise ValueError("the Maass lift needs a cusp form")
        self.weight = source.weight if weight is None else weight
        if self.weight % 2:
            raise ValueError("only even weights lift to Siegel cusp forms here")
        self.source = source
        self._disc = source.discriminant_map()
        # every D <= 4 nmax is represented by some (n, r) with r in {0, 1} and n <= nmax
        self.max_discriminant = 4 * source.nmax
        self._cache: dict = {}
        self._lock = threading.Lock()

    def c_disc(self, D: int):
        if D > self.max_discriminant:
            raise PrecisionExceeded(
                f"c({D}) needs source precision beyond nmax = {self.source.nmax}")
        return self._disc.get(D, 0)

    def _compute(self, T: BinaryHalfIntegral):
        D = T.discriminant
        k1 = self.weight - 1
        total = 0
        for d in _divisors(T.content):
            total += d ** k1 * self.c_disc(D // (d * d))
        return total

    def coeff(self, T):
        T = as_form(T)
        if not is_positive_definite(T):
            raise NotPositiveDefinite(f"{tuple(T)} is not positive definite")
        key = reduce(T)[0]
        val = self._cache.get(key)
        if val is None:
            val = self._compute(key)
            with self._lock:
                self._cache[key] = val
        return val

    __call__ = coeff

    def scaled(self, s) -> SiegelLift:
        return SiegelLift(self.source.scale(s), self.weight)

    def is_zero(self) -> bool:
        return self.source.is_zero()


def maass_coeff(L: SiegelLift, T):
    return L.coeff(T)


def lift_of_weight(weight: int, nmax: int) -> SiegelLift:
    """Lift of the built-in index-1 cusp form of weight 10 or 12."""
    return SiegelLift(cusp_generator(weight, nmax))


def fourier_jacobi(L: SiegelLift, m: int, nmax: int, threads: int = 1) -> JacobiTable:
    """The index-``m`` Fourier-Jacobi coefficient: ``c(n, r) = a(n, r, m)``."""
    if m < 1:
        raise ValueError("m must be >= 1")
    if 4 * nmax * m > L.max_discriminant:
        raise PrecisionExceeded(
            f"slice of index {m} to n <= {nmax} needs c(D) for D up to {4 * nmax * m}")

    def row(n):
        out = {}
        rmax = isqrt(max(4 * n * m - 1, 0))
        for r in range(-rmax, rmax + 1):
            if 4 * n * m - r * r > 0:
                v = L.coeff((n, r, m))
                if v:
                    out[(n, r)] = v
        return out

    coeffs = {}
    for part in ordered_map(row, range(1, nmax + 1), threads):
        coeffs.update(part)
    return JacobiTable(L.weight, m, nmax, coeffs, "cusp")


# theta constants


EVEN_CHARACTERISTICS = tuple(
    (a, b)
    for a in ((0, 0), (0, 1), (1, 0), (1, 1))
    for b in ((0, 0), (0, 1), (1, 0), (1, 1))
    if (a[0] * b[0] + a[1] * b[1]) % 2 == 0
)


def required_radius(n_max: int, m_max: int) -> int:
    """Smallest ``R`` such that ``|x_i| <= R`` covers every lattice term below the box."""
    # a term x + a/2 contributes v^2/2 to the diagonal; v^2/2 <= n_max needs |x| <= sqrt(2 n_max) + 1/2
    return isqrt(2 * max(n_max, m_max)) + 1


def _theta_terms(char, n_max: int, m_max: int, radius: int):
    """Terms of one theta constant as ``(8n, 4r, 8m, sign)`` with their exponents in the box."""
    (a1, a2), (b1, b2) = char
    phase = -1 if (a1 * b1 + a2 * b2) % 4 == 2 else 1  # i^(a.b) for even characteristics
    terms = []
    for x1 in range(-radius, radius + 1):
        u1 = 2 * x1 + a1  # 2 v1
        N = u1 * u1  # 8 * v1^2 / 2
        if N > 8 * n_max:
            continue
        for x2 in range(-radius, radius + 1):
            u2 = 2 * x2 + a2
            M = u2 * u2
            if M > 8 * m_max:
                continue
            sign = phase * (-1 if (x1 * b1 + x2 * b2) % 2 else 1)
            terms.append((N, u1 * u2, M, sign))  # 4 * v1 v2 = u1 u2
    return terms


@lru_cache(maxsize=8)
def _chi10_grid(n_max: int, m_max: int, radius: int):
    """Dense table of the theta product on the box ``n <= n_max, m <= m_max``.

    Axes are ``(8n, 4r + offset, 8m)``; coefficients are exact Python integers.
    """
    NB, MB = 8 * n_max, 8 * m_max
    RB = 4 * (n_max + m_max)  # |r| <= n + m on positive semidefinite sums
    shape = (NB + 1, 2 * RB + 1, MB + 1)
    grid = np.zeros(shape, dtype=object)
    grid[0, RB, 0] = 1
    for char in EVEN_CHARACTERISTICS:
        terms = _theta_terms(char, n_max, m_max, radius)
        for _ in range(2):
            new = np.zeros(shape, dtype=object)
            for N, R, M, s in terms:
                src = grid[: NB + 1 - N, max(0, -R): 2 * RB + 1 - max(0, R), : MB + 1 - M]
                dst = new[N:, max(0, R): 2 * RB + 1 + min(0, R), M:]
                if s > 0:
                    dst += src
                else:
                    dst -= src
            grid = new
    return grid, RB


def theta_oracle_chi10(T, lattice_radius: int | None = None):
    """Coefficient of ``prod_{even m} theta_m(Z)^2`` at ``T`` (no normalization).

    ``lattice_radius`` bounds ``|x_i|`` in each theta sum; it defaults to
    ``tr T + 2``. A radius that would drop terms contributing inside the
    needed exponent box raises :class:`RadiusTooSmall`.
    """
    T = as_form(T)
    n, r, m = T
    if not is_positive_definite(T):
        return 0
    if lattice_radius is None:
        lattice_radius = T.trace + 2
    need = required_radius(n, m)
    if lattice_radius < need:
        raise RadiusTooSmall(f"radius {lattice_radius} < {need} needed for {tuple(T)}")
    # one shared grid per diagonal box; the radius beyond `need` cannot change it
    size = max(n, m)
    grid, RB = _chi10_grid(size, size, need)
    return int(grid[8 * n, 4 * r + RB, 8 * m])


def theta_oracle_table(Ts, lattice_radius: int | None = None) -> dict:
    """Oracle values for many ``T`` sharing one grid."""
    Ts = [as_form(T) for T in Ts]
    size = max(max(T.n, T.m) for T in Ts)
    need = required_radius(size, size)
    if lattice_radius is not None and lattice_radius < need:
        raise RadiusTooSmall(f"radius {lattice_radius} < {need}")
    grid, RB = _chi10_grid(size, size, need)
    return {T: int(grid[8 * T.n, 4 * T.r + RB, 8 * T.m]) if is_positive_definite(T) else 0 for T in Ts}
