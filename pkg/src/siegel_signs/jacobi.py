"""Jacobi forms of scalar index on ``SL2(Z) x Z^2`` as coefficient tables.

A form ``phi(tau, z) = sum c(n, r) q^n zeta^r`` is stored as the finite
map ``(n, r) -> c(n, r)`` for ``0 <= n <= nmax``. Weak forms may carry
coefficients with ``4nm - r^2 >= -m^2``; cusp forms only with
``n >= 1`` and ``4nm - r^2 > 0``.

The weak generators are built from theta quotients, which need a small
two-variable series type (:class:`BiSeries`) on fractional lattices in both
``q`` and ``zeta``.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Mapping

from ._parallel import chunked_ranges, ordered_map, resolve_threads
from .errors import AllTaylorVanish, TruncationInsufficient
from .kernels import conv2d
from .series import QExpansion, delta, eta, normalize, parse_rational, rational_str


def _lcm(a, b):
    return a // gcd(a, b) * b


def _to_rows(coeffs: Mapping):
    """``{(n, r): c}`` -> kernel row layout ``{n: (rmin, [c...])}``."""
    by_n = {}
    for (n, r), c in coeffs.items():
        by_n.setdefault(n, {})[r] = c
    rows = {}
    for n, row in by_n.items():
        lo, hi = min(row), max(row)
        rows[n] = (lo, [row.get(r, 0) for r in range(lo, hi + 1)])
    return rows


def _from_rows(rows):
    out = {}
    for n, (lo, row) in rows.items():
        for j, c in enumerate(row):
            if c:
                out[(n, lo + j)] = c
    return out


def _convolve(a: Mapping, b: Mapping, nlo: int, nhi: int, threads: int = 1) -> dict:
    ra, rb = _to_rows(a), _to_rows(b)
    threads = resolve_threads(threads)
    if threads == 1:
        return _from_rows(conv2d(ra, rb, nlo, nhi))
    out = {}
    for part in ordered_map(lambda span: conv2d(ra, rb, span[0], span[1]),
                            chunked_ranges(nlo, nhi, threads), threads):
        out.update(_from_rows(part))
    return dict(sorted(out.items()))


class BiSeries:
    """Truncated series in ``q^(1/qdenom)`` and ``zeta^(+-1/rdenom)``.

    Keys are numerator pairs ``(a, b)`` for ``q^(a/qdenom) zeta^(b/rdenom)``;
    all coefficients with ``a < prec`` are known.
    """

    __slots__ = ("coeffs", "prec", "qdenom", "rdenom")

    def __init__(self, coeffs: Mapping, prec: int, qdenom: int = 1, rdenom: int = 1):
        self.coeffs = {k: normalize(c) for k, c in coeffs.items() if c and k[0] < prec}
        self.prec = prec
        self.qdenom = qdenom
        self.rdenom = rdenom

    @classmethod
    def from_qexpansion(cls, f: QExpansion) -> BiSeries:
        return cls({(e, 0): c for e, c in f.items()}, f.prec, f.denom, 1)

    def rescale(self, qdenom: int, rdenom: int) -> BiSeries:
        fq, fr = qdenom // self.qdenom, rdenom // self.rdenom
        if fq * self.qdenom != qdenom or fr * self.rdenom != rdenom:
            raise ValueError("incompatible lattices")
        if fq == fr == 1:
            return self
        return BiSeries({(a * fq, b * fr): c for (a, b), c in self.coeffs.items()}, self.prec * fq, qdenom, rdenom)

    def _common(self, other):
        qd, rd = _lcm(self.qdenom, other.qdenom), _lcm(self.rdenom, other.rdenom)
        return self.rescale(qd, rd), other.rescale(qd, rd)

    def valuation(self) -> int:
        return min((a for a, _ in self.coeffs), default=self.prec)

    def __add__(self, other):
        a, b = self._common(other)
        out = dict(a.coeffs)
        for k, c in b.coeffs.items():
            out[k] = out.get(k, 0) + c
        return BiSeries(out, min(a.prec, b.prec), a.qdenom, a.rdenom)

    def scale(self, s) -> BiSeries:
        return BiSeries({k: c * s for k, c in self.coeffs.items()}, self.prec, self.qdenom, self.rdenom)

    def __mul__(self, other):
        if isinstance(other, QExpansion):
            other = BiSeries.from_qexpansion(other)
        a, b = self._common(other)
        va, vb = a.valuation(), b.valuation()
        prec = min(a.prec + vb, b.prec + va)
        return BiSeries(_convolve(a.coeffs, b.coeffs, va + vb, prec), prec, a.qdenom, a.rdenom)

    def at_zero(self) -> QExpansion:
        """Specialize ``z = 0`` (``zeta = 1``)."""
        out = {}
        for (a, _), c in self.coeffs.items():
            out[a] = out.get(a, 0) + c
        return QExpansion(out, self.prec, self.qdenom)

    def r_symmetric(self, sign: int = 1) -> bool:
        return all(self.coeffs.get((a, -b), 0) == sign * c for (a, b), c in self.coeffs.items())


def _theta(prec8: int, half: bool, alternating: bool) -> BiSeries:
    """``sum_n (+-1)^n q^(v^2/2) zeta^v`` with ``v = n`` or ``n + 1/2``, on lattice q^(1/8), zeta^(1/2)."""
    coeffs = {}
    n = 0
    while True:
        hit = False
        for j in {n, -n - 1} if half else {n, -n}:
            v2 = 2 * j + 1 if half else 2 * j  # 2v
            e = v2 * v2  # 8 * v^2 / 2
            if e < prec8:
                coeffs[(e, v2)] = -1 if alternating and j % 2 else 1
                hit = True
        if not hit:
            break
        n += 1
    return BiSeries(coeffs, prec8, 8, 2)


def theta1(nmax: int) -> BiSeries:
    """Odd Jacobi theta ``sum_n (-1)^n q^((2n+1)^2/8) zeta^((2n+1)/2)`` below ``q^(nmax+1)``."""
    if nmax < 1:
        raise ValueError("nmax must be >= 1")
    return _theta(8 * (nmax + 1), half=True, alternating=True)


def theta2(nmax: int) -> BiSeries:
    return _theta(8 * (nmax + 1), half=True, alternating=False)


def theta3(nmax: int) -> BiSeries:
    return _theta(8 * (nmax + 1), half=False, alternating=False)


def theta4(nmax: int) -> BiSeries:
    return _theta(8 * (nmax + 1), half=False, alternating=True)


@dataclass(frozen=True)
class TaylorCoefficient:
    """``sum_n (sum_r C(n, r) r^nu) q^n``: the ``z^nu`` Taylor coefficient without ``(2 pi i)^nu / nu!``."""

    nu: int
    series: QExpansion


class JacobiTable:
    """Finite Fourier coefficient table of a Jacobi form of weight ``k``, index ``m``."""

    __slots__ = ("weight", "index", "nmax", "kind", "_coeffs")

    def __init__(self, weight: int, index: int, nmax: int, coeffs: Mapping, kind: str | None = None):
        if index < 0:
            raise ValueError("index must be >= 0")
        clean = {}
        for (n, r), c in coeffs.items():
            if not c or n > nmax or n < 0:
                continue
            if r * r > 4 * n * index + index * index:
                raise ValueError(f"coefficient at (n, r) = ({n}, {r}) outside the weak range")
            clean[(int(n), int(r))] = normalize(c)
        self.weight = weight
        self.index = index
        self.nmax = nmax
        self._coeffs = dict(sorted(clean.items()))
        support_cusp = all(self._in_cusp_range(n, r) for n, r in self._coeffs)
        if kind is None:
            kind = "cusp" if support_cusp else "weak"
        elif kind == "cusp" and not support_cusp:
            raise ValueError("cusp table has coefficients outside the cusp range")
        elif kind not in ("cusp", "weak"):
            raise ValueError(f"unknown kind {kind!r}")
        self.kind = kind

    def _in_cusp_range(self, n, r):
        if self.index == 0:
            return n >= 1 and r == 0
        return n >= 1 and 4 * n * self.index - r * r > 0

    @classmethod
    def embed(cls, f: QExpansion, weight: int, nmax: int | None = None) -> JacobiTable:
        """An elliptic form viewed as a Jacobi form of index 0."""
        f = f.reduced()
        if f.denom != 1:
            raise ValueError("only integer-exponent series embed as Jacobi forms")
        if nmax is None:
            nmax = f.prec - 1
        elif nmax >= f.prec:
            raise TruncationInsufficient(f"series known below q^{f.prec}, asked for n <= {nmax}")
        return cls(weight, 0, nmax, {(n, 0): c for n, c in f.items()})

    @property
    def coeffs(self) -> dict:
        return dict(self._coeffs)

    def items(self):
        return self._coeffs.items()

    def __getitem__(self, key):
        n, r = key
        if n > self.nmax:
            raise TruncationInsufficient(f"n = {n} beyond nmax = {self.nmax}")
        return self._coeffs.get((n, r), 0)

    def c(self, n: int, r: int):
        return self[n, r]

    def row(self, n: int) -> dict:
        return {r: c for (nn, r), c in self._coeffs.items() if nn == n}

    def is_zero(self) -> bool:
        return not self._coeffs

    def truncate(self, nmax: int) -> JacobiTable:
        return JacobiTable(self.weight, self.index, min(nmax, self.nmax), self._coeffs, None)

    def scale(self, s) -> JacobiTable:
        return JacobiTable(self.weight, self.index, self.nmax, {k: c * s for k, c in self._coeffs.items()})

    def __add__(self, other: JacobiTable) -> JacobiTable:
        if (self.weight, self.index) != (other.weight, other.index):
            raise ValueError("can only add forms of equal weight and index")
        nmax = min(self.nmax, other.nmax)
        out = {k: c for k, c in self._coeffs.items() if k[0] <= nmax}
        for k, c in other._coeffs.items():
            if k[0] <= nmax:
                out[k] = out.get(k, 0) + c
        return JacobiTable(self.weight, self.index, nmax, out)

    def __sub__(self, other: JacobiTable) -> JacobiTable:
        return self + other.scale(-1)

    def __eq__(self, other):
        if not isinstance(other, JacobiTable):
            return NotImplemented
        return (self.weight, self.index, self.nmax, self.kind, self._coeffs) == (
            other.weight, other.index, other.nmax, other.kind, other._coeffs)

    def __repr__(self):
        return f"JacobiTable(weight={self.weight}, index={self.index}, nmax={self.nmax}, kind={self.kind!r}, terms={len(self._coeffs)})"

    def discriminant_map(self) -> dict:
        """``{4nm - r^2: c}``; raises ``ValueError`` if the map is not well defined."""
        out = {}
        for (n, r), c in self._coeffs.items():
            d = 4 * n * self.index - r * r
            if out.setdefault(d, c) != c:
                raise ValueError(f"coefficients disagree at discriminant {d}")
        return out

    def depends_only_on_discriminant(self) -> bool:
        """Check ``c(n, r)`` depends on ``(4nm - r^2, r mod 2m)`` over the full stored range."""
        m = self.index
        seen = {}
        for n in range(self.nmax + 1):
            rmax = int((4 * n * m + m * m) ** 0.5) + 1
            for r in range(-rmax, rmax + 1):
                if r * r > 4 * n * m + m * m:
                    continue
                key = (4 * n * m - r * r, r % (2 * m) if m else 0)
                c = self._coeffs.get((n, r), 0)
                if seen.setdefault(key, c) != c:
                    return False
        return True

    def to_dict(self) -> dict:
        return {
            "weight": self.weight,
            "index": self.index,
            "kind": self.kind,
            "nmax": self.nmax,
            "coeffs": [[n, r, rational_str(c)] for (n, r), c in self._coeffs.items()],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    def digest(self) -> str:
        return hashlib.sha256(self.to_json().encode()).hexdigest()

    @classmethod
    def from_dict(cls, d: Mapping) -> JacobiTable:
        coeffs = {(int(n), int(r)): parse_rational(c) for n, r, c in d["coeffs"]}
        return cls(int(d["weight"]), int(d["index"]), int(d["nmax"]), coeffs, d.get("kind"))

    @classmethod
    def from_json(cls, s: str) -> JacobiTable:
        return cls.from_dict(json.loads(s))


def _bi_to_table(b: BiSeries, weight: int, index: int, nmax: int) -> JacobiTable:
    if b.prec < (nmax + 1) * b.qdenom:
        raise TruncationInsufficient(f"theta quotient only known below q^{Fraction(b.prec, b.qdenom)}")
    coeffs = {}
    for (a, s), c in b.coeffs.items():
        if a % b.qdenom or s % b.rdenom:
            raise ValueError("theta quotient left fractional exponents")
        n = a // b.qdenom
        if n <= nmax:
            coeffs[(n, s // b.rdenom)] = c
    return JacobiTable(weight, index, nmax, coeffs)


def phi_minus2_1(nmax: int) -> JacobiTable:
    """Weak generator of weight -2 and index 1, ``theta1^2 / eta^6``."""
    if nmax < 0:
        raise ValueError("nmax must be >= 0")
    t = theta1(nmax + 1)
    e6 = eta(nmax + 2) ** 6
    return _bi_to_table(t * t * e6.invert(), -2, 1, nmax)


def phi_0_1(nmax: int) -> JacobiTable:
    """Weak generator of weight 0 and index 1, ``4 sum_{i=2,3,4} theta_i(z)^2 / theta_i(0)^2``."""
    if nmax < 0:
        raise ValueError("nmax must be >= 0")
    total = None
    for th in (theta2, theta3, theta4):
        t = th(nmax + 1)
        term = t * t * (t.at_zero() ** 2).invert()
        total = term if total is None else total + term
    return _bi_to_table(total.scale(4), 0, 1, nmax)


def weak_generator(which: str, nmax: int) -> JacobiTable:
    if which == "phi_minus2_1":
        return phi_minus2_1(nmax)
    if which == "phi_0_1":
        return phi_0_1(nmax)
    raise ValueError(f"unknown generator {which!r}")


def jacobi_mul(a: JacobiTable, b: JacobiTable, threads: int = 1) -> JacobiTable:
    """Product of two tables: weights and indices add, precision is the smaller ``nmax``."""
    nmax = min(a.nmax, b.nmax)
    coeffs = _convolve(a.coeffs, b.coeffs, 0, nmax + 1, threads)
    return JacobiTable(a.weight + b.weight, a.index + b.index, nmax, coeffs)


def phi10_1(nmax: int) -> JacobiTable:
    """The index-1 cusp form of weight 10, ``Delta * phi_{-2,1}``."""
    return jacobi_mul(JacobiTable.embed(delta(nmax + 1), 12), phi_minus2_1(nmax))


def phi12_1(nmax: int) -> JacobiTable:
    """The index-1 cusp form of weight 12, ``Delta * phi_{0,1}``."""
    return jacobi_mul(JacobiTable.embed(delta(nmax + 1), 12), phi_0_1(nmax))


def cusp_generator(weight: int, nmax: int) -> JacobiTable:
    if weight == 10:
        return phi10_1(nmax)
    if weight == 12:
        return phi12_1(nmax)
    raise ValueError("built-in index-1 cusp forms exist for weights 10 and 12 only")


def flip(phi: JacobiTable) -> JacobiTable:
    """``phi(tau, -z)``: ``c(n, r) -> c(n, -r)``."""
    return JacobiTable(phi.weight, phi.index, phi.nmax, {(n, -r): c for (n, r), c in phi.items()}, phi.kind)


def sign_flip_product(phi: JacobiTable, threads: int = 1) -> JacobiTable:
    """``phi(tau, z) * phi(tau, -z)``: weight ``2k``, index ``2m``, even in ``z``."""
    return jacobi_mul(phi, flip(phi), threads)


def taylor_coeff(phi: JacobiTable, nu: int) -> TaylorCoefficient:
    if nu < 0:
        raise ValueError("nu must be >= 0")
    out = {}
    for (n, r), c in phi.items():
        if r or nu == 0:
            out[n] = out.get(n, 0) + c * r ** nu
    return TaylorCoefficient(nu, QExpansion(out, phi.nmax + 1))


def is_even(phi: JacobiTable) -> bool:
    return all(phi.c(n, -r) == c for (n, r), c in phi.items())


def minimal_alpha(phi: JacobiTable):
    """Smallest ``nu`` whose Taylor coefficient is nonzero through the table precision.

    The order of vanishing at ``z = 0`` of a nonzero Jacobi form of index
    ``m`` is at most ``2m``; nothing beyond that is searched.
    """
    even = is_even(phi)
    for nu in range(0, 2 * phi.index + 1):
        if even and nu % 2:
            continue
        chi = taylor_coeff(phi, nu)
        if not chi.series.is_zero():
            return nu, chi
    raise AllTaylorVanish(
        f"no nonzero Taylor coefficient up to z^{2 * phi.index} at nmax = {phi.nmax}")
