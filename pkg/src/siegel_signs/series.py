"""Exact truncated q-expansions and elliptic modular forms of level one.

A :class:`QExpansion` lives on the exponent lattice ``(1/denom) Z``; the
coefficient of ``q^(e/denom)`` is stored under the integer key ``e``.
Everything is exact (``int`` or ``fractions.Fraction``). Precision is
tracked pessimistically and travels with every result.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd
from numbers import Rational
from typing import Iterable, Mapping

from .errors import NotInSpan, PrecisionTooLow, TruncationInsufficient, ZeroLeadingTerm
from .kernels import conv1d, inv1d


def _lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


def normalize(c):
    """Return ``c`` as an ``int`` when integral, else as a ``Fraction``."""
    if isinstance(c, int):
        return c
    c = Fraction(c)
    return c.numerator if c.denominator == 1 else c


def rational_str(c) -> str:
    c = normalize(c)
    return str(c)


def parse_rational(s: str):
    return normalize(Fraction(s))


class QExpansion:
    """Truncated series ``sum c_e q^(e/denom) + O(q^(prec/denom))``.

    Instances are immutable. Zero coefficients are never stored.
    """

    __slots__ = ("_denom", "_coeffs", "_prec", "_hash")

    def __init__(self, coeffs: Mapping[int, Rational], prec: int, denom: int = 1):
        if denom < 1:
            raise ValueError("denom must be >= 1")
        clean = {}
        for e, c in coeffs.items():
            if e < prec and c:
                clean[int(e)] = normalize(c)
        self._denom = int(denom)
        self._prec = int(prec)
        self._coeffs = dict(sorted(clean.items()))
        self._hash = None

    # construction helpers

    @classmethod
    def from_list(cls, values: Iterable, prec: int | None = None, denom: int = 1, offset: int = 0):
        values = list(values)
        if prec is None:
            prec = offset + len(values)
        return cls({offset + i: v for i, v in enumerate(values)}, prec, denom)

    @classmethod
    def one(cls, prec: int, denom: int = 1):
        return cls({0: 1}, prec, denom)

    @classmethod
    def monomial(cls, exponent, prec, denom: int = 1, coeff=1):
        return cls({exponent: coeff}, prec, denom)

    # accessors

    @property
    def denom(self) -> int:
        return self._denom

    @property
    def prec(self) -> int:
        return self._prec

    @property
    def coeffs(self) -> dict:
        return dict(self._coeffs)

    def items(self):
        return self._coeffs.items()

    def __getitem__(self, e: int):
        if e >= self._prec:
            raise TruncationInsufficient(f"exponent {e}/{self._denom} beyond precision {self._prec}/{self._denom}")
        return self._coeffs.get(e, 0)

    def coefficient(self, exponent) -> Rational:
        """Coefficient at a rational exponent (``Fraction`` or ``int``)."""
        x = Fraction(exponent) * self._denom
        if x.denominator != 1:
            return 0
        return self[x.numerator]

    def valuation(self) -> int:
        """Smallest stored exponent numerator; ``prec`` for the zero series."""
        return next(iter(self._coeffs), self._prec)

    def is_zero(self) -> bool:
        return not self._coeffs

    def list(self, start: int = 0, stop: int | None = None) -> list:
        stop = self._prec if stop is None else stop
        return [self._coeffs.get(e, 0) for e in range(start, stop)]

    # lattice handling

    def rescale(self, denom: int) -> QExpansion:
        if denom % self._denom:
            raise ValueError(f"cannot move lattice 1/{self._denom} to 1/{denom}")
        f = denom // self._denom
        if f == 1:
            return self
        return QExpansion({e * f: c for e, c in self._coeffs.items()}, self._prec * f, denom)

    def reduced(self) -> QExpansion:
        """Same series on the coarsest lattice that carries it."""
        g = reduce(gcd, self._coeffs, gcd(self._denom, self._prec))
        if g <= 1:
            return self
        return QExpansion({e // g: c for e, c in self._coeffs.items()}, self._prec // g, self._denom // g)

    def _common(self, other: QExpansion):
        d = _lcm(self._denom, other._denom)
        return self.rescale(d), other.rescale(d), d

    def truncate(self, prec: int) -> QExpansion:
        return QExpansion(self._coeffs, min(prec, self._prec), self._denom)

    def shift(self, e: int) -> QExpansion:
        """Multiply by ``q^(e/denom)``."""
        return QExpansion({k + e: c for k, c in self._coeffs.items()}, self._prec + e, self._denom)

    # arithmetic

    def __neg__(self):
        return QExpansion({e: -c for e, c in self._coeffs.items()}, self._prec, self._denom)

    def __add__(self, other):
        if not isinstance(other, QExpansion):
            if isinstance(other, (int, Fraction)):
                other = QExpansion({0: other}, self._prec, self._denom)
            else:
                return NotImplemented
        a, b, d = self._common(other)
        out = dict(a._coeffs)
        for e, c in b._coeffs.items():
            out[e] = out.get(e, 0) + c
        return QExpansion(out, min(a._prec, b._prec), d)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (QExpansion, int, Fraction)):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, s) -> QExpansion:
        if not s:
            return QExpansion({}, self._prec, self._denom)
        return QExpansion({e: c * s for e, c in self._coeffs.items()}, self._prec, self._denom)

    def _stride(self) -> int:
        v = self.valuation()
        return reduce(gcd, (e - v for e in self._coeffs), 0)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, QExpansion):
            return NotImplemented
        a, b, d = self._common(other)
        va, vb = a.valuation(), b.valuation()
        prec = min(a._prec + vb, b._prec + va)
        if a.is_zero() or b.is_zero():
            return QExpansion({}, prec, d)
        s = gcd(a._stride(), b._stride()) or d
        base = va + vb
        n = -(-(prec - base) // s)
        if n <= 0:
            return QExpansion({}, prec, d)
        la = [a._coeffs.get(va + s * i, 0) for i in range(-(-(a._prec - va) // s))]
        lb = [b._coeffs.get(vb + s * i, 0) for i in range(-(-(b._prec - vb) // s))]
        out = conv1d(la, lb, n)
        return QExpansion({base + s * i: c for i, c in enumerate(out)}, prec, d)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(Fraction(1) / other)
        if isinstance(other, QExpansion):
            return self * other.invert()
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            return self.invert() ** (-k)
        if k == 0:
            return QExpansion.one(self._prec - self.valuation(), self._denom)
        result = None
        base = self
        while k:
            if k & 1:
                result = base if result is None else result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def invert(self) -> QExpansion:
        """Multiplicative inverse; negative leading exponents are allowed."""
        if self.is_zero():
            raise ZeroLeadingTerm("series is zero at its precision")
        v = self.valuation()
        s = max(self._stride(), 1)
        rel = self._prec - v
        n = -(-rel // s)
        u = [self._coeffs.get(v + s * i, 0) for i in range(n)]
        w = inv1d(u, n)
        return QExpansion({-v + s * i: c for i, c in enumerate(w)}, self._prec - 2 * v, self._denom)

    # comparison

    def agrees_with(self, other: QExpansion) -> bool:
        """Coefficientwise equality up to the shared precision."""
        a, b, _ = self._common(other)
        p = min(a._prec, b._prec)
        return a.truncate(p)._coeffs == b.truncate(p)._coeffs

    def __eq__(self, other):
        if not isinstance(other, QExpansion):
            return NotImplemented
        a, b, _ = self._common(other)
        return a._prec == b._prec and a._coeffs == b._coeffs

    def __hash__(self):
        if self._hash is None:
            r = self.reduced()
            self._hash = hash((r._denom, r._prec, tuple(r._coeffs.items())))
        return self._hash

    def __repr__(self):
        terms = []
        for e, c in list(self._coeffs.items())[:6]:
            x = Fraction(e, self._denom)
            terms.append(f"{c}*q^{x}")
        tail = " + ..." if len(self._coeffs) > 6 else ""
        return f"QExpansion({' + '.join(terms) or '0'}{tail} + O(q^{Fraction(self._prec, self._denom)}))"

    # serialization

    def to_dict(self) -> dict:
        return {
            "denom": self._denom,
            "prec": self._prec,
            "coeffs": [[e, rational_str(c)] for e, c in self._coeffs.items()],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_dict(cls, d: Mapping) -> QExpansion:
        return cls({int(e): parse_rational(c) for e, c in d["coeffs"]}, int(d["prec"]), int(d["denom"]))

    @classmethod
    def from_json(cls, s: str) -> QExpansion:
        return cls.from_dict(json.loads(s))


# classical constructors


def pentagonal_product(prec: int) -> QExpansion:
    """``prod_{n>=1} (1 - q^n) + O(q^prec)`` by Euler's pentagonal theorem."""
    coeffs = {}
    k = 0
    while True:
        hit = False
        for j in (k, -k) if k else (0,):
            e = j * (3 * j - 1) // 2
            if e < prec:
                coeffs[e] = -1 if j % 2 else 1
                hit = True
        if not hit:
            break
        k += 1
    return QExpansion(coeffs, prec)


def eta(prec: int) -> QExpansion:
    """Dedekind eta on the lattice ``q^(1/24)``, product known to ``O(q^prec)``."""
    if prec < 1:
        raise ValueError("prec must be >= 1")
    p = pentagonal_product(prec)
    return QExpansion({24 * e + 1: c for e, c in p.items()}, 24 * prec + 1, 24)


def bernoulli(k: int) -> Fraction:
    """Bernoulli number ``B_k`` (``B_1 = -1/2`` convention)."""
    b = [Fraction(0)] * (k + 1)
    for m in range(k + 1):
        b[m] = Fraction(1, m + 1)
        for j in range(m, 0, -1):
            b[j - 1] = j * (b[j - 1] - b[j])
    # Akiyama-Tanigawa yields B_1 = +1/2
    return -b[0] if k == 1 else b[0]


def divisor_sums(power: int, prec: int) -> list:
    s = [0] * prec
    for d in range(1, prec):
        dp = d ** power
        for m in range(d, prec, d):
            s[m] += dp
    return s


def eisenstein(k: int, prec: int) -> QExpansion:
    """Normalized Eisenstein series ``E_k`` of even weight ``k >= 4``."""
    if k < 4 or k % 2:
        raise ValueError("Eisenstein series need even k >= 4")
    if prec < 1:
        raise ValueError("prec must be >= 1")
    factor = normalize(Fraction(-2 * k) / bernoulli(k))
    sig = divisor_sums(k - 1, prec)
    coeffs = {0: 1}
    for n in range(1, prec):
        coeffs[n] = factor * sig[n]
    return QExpansion(coeffs, prec)


def delta(prec: int) -> QExpansion:
    """The discriminant ``Delta = (E4^3 - E6^2)/1728``."""
    if prec < 2:
        raise ValueError("prec must be >= 2")
    e4 = eisenstein(4, prec)
    e6 = eisenstein(6, prec)
    return (e4 ** 3 - e6 ** 2).scale(Fraction(1, 1728))


def dim_modular(k: int) -> int:
    if k < 0 or k % 2:
        return 0
    if k == 2:
        return 0
    return k // 12 if k % 12 == 2 else k // 12 + 1


def dim_cusp(k: int) -> int:
    if k < 12 or k % 2:
        return 0
    return dim_modular(k) - 1


@dataclass(frozen=True)
class CuspBasis:
    """Reduced echelon basis of ``S_k``: form ``i`` is ``q^(i+1) + O(q^(d+1))``."""

    weight: int
    forms: tuple
    prec: int

    def __len__(self):
        return len(self.forms)

    def to_dict(self) -> dict:
        return {"weight": self.weight, "prec": self.prec, "forms": [f.to_dict() for f in self.forms]}


def miller_basis(k: int, prec: int) -> CuspBasis:
    """Echelonized basis of cusp forms of weight ``k`` built from ``E4^a E6^b Delta^j``."""
    if k < 0 or k % 2:
        raise ValueError("weight must be even and >= 0")
    d = dim_cusp(k)
    if d == 0:
        return CuspBasis(k, (), prec)
    if prec <= d + 1:
        raise PrecisionTooLow(f"prec {prec} too low for dim S_{k} = {d}")
    e4 = eisenstein(4, prec)
    e6 = eisenstein(6, prec)
    dl = delta(prec)
    rows = []
    for j in range(1, d + 1):
        rest = k - 12 * j
        b = 0 if rest % 4 == 0 else 1
        a = (rest - 6 * b) // 4
        f = dl ** j
        if a:
            f = f * e4 ** a
        if b:
            f = f * e6
        rows.append(f.truncate(prec))
    # rows are upper triangular with unit diagonal; clear above-diagonal entries
    for i in range(d - 1, -1, -1):
        for j in range(i):
            c = rows[j][i + 1]
            if c:
                rows[j] = rows[j] - rows[i].scale(c)
    return CuspBasis(k, tuple(rows), min(r.prec for r in rows))


def cusp_decompose(f: QExpansion, k: int, basis: CuspBasis | None = None) -> list:
    """Coordinates of ``f`` in the echelon basis of ``S_k``.

    Raises :class:`NotInSpan` if the residual is nonzero anywhere below the
    shared precision.
    """
    if f.denom != 1:
        f = f.reduced()
        if f.denom != 1:
            raise NotInSpan("series is not on the integer exponent lattice")
    if basis is None:
        basis = miller_basis(k, f.prec)
    if basis.weight != k:
        raise ValueError("basis weight mismatch")
    d = len(basis)
    p = min(f.prec, basis.prec)
    if p <= d:
        raise PrecisionTooLow(f"shared precision {p} cannot separate {d} basis forms")
    coords = [f[i + 1] for i in range(d)]
    residual = f.truncate(p)
    for c, b in zip(coords, basis.forms):
        if c:
            residual = residual - b.truncate(p).scale(c)
    if not residual.is_zero():
        e = residual.valuation()
        raise NotInSpan(f"residual coefficient {residual[e]} at q^{e} not in S_{k}")
    if d == 0:
        return [0]
    return coords


def first_sign_change(f: QExpansion, require: bool = False):
    """Smallest exponents with a strictly positive and strictly negative coefficient.

    Either entry is ``None`` when not found below the precision, unless
    ``require`` is set, in which case :class:`TruncationInsufficient` is raised.
    """
    if f.denom != 1:
        f = f.reduced()
        if f.denom != 1:
            raise ValueError("series must live on the integer lattice")
    n_plus = n_minus = None
    for e, c in f.items():
        if c > 0 and n_plus is None:
            n_plus = e
        elif c < 0 and n_minus is None:
            n_minus = e
        if n_plus is not None and n_minus is not None:
            break
    if require and (n_plus is None or n_minus is None):
        missing = "positive" if n_plus is None else "negative"
        raise TruncationInsufficient(f"no {missing} coefficient below q^{f.prec}")
    return n_plus, n_minus
