"""Explicit bounds for the first sign change, for any genus ``g >= 2``.

The implied constants behind the ``<<`` relations are not known, so every
value here is the bound expression with constant 1 (``constant_caveat``).
Large quantities are carried as natural logarithms. Floating point is
confined to this module; the genus constant ``c_g`` is exact.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from fractions import Fraction

from .errors import DomainError

# exponent and log-power of the elliptic first-sign-change bound
ELLIPTIC_EXPONENT = 5
ELLIPTIC_LOG_POWER = 26


def c_g(g: int) -> Fraction:
    """``g * 2^(g-1) * (4/3)^(g(g-1)/2)`` exactly."""
    if g < 2:
        raise DomainError("genus must be >= 2")
    return Fraction(g * 2 ** (g - 1)) * Fraction(4, 3) ** (g * (g - 1) // 2)


def trace_bound_T0_factor(k: int, g: int) -> Fraction:
    """Rational factor ``k g (4/3)^(g(g-1)/2)``; the bound is this over ``2 pi sqrt 3``."""
    return Fraction(k * g) * Fraction(4, 3) ** (g * (g - 1) // 2)


def trace_bound_T0(k: int, g: int) -> float:
    """Upper bound for the trace of some ``T0`` with ``a(T0) != 0``."""
    if g < 2:
        raise DomainError("genus must be >= 2")
    if k < 4:
        raise DomainError("weight must be >= 4")
    return float(trace_bound_T0_factor(k, g)) / (2 * math.pi * math.sqrt(3))


def _log_bound(x: float) -> float:
    if x <= math.e:
        raise DomainError(f"bound needs x > e, got {x}")
    return ELLIPTIC_EXPONENT * math.log(x) + ELLIPTIC_LOG_POWER * math.log(math.log(x))


def format_from_log(log_value: float, digits: int = 2) -> str:
    """Scientific notation for ``exp(log_value)`` without overflowing."""
    l10 = log_value / math.log(10)
    e = math.floor(l10)
    mant = 10 ** (l10 - e)
    if round(mant, digits - 1) >= 10:
        mant /= 10
        e += 1
    return f"{mant:.{digits - 1}f}e{e}"


def theorem_bound(k: int, g: int):
    """``(k c_g)^5 log^26(k c_g)`` as ``(natural log, decimal string)``."""
    if k % 2:
        raise DomainError("weight must be even")
    x = k * float(c_g(g))
    lv = _log_bound(x)
    return lv, format_from_log(lv)


def k1_and_n_tilde_bounds(k: int, g: int, trM0: int):
    """Right-hand sides ``2^(g-1)(k + tr M0)`` and the log of its elliptic bound."""
    if trM0 < 1:
        raise DomainError("tr M0 must be >= 1")
    if g < 2:
        raise DomainError("genus must be >= 2")
    k1b = 2 ** (g - 1) * (k + trM0)
    return float(k1b), _log_bound(k1b)


@dataclass(frozen=True)
class BoundReport:
    g: int
    k: int
    c_g: Fraction
    trace_bound_T0: float
    trace_bound_T0_factor: Fraction
    theorem_bound_log: float
    theorem_bound: str
    k1_bound: float | None = None
    k1_bound_log: float | None = None
    n_tilde_bound_log: float | None = None
    trM0: int | None = None
    log_base: str = "e"
    constant_caveat: bool = True

    def to_dict(self) -> dict:
        d = asdict(self)
        d["c_g"] = str(self.c_g)
        d["trace_bound_T0_factor"] = str(self.trace_bound_T0_factor)
        return {k: v for k, v in d.items() if v is not None}


def bound_report(k: int, g: int, trM0: int | None = None) -> BoundReport:
    if k % 2:
        raise DomainError("weight must be even")
    lv, s = theorem_bound(k, g)
    extra = {}
    if trM0 is not None:
        k1b, nlog = k1_and_n_tilde_bounds(k, g, trM0)
        extra = dict(k1_bound=k1b, k1_bound_log=math.log(k1b), n_tilde_bound_log=nlog, trM0=trM0)
    return BoundReport(
        g=g,
        k=k,
        c_g=c_g(g),
        trace_bound_T0=trace_bound_T0(k, g),
        trace_bound_T0_factor=trace_bound_T0_factor(k, g),
        theorem_bound_log=lv,
        theorem_bound=s,
        **extra,
    )
