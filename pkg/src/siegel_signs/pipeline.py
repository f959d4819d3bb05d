"""Constructive sign-change pipeline for genus two.

Starting from a lift ``F`` the pipeline

1. finds a nonzero coefficient ``a(T0)`` of minimal trace and reads off ``m0``,
2. slices the Fourier-Jacobi coefficient ``phi`` of index ``m0``,
3. forms ``Phi(tau, z) = phi(tau, z) phi(tau, -z)`` (weight ``2k``, index ``2 m0``),
4. takes the first nonvanishing Taylor coefficient ``chi_alpha`` of ``Phi`` at ``z = 0``,
5. checks ``chi_alpha`` lies in ``S_{2k + alpha}``,
6. finds the first negative (and positive) coefficient ``n~`` of ``chi_alpha``,
7. walks back through ``C(n~, r~)`` to a coefficient of ``F`` of that sign.

Every intermediate claim is verified exactly; failures raise.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass, field

from ._parallel import chunked_ranges, ordered_map, resolve_threads
from .bounds import BoundReport, bound_report, trace_bound_T0
from .errors import NoNonzeroWithinBound, SiegelSignsError, TruncationInsufficient
from .jacobi import JacobiTable, minimal_alpha, sign_flip_product
from .lift import SiegelLift, fourier_jacobi
from .reduction import BinaryHalfIntegral, enumerate_reduced, is_positive_definite, reduce
from .series import cusp_decompose, first_sign_change, miller_basis, rational_str

GENUS = 2


@dataclass(frozen=True)
class Witness:
    T: BinaryHalfIntegral
    value: int
    reduced: BinaryHalfIntegral
    n_tilde: int
    r_tilde: int
    C_value: int
    term: tuple  # (n1, r1, n2, r2) with C(n~, r~) containing c(n1, r1) c(n2, -r2)
    term_value: int

    @property
    def trace(self) -> int:
        return self.T.trace

    def to_dict(self) -> dict:
        return {
            "T": self.T.as_dict(),
            "reduced": self.reduced.as_dict(),
            "trace": self.trace,
            "discriminant": self.T.discriminant,
            "value": rational_str(self.value),
            "n_tilde": self.n_tilde,
            "r_tilde": self.r_tilde,
            "C_value": rational_str(self.C_value),
            "term": list(self.term),
            "term_value": rational_str(self.term_value),
        }


@dataclass(frozen=True)
class PipelineReport:
    weight: int
    T0: BinaryHalfIntegral
    a_T0: int
    m0: int
    alpha: int
    k1: int
    cusp_coordinates: tuple
    n_tilde_neg: int
    n_tilde_pos: int
    r_tilde: int
    witness_neg: Witness
    witness_pos: Witness
    bound_comparison: BoundReport
    nmax: int
    cusp_check_prec: int
    digests: dict = field(default_factory=dict)
    checks: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "weight": self.weight,
            "genus": GENUS,
            "T0": self.T0.as_dict(),
            "a_T0": rational_str(self.a_T0),
            "trace_T0": self.T0.trace,
            "m0": self.m0,
            "alpha": self.alpha,
            "k1": self.k1,
            "cusp_coordinates": [rational_str(c) for c in self.cusp_coordinates],
            "n_tilde_neg": self.n_tilde_neg,
            "n_tilde_pos": self.n_tilde_pos,
            "r_tilde": self.r_tilde,
            "witness_neg": self.witness_neg.to_dict(),
            "witness_pos": self.witness_pos.to_dict(),
            "bound_comparison": self.bound_comparison.to_dict(),
            "precision": {"nmax": self.nmax, "cusp_check_prec": self.cusp_check_prec},
            "digests": dict(self.digests),
            "checks": dict(self.checks),
        }


@dataclass(frozen=True)
class ScanResult:
    first_pos: tuple  # (T, value)
    first_neg: tuple
    trace_max: int
    scanned: int


def find_T0(L: SiegelLift) -> BinaryHalfIntegral:
    """Reduced ``T`` of minimal trace with ``a(T) != 0``, within the a priori trace bound."""
    bound = trace_bound_T0(L.weight, GENUS)
    for T in enumerate_reduced(math.floor(bound)):
        if L.coeff(T):
            return T
    raise NoNonzeroWithinBound(f"no nonzero coefficient with trace <= {bound:.4f}")


def direct_scan(L: SiegelLift, trace_max: int, threads: int = 1) -> ScanResult:
    """First reduced ``T`` (by trace, then ``n``, then ``r``) of each sign."""
    if trace_max < 2:
        raise ValueError("trace_max must be >= 2")
    Ts = enumerate_reduced(trace_max)
    spans = chunked_ranges(0, len(Ts), resolve_threads(threads))
    parts = ordered_map(lambda s: [L.coeff(T) for T in Ts[s[0]:s[1]]], spans, threads)
    values = [v for part in parts for v in part]
    pos = next(((T, v) for T, v in zip(Ts, values) if v > 0), None)
    neg = next(((T, v) for T, v in zip(Ts, values) if v < 0), None)
    if pos is None or neg is None:
        missing = "positive" if pos is None else "negative"
        raise TruncationInsufficient(
            f"no {missing} coefficient with trace <= {trace_max}; raise --trace-max")
    return ScanResult(pos, neg, trace_max, len(Ts))


def _witness_candidates(phi: JacobiTable, Phi: JacobiTable, n_t: int, sign: int, m0: int, strict_terms: bool):
    out = []
    for (n, r_t), C in Phi.items():
        if n != n_t or sign * C <= 0:
            continue
        for (n1, r1), c1 in phi.items():
            if n1 > n_t:
                continue
            n2, r2 = n_t - n1, r_t - r1
            c2 = phi.c(n2, -r2)
            term = c1 * c2
            if strict_terms and sign * term <= 0:
                continue
            for T, v in (((n1, r1, m0), c1), ((n2, -r2, m0), c2)):
                if sign * v > 0:
                    T = BinaryHalfIntegral(*T)
                    red = reduce(T)[0]
                    key = (T.trace, red.sort_key(), abs(r_t), r_t, n1, r1)
                    out.append((key, Witness(T, v, red, n_t, r_t, C, (n1, r1, n2, r2), term)))
    return sorted(out, key=lambda kv: kv[0])


def _pick_witness(phi, Phi, n_t, sign, m0) -> Witness:
    cands = _witness_candidates(phi, Phi, n_t, sign, m0, strict_terms=True)
    if not cands and sign > 0:
        # a positive C(n~, r~) may consist only of (-)(-) terms
        cands = _witness_candidates(phi, Phi, n_t, sign, m0, strict_terms=False)
    if not cands:
        raise SiegelSignsError(f"no coefficient of sign {sign:+d} found in C({n_t}, r)")
    return cands[0][1]


def run(L: SiegelLift, nmax: int, threads: int = 1, cusp_check_prec: int | None = None) -> PipelineReport:
    if L.is_zero():
        raise NoNonzeroWithinBound("the lift is zero at its precision")
    k = L.weight
    T0 = find_T0(L)
    m0 = T0.m
    phi = fourier_jacobi(L, m0, nmax, threads)
    Phi = sign_flip_product(phi, threads)
    if Phi.index != 2 * m0 or Phi.weight != 2 * k:
        raise SiegelSignsError("weight/index bookkeeping of the sign-flip product failed")
    if any(Phi.c(n, -r) != c for (n, r), c in Phi.items()):
        raise SiegelSignsError("sign-flip product is not even in z")
    alpha, chi = minimal_alpha(Phi)
    if alpha % 2:
        raise SiegelSignsError(f"odd minimal Taylor index {alpha} for an even form")
    k1 = 2 * k + alpha
    p = chi.series.prec if cusp_check_prec is None else min(cusp_check_prec, chi.series.prec)
    chi_p = chi.series.truncate(p)
    coords = cusp_decompose(chi_p, k1, miller_basis(k1, p))
    if chi_p.is_zero():
        raise SiegelSignsError("Taylor coefficient vanishes at the checked precision")
    n_pos, n_neg = first_sign_change(chi.series, require=True)
    w_neg = _pick_witness(phi, Phi, n_neg, -1, m0)
    w_pos = _pick_witness(phi, Phi, n_pos, +1, m0)

    checks = {}
    for name, w, sign in (("neg", w_neg, -1), ("pos", w_pos, 1)):
        recomputed = L.coeff(w.T)
        checks[f"witness_{name}_recomputed"] = recomputed == w.value
        checks[f"witness_{name}_sign"] = sign * recomputed > 0
        checks[f"witness_{name}_positive_definite"] = is_positive_definite(w.T)
        checks[f"witness_{name}_trace_split"] = w.trace == w.T.n + m0 and w.T.n <= w.n_tilde
    report = bound_report(k, GENUS, trM0=m0)
    checks["k1_identity"] = k1 == 2 ** (GENUS - 1) * k + alpha
    checks["alpha_le_twice_index"] = alpha <= 2 * Phi.index
    checks["cusp_membership"] = True
    checks["T0_within_trace_bound"] = T0.trace <= report.trace_bound_T0
    checks["witness_traces_within_theorem_bound"] = all(
        math.log(w.trace) <= report.theorem_bound_log for w in (w_neg, w_pos))
    failed = [name for name, ok in checks.items() if not ok]
    if failed:
        raise SiegelSignsError(f"pipeline assertions failed: {', '.join(failed)}")

    digests = {
        "phi": phi.digest(),
        "Phi": Phi.digest(),
        "chi_alpha": _digest(chi.series.to_json()),
    }
    return PipelineReport(
        weight=k,
        T0=T0,
        a_T0=L.coeff(T0),
        m0=m0,
        alpha=alpha,
        k1=k1,
        cusp_coordinates=tuple(coords),
        n_tilde_neg=n_neg,
        n_tilde_pos=n_pos,
        r_tilde=w_neg.r_tilde,
        witness_neg=w_neg,
        witness_pos=w_pos,
        bound_comparison=report,
        nmax=nmax,
        cusp_check_prec=p,
        digests=digests,
        checks=checks,
    )


def _digest(s: str) -> str:
    return hashlib.sha256(s.encode()).hexdigest()
