"""Quantization conditions: integer levels of the higher normal function.

The operative condition on the real slice a > |a_hat| is nu(a) in Z; each
integer level n is bracketed from the large-a asymptotics
nu ~ (r0/8 pi^2) log^2 a + 1/2 + r0/12 and then bisected to tolerance.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field

from .errors import BracketFailureError, InsufficientOrderError
from .families import CurveFamily
from .periods import (DEFAULT_ORDER, conifold_locate, evaluate_periods, gw_extract,
                      r_beta_negative_axis)


def nu(family: CurveFamily, a: float, N: int | None = None, prec_bits: int = 256) -> float:
    return evaluate_periods(family, a, N=N, prec_bits=prec_bits).nu


def V(family: CurveFamily, a: float, N: int | None = None, prec_bits: int = 256) -> float:
    return evaluate_periods(family, a, N=N, prec_bits=prec_bits).V


@dataclass
class QuantizationRoot:
    n: int
    a: float
    residual: float
    bracket_lo: float
    bracket_hi: float
    nu_lo: float
    nu_hi: float


@dataclass
class SpectrumPrediction:
    family_id: str
    roots: list[QuantizationRoot] = field(default_factory=list)
    a_hat: float = 0.0
    nu_edge: float = 0.0     # nu just above |a_hat|
    monotone_checked: bool = False

    def write_csv(self, path: str) -> None:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh)
            w.writerow(["n", "a_n", "residual", "bracket_lo", "bracket_hi"])
            for r in self.roots:
                w.writerow([r.n, f"{r.a:.17g}", f"{r.residual:.3e}",
                            f"{r.bracket_lo:.17g}", f"{r.bracket_hi:.17g}"])


def _nu_edge_value(family: CurveFamily, a_hat_abs: float, N: int, prec_bits: int) -> float:
    # Evaluation close to the conifold point only needs a loose tolerance:
    # the series for t converges at |a_hat| like 1/k^2, so the tail bound is
    # coarse but the integer part of nu there is stable.
    eps = 1e-3 * a_hat_abs
    for tol in (1e-10, 1e-6, 1e-3, 1e-1):
        try:
            return evaluate_periods(family, a_hat_abs + eps, N=N, tol=tol, prec_bits=prec_bits).nu
        except InsufficientOrderError:
            continue
    return evaluate_periods(family, 1.5 * a_hat_abs, N=N, prec_bits=prec_bits).nu


def predicted_spectrum(family: CurveFamily, levels: int = 3, tol: float = 1e-10,
                       N: int | None = None, prec_bits: int = 256,
                       grid_check: int = 0) -> SpectrumPrediction:
    """All quantization roots nu(a_n) = n for the first `levels` admissible integers.

    Brackets come from the asymptotic inverse a ~ exp(sqrt(8 pi^2 (n - T)/r0));
    each is verified to straddle n before bisection (BracketFailure otherwise).
    """
    if N is None:
        N = DEFAULT_ORDER
    gwd = gw_extract(family, N=N)
    r0 = gwd.r_circ
    T = float(gwd.T)
    a_hat = conifold_locate(family)
    pred = SpectrumPrediction(family_id=family.name or family.canonical_key(), a_hat=a_hat)
    pred.nu_edge = _nu_edge_value(family, abs(a_hat), N, prec_bits)
    n0 = math.floor(pred.nu_edge) + 1

    def f(a: float) -> float:
        return evaluate_periods(family, a, N=N, prec_bits=prec_bits, tol=min(tol, 1e-10) * 1e-2).nu

    if grid_check:
        # Optional monotonicity scan; falls back to refined sign scanning if violated.
        lo = abs(a_hat) * 1.05
        hi = abs(a_hat) * 50
        vals = [f(lo * (hi / lo) ** (i / (grid_check - 1))) for i in range(grid_check)]
        pred.monotone_checked = all(b > a for a, b in zip(vals, vals[1:]))

    for n in range(n0, n0 + levels):
        guess = math.exp(math.sqrt(max(8 * math.pi ** 2 * (n - T) / r0, 1e-6)))
        lo = max(guess * 0.5, abs(a_hat) * 1.001)
        hi = guess * 2.0
        for _ in range(80):
            if f(lo) < n:
                break
            lo = max(abs(a_hat) * 1.0005, (lo + abs(a_hat)) / 2)
        else:
            raise BracketFailureError(f"no lower bracket for level {n}")
        for _ in range(80):
            if f(hi) > n:
                break
            hi *= 1.5
        else:
            raise BracketFailureError(f"no upper bracket for level {n}")
        nu_lo, nu_hi = f(lo), f(hi)
        if not (nu_lo < n < nu_hi):
            raise BracketFailureError(f"bracket failed to straddle level {n}")
        a_lo, a_hi = lo, hi
        for _ in range(200):
            mid = 0.5 * (a_lo + a_hi)
            if a_hi - a_lo < 4e-16 * a_hi:
                break
            if f(mid) < n:
                a_lo = mid
            else:
                a_hi = mid
        root = 0.5 * (a_lo + a_hi)
        res = abs(f(root) - n)
        if res > tol:
            raise BracketFailureError(f"residual {res:.2e} exceeds tol at level {n}")
        pred.roots.append(QuantizationRoot(n=n, a=root, residual=res,
                                           bracket_lo=lo, bracket_hi=hi,
                                           nu_lo=nu_lo, nu_hi=nu_hi))
    return pred


def weyl_bounds(family: CurveFamily, lam: float, N: int | None = None) -> tuple[int, float]:
    """(lower, upper) eigenvalue-count bounds below lam.

    lower = floor(nu(lam) - nu(|a_hat| + eps)) from the normal-function ladder;
    upper = R_beta(-M lam)/(4 pi^2), the coherent-state average-count bound,
    with M = max over boundary points of exp(pi |m|^2 / 2).
    """
    if N is None:
        N = DEFAULT_ORDER
    a_hat = conifold_locate(family)
    if not lam > abs(a_hat):
        raise ValueError("lam must exceed |a_hat|")
    nu_lam = evaluate_periods(family, lam, N=N).nu
    edge = _nu_edge_value(family, abs(a_hat), N, 256)
    lower = max(math.floor(nu_lam - edge), 0)
    M = max(math.exp(math.pi * (m1 * m1 + m2 * m2) / 2.0) for (m1, m2) in family.phi.terms)
    upper = r_beta_negative_axis(family, M * lam, N=N) / (4 * math.pi ** 2)
    return lower, upper


def torsion_check(family: CurveFamily, a: float, N: int | None = None, tol: float = 1e-12) -> bool:
    """True when t(a) is real positive, certifying the regulator class is nontorsion."""
    if N is None:
        N = DEFAULT_ORDER
    a_hat = conifold_locate(family)
    if not a > abs(a_hat):
        raise ValueError("a must exceed |a_hat|")
    # Real series at a real argument: the imaginary part is identically zero;
    # positivity needs only a coarse tail bound.
    from .periods import constant_terms, _series_tail_bound
    ct = constant_terms(family, N)
    t = math.log(a)
    for k in range(1, N + 1):
        if ct[k]:
            t += (-1) ** (k - 1) / k * float(ct[k]) * a ** (-k)
    tail = _series_tail_bound(a, abs(a_hat), N)
    if not math.isfinite(tail):
        # At a barely above |a_hat| the geometric bound is useless, but the
        # terms decay like 1/k^2 there; bound the tail by the last term times
        # a harmonic factor.
        tail = abs(float(ct[N])) * a ** (-N) if ct[N] else 1e-3
    return t - tail > 0
