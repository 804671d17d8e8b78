"""Mirror maps, regulator periods, and local Gromov-Witten extraction for genus-1 families.

Conventions (all on the real slice a > |a_hat| unless noted):
  omega_gamma(a) = 1 + sum_{k>0} (-1)^k [phi^k]_0 a^{-k}
  t(a)           = log a + sum_{k>0} (-1)^{k-1} [phi^k]_0 a^{-k} / k      (real here)
  R_gamma        = -2*pi*i * t
  R_beta(a)      = (r0/2) t^2 + pi*i*r0*t + 4*pi^2*(1/2 + r0/12) - S2(t)
  Omega(a)       = (i*r0/2pi) t - r0/2 - S1(t)/(2*pi*i)
  nu(a)          = (r0/8pi^2) t^2 + (1/2 + r0/12) + [S2(t) + t*S1'(t)-style term]/(4pi^2)
with r0 the boundary count of the polar polygon and S* instanton sums over
integer BPS numbers n_d resummed through dilogarithms:
  S2(t) = sum_d n_d d Li2(q^d),  S1(t) = -sum_d n_d d^2 log(1 - q^d),  q = e^{-t}.
The rational degree-k instanton coefficients are N_k = k^{-3} sum_{d|k} d^3 n_d.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath as mp

from .errors import (InsufficientOrderError, NonPositiveCoefficientsError, NotReflexiveError,
                     NonTemperedError, OutsideDomainError)
from .families import CurveFamily
from .lattice import constant_terms_up_to
from .pfode import ODEOperator, discover_ode, frobenius_log_partner
from .series import MultiSeries, RationalSeries

DEFAULT_ORDER = 120

_ct_cache: dict[tuple[str, int], list[Fraction]] = {}
_gw_cache: dict[tuple[str, int], "GWData"] = {}


def constant_terms(family: CurveFamily, N: int) -> list[Fraction]:
    """[phi^k]_0 for k <= N, memoized per family and mirrored to the disk cache."""
    from . import cache as _cache
    key = (family.canonical_key(), N)
    if key not in _ct_cache:
        best = next((v for (k, n), v in _ct_cache.items() if k == key[0] and n >= N), None)
        if best is not None:
            _ct_cache[key] = best[:N + 1]
        else:
            ck = _cache.cache_key("ct", family.canonical_key(), str(N))
            disk = _cache.load_rationals(_cache.cache_dir(), ck)
            if disk is not None and len(disk) >= N + 1:
                _ct_cache[key] = disk[:N + 1]
            else:
                _ct_cache[key] = constant_terms_up_to(family.phi, N, family.polygon)
                _cache.store_rationals(_cache.cache_dir(), ck, _ct_cache[key])
    return _ct_cache[key]


def omega_gamma_series(family: CurveFamily, N: int = DEFAULT_ORDER) -> RationalSeries:
    """Holomorphic period sum_k (-1)^k [phi^k]_0 s^k in s = 1/a."""
    _require_genus1(family)
    ct = constant_terms(family, N)
    return RationalSeries([(-1) ** k * ct[k] for k in range(N + 1)], var="a_inv", order=N)


def mirror_map_series(family: CurveFamily, N: int = DEFAULT_ORDER) -> RationalSeries:
    """t(a) - log a as a series in s = 1/a."""
    _require_genus1(family)
    ct = constant_terms(family, N)
    coeffs = [Fraction(0)] + [Fraction((-1) ** (k - 1), k) * ct[k] for k in range(1, N + 1)]
    return RationalSeries(coeffs, var="a_inv", order=N)


def _require_genus1(family: CurveFamily) -> None:
    if family.g != 1:
        raise ValueError(f"genus-1 operation called on a genus-{family.g} family")
    family.require_tempered()


def pf_discover(family: CurveFamily, max_order: int = 3, max_degree: int = 10,
                N: int | None = None) -> ODEOperator:
    """Minimal operator annihilating omega_gamma, verified on 20 holdout coefficients."""
    if N is None:
        N = max(DEFAULT_ORDER, (max_order + 1) * (max_degree + 1) + 40)
    f = omega_gamma_series(family, N)
    return discover_ode(f.coeffs, max_order=max_order, max_degree=max_degree, holdout=20)


@dataclass
class GWData:
    """Instanton data of a reflexive family: rational degree-k invariants and integer BPS numbers."""
    family_key: str
    r_circ: int
    gw: dict[int, Fraction]
    bps: dict[int, Fraction]
    T: Fraction
    B_circ: Fraction
    operator: ODEOperator
    order: int


def gw_extract(family: CurveFamily, kmax: int = 0, N: int | None = None) -> GWData:
    """Invert the mirror map and read instanton numbers off the second period.

    The logarithmic Frobenius partner h of omega_gamma pins the second period
    by the normalization Omega ~ (i r0/2pi) t - r0/2, which yields
      sum_k k^2 N_k Q^k = -r0 * (tau(s) + h(s)/omega_gamma(s)) at s = s(Q),
    all in exact rationals.
    """
    _require_genus1(family)
    if not family.polygon.is_reflexive():
        raise NotReflexiveError("instanton extraction needs a reflexive polygon")
    if N is None:
        N = max(DEFAULT_ORDER, kmax + 20)
    N = max(N, 64)  # operator discovery needs (order+1)(degree+1) + holdout coefficients
    key = (family.canonical_key(), N)
    if key in _gw_cache:
        return _gw_cache[key]
    r0 = family.polygon.polar().r
    f = omega_gamma_series(family, N)
    tau = mirror_map_series(family, N)
    op = discover_ode(f.coeffs, max_order=3, max_degree=10, holdout=20)
    h = RationalSeries(frobenius_log_partner(op, f.coeffs), var="a_inv", order=N)
    G = tau + h * f.inverse()
    # Q(s) = s * exp(-tau(s)); revert to s(Q), then expand G in Q.
    Qs = ((-tau).exp() * RationalSeries.identity(N, var="a_inv")).truncate(N)
    s_of_Q = Qs.revert()
    GQ = G.compose(s_of_Q)
    gw: dict[int, Fraction] = {}
    for k in range(1, N + 1):
        c = GQ[k]
        if c:
            gw[k] = -r0 * c / (k * k)
    bps: dict[int, Fraction] = {}
    for k in sorted(gw):
        s = sum(Fraction(d) ** 3 * bps[d] for d in bps if k % d == 0)
        bps[k] = (Fraction(k) ** 3 * gw[k] - s) / Fraction(k) ** 3
    data = GWData(family_key=family.canonical_key(), r_circ=r0, gw=gw, bps=bps,
                  T=Fraction(1, 2) + Fraction(r0, 12), B_circ=Fraction(1, 2) - Fraction(r0, 24),
                  operator=op, order=N)
    _gw_cache[key] = data
    return data


def conifold_locate(family: CurveFamily, tol: float = 1e-14) -> float:
    """a_hat < 0 with -a_hat = min of phi on the positive quadrant.

    phi(e^v) is a positive sum of exponentials of affine forms, hence convex
    in v; Newton iteration converges from any of a few starts.
    """
    if family.g != 1:
        raise ValueError(f"genus-1 operation called on a genus-{family.g} family")
    terms = [(e, c) for e, c in family.phi.terms.items()]
    if any(c <= 0 for _, c in terms):
        raise NonPositiveCoefficientsError("conifold location needs positive boundary coefficients")
    family.require_tempered()
    best = None
    for start in ((0.0, 0.0), (0.5, -0.5), (-0.5, 0.5)):
        v = list(start)
        for _ in range(200):
            fval = g1 = g2 = h11 = h12 = h22 = 0.0
            for (m1, m2), c in terms:
                w = float(c) * math.exp(m1 * v[0] + m2 * v[1])
                fval += w
                g1 += m1 * w
                g2 += m2 * w
                h11 += m1 * m1 * w
                h12 += m1 * m2 * w
                h22 += m2 * m2 * w
            gn = math.hypot(g1, g2)
            if gn < tol * max(1.0, fval):
                break
            det = h11 * h22 - h12 * h12
            dv1 = (h22 * g1 - h12 * g2) / det
            dv2 = (h11 * g2 - h12 * g1) / det
            step = 1.0
            while step > 1e-8:
                cand = (v[0] - step * dv1, v[1] - step * dv2)
                if sum(float(c) * math.exp(m1 * cand[0] + m2 * cand[1]) for (m1, m2), c in terms) <= fval:
                    break
                step /= 2
            v = [v[0] - step * dv1, v[1] - step * dv2]
        val = sum(float(c) * math.exp(m1 * v[0] + m2 * v[1]) for (m1, m2), c in terms)
        if best is None or val < best:
            best = val
    return -best


@dataclass
class PeriodValue:
    """Periods at one real point a > |a_hat|, with a combined truncation/roundoff estimate."""
    a: float
    t: float
    omega_gamma: float
    Omega: complex
    R_gamma: complex
    R_beta: complex
    nu: float
    V: float
    error_estimate: float
    order: int
    prec_bits: int


def _series_tail_bound(a_abs: float, a_hat_abs: float, N: int) -> float:
    # [phi^k]_0 <= |a_hat|^k  (AM-GM at the positive critical point), so the
    # dropped tail of both t and omega_gamma is geometric.
    rho = a_hat_abs / a_abs
    if rho >= 1:
        return math.inf
    return rho ** (N + 1) / (1 - rho)


def _bps_tail_ratio(bps: dict[int, Fraction], t_val: float) -> tuple[float, float]:
    """(ratio, last_term_bound) for the geometric majorant of the instanton sums."""
    ks = sorted(bps)
    last = ks[-10:] if len(ks) >= 10 else ks
    growth = max(abs(float(bps[k])) ** (1.0 / k) for k in last)
    ratio = growth * math.exp(-t_val)
    kmax = ks[-1]
    last_mag = abs(float(bps[kmax])) * math.exp(-kmax * t_val) * (kmax ** 2) * (1 + kmax * abs(t_val))
    return ratio, last_mag


def evaluate_periods(family: CurveFamily, a: float, N: int | None = None,
                     prec_bits: int = 256, tol: float = 1e-12) -> PeriodValue:
    """Evaluate t, omega_gamma, Omega, R_gamma, R_beta, nu, V at real a > |a_hat|."""
    _require_genus1(family)
    if N is None:
        N = DEFAULT_ORDER
    a_hat = conifold_locate(family)
    if not a > abs(a_hat):
        raise OutsideDomainError(f"a = {a} is not above |a_hat| = {abs(a_hat)}")
    tail_t = _series_tail_bound(a, abs(a_hat), N)
    if not tail_t < tol:
        raise InsufficientOrderError(
            f"series tail {tail_t:.2e} exceeds tol {tol:.1e} at a = {a}; raise N")
    gwd = gw_extract(family, N=N)
    r0 = gwd.r_circ
    with mp.workprec(prec_bits):
        am = mp.mpf(a)
        s = 1 / am
        tau = mirror_map_series(family, N).eval_mp(s, prec_bits)
        t_val = mp.log(am) + tau
        og = omega_gamma_series(family, N).eval_mp(s, prec_bits)
        q = mp.exp(-t_val)
        ratio, last_mag = _bps_tail_ratio(gwd.bps, float(t_val))
        if ratio >= 0.9:
            raise InsufficientOrderError(
                f"instanton majorant ratio {ratio:.3f} too close to 1 at a = {a}")
        tail_bps = last_mag * ratio / (1 - ratio)
        if not tail_bps < tol:
            raise InsufficientOrderError(
                f"instanton tail {tail_bps:.2e} exceeds tol {tol:.1e}; raise N")
        S2 = mp.mpf(0)   # sum_k k N_k q^k     = sum_d n_d d Li2(q^d)
        S1 = mp.mpf(0)   # sum_k k^2 N_k q^k   = -sum_d n_d d^2 log(1-q^d)
        SN = mp.mpf(0)   # sum_k k(1+kt) N_k q^k
        for d, nd in gwd.bps.items():
            if nd == 0:
                continue
            nd_m = mp.mpf(nd.numerator) / nd.denominator
            qd = q ** d
            li2 = mp.polylog(2, qd)
            li1 = -mp.log(1 - qd)
            S2 += nd_m * d * li2
            S1 += nd_m * d * d * li1
            SN += nd_m * d * (li2 + d * t_val * li1)
        pi = mp.pi
        T = mp.mpf(gwd.T.numerator) / gwd.T.denominator
        R_gamma = -2 * pi * 1j * t_val
        # (2 pi i)^2 T = -4 pi^2 T; with this sign, R_gamma*Omega - R_beta = 4 pi^2 nu.
        R_beta = mp.mpf(r0) / 2 * t_val ** 2 + pi * 1j * r0 * t_val - 4 * pi ** 2 * T - S2
        Omega = 1j * r0 / (2 * pi) * t_val - mp.mpf(r0) / 2 - S1 / (2 * pi * 1j)
        nu = mp.mpf(r0) / (8 * pi ** 2) * t_val ** 2 + T + SN / (4 * pi ** 2)
        V = og * nu
        err = float(tail_t + tail_bps) + math.ldexp(1.0, -prec_bits // 2)
        return PeriodValue(a=float(am), t=float(t_val), omega_gamma=float(og),
                           Omega=complex(Omega), R_gamma=complex(R_gamma), R_beta=complex(R_beta),
                           nu=float(nu), V=float(V), error_estimate=err, order=N, prec_bits=prec_bits)


def nu_from_pairing(family: CurveFamily, a: float, N: int | None = None,
                    prec_bits: int = 256) -> float:
    """nu via the functional pairing (R_gamma * Omega - R_beta) / (4 pi^2); cross-check route."""
    pv = evaluate_periods(family, a, N=N, prec_bits=prec_bits)
    val = (pv.R_gamma * pv.Omega - pv.R_beta) / (4 * math.pi ** 2)
    return val.real


def r_beta_negative_axis(family: CurveFamily, u: float, N: int | None = None,
                         prec_bits: int = 256) -> float:
    """R_beta at a = -u (u > |a_hat|) on the branch with t = log u - pi*i + O(1/u).

    Substituting that branch into the R_beta expansion gives the real value
      (r0/2) L^2 + pi^2 (r0/6 - 2) - sum_d n_d d Li2((-e^{-L})^d),
    with L = log u - sum_k [phi^k]_0 u^{-k} / k.
    """
    _require_genus1(family)
    if N is None:
        N = DEFAULT_ORDER
    a_hat = conifold_locate(family)
    if not u > abs(a_hat):
        raise OutsideDomainError(f"u = {u} is not above |a_hat| = {abs(a_hat)}")
    gwd = gw_extract(family, N=N)
    r0 = gwd.r_circ
    ct = constant_terms(family, N)
    with mp.workprec(prec_bits):
        um = mp.mpf(u)
        L = mp.log(um) - mp.fsum(
            mp.mpf(ct[k].numerator) / ct[k].denominator / k * um ** (-k)
            for k in range(1, N + 1) if ct[k])
        S2 = mp.mpf(0)
        base = -mp.e ** (-L)
        for d, nd in gwd.bps.items():
            if nd == 0:
                continue
            S2 += mp.mpf(nd.numerator) / nd.denominator * d * mp.polylog(2, base ** d)
        val = mp.mpf(r0) / 2 * L ** 2 + mp.pi ** 2 * (mp.mpf(r0) / 6 - 2) - S2
        return float(val)


# ---------------------------------------------------------------------------
# Regulator and classical-period expansions for any genus (multivariate, exact)
# ---------------------------------------------------------------------------

def _shifted_boundary_poly(family: CurveFamily, j: int) -> tuple:
    """F_j = P_j^{-1} (F - a_j P_j) as a Laurent polynomial in (x, y, a_1, .., a_g \\ a_j).

    Exponent tuples are (e_x, e_y, moduli...) with the j-th modulus omitted.
    """
    from .lattice import LaurentPolynomial
    pj = family.interior_points[j - 1]
    others = [p for i, p in enumerate(family.interior_points) if i != j - 1]
    dim = 2 + len(others)
    terms = {}
    for p, c in family.boundary_coeffs.items():
        e = (p[0] - pj[0], p[1] - pj[1]) + (0,) * len(others)
        terms[e] = c
    for idx, p in enumerate(others):
        e = [p[0] - pj[0], p[1] - pj[1]] + [0] * len(others)
        e[2 + idx] = 1
        terms[tuple(e)] = Fraction(1)
    return LaurentPolynomial(terms, dim=dim), others


def regulator_gamma_series(family: CurveFamily, j: int = 1, N: int = 24,
                           convention: str = "appendix") -> MultiSeries:
    """Exact expansion of (1/2 pi i) R_{gamma_j} -/+ log a_j as a multivariate series.

    Exponent tuples run over the moduli (a_1..a_g); the a_j entry is negative.
    convention "appendix": series part of -log a_j + sum_k (-1)^k [F_j^k]_0 a_j^{-k} / k
    (R_gamma ~ -2 pi i log a_j); "conifold" flips the overall sign (the
    orientation used at the maximal conifold point).
    """
    if not 1 <= j <= family.g:
        raise ValueError(f"j must be in 1..{family.g}")
    family.require_tempered()
    if convention not in ("appendix", "conifold"):
        raise ValueError("convention must be 'appendix' or 'conifold'")
    fj, others = _shifted_boundary_poly(family, j)
    from .lattice import LaurentPolynomial
    poly = None
    try:
        poly = LaurentPolynomial({(e[0], e[1]): 1 for e in fj.terms}).newton_polygon()
    except Exception:
        poly = None
    out: dict[tuple[int, ...], Fraction] = {}
    cur = {(0,) * fj.dim: Fraction(1)}
    base = list(fj.terms.items())
    for m in range(1, N + 1):
        nxt: dict[tuple[int, ...], Fraction] = {}
        remaining = N - m
        for e1, c1 in cur.items():
            for e2, c2 in base:
                e = tuple(x + y for x, y in zip(e1, e2))
                nxt[e] = nxt.get(e, Fraction(0)) + c1 * c2
        if poly is not None:
            nxt = {e: c for e, c in nxt.items() if c != 0 and poly.contains((-e[0], -e[1]), remaining)}
        cur = nxt
        sign = Fraction((-1) ** m, m)
        for e, c in cur.items():
            if e[0] == 0 and e[1] == 0 and c != 0:
                # contributes c * a_j^{-m} * prod a_k^{e_k}
                full = [0] * family.g
                full[j - 1] = -m
                for idx in range(len(others)):
                    oi = idx if idx < j - 1 else idx + 1
                    full[oi] = e[2 + idx]
                key = tuple(full)
                out[key] = out.get(key, Fraction(0)) + sign * c
    if convention == "conifold":
        out = {e: -c for e, c in out.items()}
    return MultiSeries(out)


def classical_period_series(family: CurveFamily, j: int, ell: int, N: int = 24) -> MultiSeries:
    """Pi_{j ell} = delta_{ell j} + delta_{a_ell} applied to the regulator expansion.

    On the a_j-axis this reduces, for the diagonal families, to the
    single-variable hypergeometric-type series; Pi_{j ell} vanishes there
    for ell != j.
    """
    reg = regulator_gamma_series(family, j, N, convention="appendix")
    out: dict[tuple[int, ...], Fraction] = {}
    zero = tuple([0] * family.g)
    if ell == j:
        out[zero] = Fraction(1)
    for e, c in reg.terms.items():
        w = e[ell - 1]
        if w:
            # delta_{a_ell} multiplies by the a_ell-exponent; the appendix sign
            # convention makes Pi_{jj}(infty) = 1.
            out[e] = out.get(e, Fraction(0)) - w * c
    return MultiSeries(out)
