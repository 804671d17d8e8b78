"""Maximal conifold points of the diagonal families, conifold multiples, and
the dilogarithm identities for their regulator periods.

For F_gg(x,y) = x + y + (xy)^{-g} + sum_j a_j (xy)^{1-j}, the g-nodal fiber
sits at the integer point a_hat with F(x,x) = 2x(T_{2g+1}(1/(2x)) + 1); the
single-node fibers on each a_j-axis, the residues of the dual 1-forms, and
the resulting coefficient asymptotics identify how many times each cycle
passes through each node (the conifold multiples kappa_j = gcd(2j-1, 2g+1)).
The identity checks compare log|a_hat_j| minus an exact lattice sum against
Bloch-Wigner values, grouping the sum by the GKZ z_j-exponent, which is the
grading in which it converges at the conifold.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath as mp

from .bloch import FormalDivisor, RootOfUnity, bloch_wigner
from .errors import (NotConvergedError, ParametrizationFailureError,
                     TailEstimateUnreliableError)
from .families import family_gg, family_mn
from .lattice import LaurentPolynomial

# ---------------------------------------------------------------------------
# Chebyshev conifold point
# ---------------------------------------------------------------------------


def chebyshev_coefficients(n: int) -> list[int]:
    """Integer coefficients of T_n, constant term first, by the exact recurrence."""
    t0, t1 = [1], [0, 1]
    if n == 0:
        return t0
    for _ in range(n - 1):
        t2 = [0] + [2 * c for c in t1]
        t2 = [a - b for a, b in zip(t2, t0 + [0] * (len(t2) - len(t0)))]
        t0, t1 = t1, t2
    return t1


def a_hat_vector(g: int) -> tuple[int, ...]:
    """Maximal conifold moduli: a_hat_j = (-1)^{g-j+1} (2g+1)/(2j-1) C(g+j-1, g-j+1), exact."""
    out = []
    for j in range(1, g + 1):
        val = Fraction((-1) ** (g - j + 1) * (2 * g + 1), 2 * j - 1) * math.comb(g + j - 1, g - j + 1)
        if val.denominator != 1:
            raise ArithmeticError(f"a_hat_{j} not integral for g={g}")
        out.append(int(val))
    # Cross-check against 2x (T_{2g+1}(1/(2x)) + 1) = 2x + sum_j a_hat_j x^{2-2j} + x^{-2g}.
    T = chebyshev_coefficients(2 * g + 1)
    for j in range(1, g + 1):
        i = j - 1
        tau = Fraction(T[2 * i + 1], 4 ** i)
        if tau != out[j - 1]:
            raise ArithmeticError(f"Chebyshev cross-check failed at g={g}, j={j}")
    if Fraction(T[2 * g + 1], 4 ** g) != 1:
        raise ArithmeticError("Chebyshev leading-term cross-check failed")
    return tuple(out)


@dataclass
class RingPoint:
    """Single-node point on the a_j-axis with its node and dual-form residue."""
    g: int
    j: int
    a_ring: float
    x_ring: float
    residue: float
    node_residual: float


def ring_point(g: int, j: int) -> RingPoint:
    """Axis point a_j = a_ring where the fiber acquires one node at (x_ring, x_ring).

    Solving 2u + 1 + w = 0, u = g + (j-1)w for u = x^{2g+1}, w = a x^{2(g-j+1)}
    gives x_ring = ((g-j+1)/(2j-1))^{1/(2g+1)} and
    a_ring = -((2g+1)/(2j-1)) ((2j-1)/(g-j+1))^{2(g-j+1)/(2g+1)}.
    """
    if not 1 <= j <= g:
        raise ValueError("need 1 <= j <= g")
    q = g - j + 1
    x = (q / (2 * j - 1)) ** (1.0 / (2 * g + 1))
    a = -((2 * g + 1) / (2 * j - 1)) * ((2 * j - 1) / q) ** (2 * q / (2 * g + 1))
    # node residual: F and dF/dx on the diagonal
    f = 2 * x ** (2 * g + 1) + 1 + a * x ** (2 * (g - j + 1))
    df = x ** (2 * g + 1) - g - (j - 1) * a * x ** (2 * (g - j + 1))
    res = math.sqrt(2 * g + 1) / (2 * math.pi * q * math.sqrt(2 * j - 1))
    return RingPoint(g=g, j=j, a_ring=a, x_ring=x, residue=res,
                     node_residual=max(abs(f), abs(df)))


@dataclass
class ConifoldData:
    g: int
    a_hat: tuple[int, ...]
    nodes: tuple[float, ...]
    node_residuals: tuple[float, ...]
    hessian_dets: tuple[float, ...]
    kappa: tuple[int, ...]
    ring_points: tuple[RingPoint, ...] = field(default_factory=tuple)


def _fgg_at_ahat(g: int) -> LaurentPolynomial:
    fam = family_gg(g)
    return fam.specialize([Fraction(v) for v in a_hat_vector(g)])


def chebyshev_conifold(g: int, with_kappa: bool = False,
                       kappa_rmax: int | None = None) -> ConifoldData:
    """Maximal conifold data with numerically certified double nodes.

    The conifold-multiple row is series-asymptotic work and is filled only on
    request (with_kappa=True); gcd values are cheap but the point of kappa_table
    is to *recover* them from coefficient growth.
    """
    ah = a_hat_vector(g)
    nodes, residuals, hdets = [], [], []
    F = _fgg_at_ahat(g)
    for j in range(1, g + 1):
        q = g - j + 1
        x = ((-1) ** (g - j) / 2.0) / math.cos(q * math.pi / (2 * g + 1))
        # diagonal restriction p(x) = x^{2g} F(x,x) = 2x^{2g+1} + 1 + sum a_j x^{2g+2-2j}
        def p(t: float) -> float:
            return 2 * t ** (2 * g + 1) + 1 + sum(ah[i] * t ** (2 * g - 2 * i) for i in range(g))

        def dp(t: float) -> float:
            return 2 * (2 * g + 1) * t ** (2 * g) + sum(
                (2 * g - 2 * i) * ah[i] * t ** (2 * g - 2 * i - 1) for i in range(g))

        def d2p(t: float) -> float:
            return 2 * (2 * g + 1) * (2 * g) * t ** (2 * g - 1) + sum(
                (2 * g - 2 * i) * (2 * g - 2 * i - 1) * ah[i] * t ** (2 * g - 2 * i - 2)
                for i in range(g) if 2 * g - 2 * i - 2 >= 0)

        scale = max(abs(p(x * 1.1)), 1.0)
        residuals.append(max(abs(p(x)), abs(dp(x))) / scale)
        if abs(d2p(x)) < 1e-8 * scale:
            raise ArithmeticError(f"node multiplicity exceeds 2 at g={g}, j={j}")
        nodes.append(x)
        # Hessian of G = x^g y^g F at the node must be nondegenerate.
        G = F.shift((g, g))
        hdets.append(_hessian_det(G, x, x))
    kappa = tuple(kappa_table(g, rmax=kappa_rmax)) if with_kappa else ()
    rings = tuple(ring_point(g, j) for j in range(1, g + 1))
    return ConifoldData(g=g, a_hat=ah, nodes=tuple(nodes), node_residuals=tuple(residuals),
                        hessian_dets=tuple(hdets), kappa=tuple(kappa), ring_points=rings)


def _hessian_det(poly: LaurentPolynomial, x: float, y: float) -> float:
    # exponents of the shifted polynomial are nonnegative
    fxx = fxy = fyy = 0.0
    for (e1, e2), c in poly.terms.items():
        fxx += float(c) * e1 * (e1 - 1) * x ** (e1 - 2) * y ** e2 if e1 >= 2 else 0.0
        fyy += float(c) * e2 * (e2 - 1) * x ** e1 * y ** (e2 - 2) if e2 >= 2 else 0.0
        fxy += float(c) * e1 * e2 * x ** (e1 - 1) * y ** (e2 - 1) if e1 >= 1 and e2 >= 1 else 0.0
    return fxy * fxy - fxx * fyy


# ---------------------------------------------------------------------------
# Conifold multiples
# ---------------------------------------------------------------------------


def _richardson(values: list[float], rs: list[int], depth: int = 3) -> list[float]:
    """Sliding Neville extrapolants (in 1/r) of the given depth."""
    ests = []
    for base in range(len(values) - depth):
        xs = [1.0 / rs[base + i] for i in range(depth + 1)]
        tab = [values[base + i] for i in range(depth + 1)]
        for lev in range(1, depth + 1):
            tab = [(tab[i + 1] * (0 - xs[i]) - tab[i] * (0 - xs[i + lev])) / (xs[i + lev] - xs[i])
                   for i in range(len(tab) - 1)]
        ests.append(tab[0])
    return ests


def conifold_multiple(b, c: float, residue: float, m_max: int | None = None,
                      spread_tol: float = 0.1, window: int = 20) -> tuple[int, float]:
    """kappa = round(lim_m b_m c^m m / residue), Richardson-accelerated.

    `b` is a sequence of exact or float coefficients b_1..b_M (index 1 first).
    Returns (kappa, extrapolation spread); raises NotConverged when the spread
    of depth-3 extrapolants over the last `window` terms is >= spread_tol.
    """
    bs = list(b)
    M = len(bs) if m_max is None else min(m_max, len(bs))
    logc = math.log(abs(c))
    sgn_c = 1.0 if c > 0 else -1.0
    terms = []
    rs = []
    for m in range(1, M + 1):
        bm = bs[m - 1]
        if bm == 0:
            continue
        if isinstance(bm, (int, Fraction)):
            num = Fraction(bm)
            lb = float(mp.log(abs(mp.mpf(num.numerator)))) - float(mp.log(mp.mpf(num.denominator)))
            sg = 1.0 if num > 0 else -1.0
        else:
            lb = math.log(abs(bm))
            sg = 1.0 if bm > 0 else -1.0
        val = sg * (sgn_c ** m) * math.exp(lb + m * logc) * m / residue
        terms.append(val)
        rs.append(m)
    if len(terms) < window + 4:
        raise NotConvergedError("too few terms for extrapolation")
    ests = _richardson(terms[-window:], rs[-window:], depth=3)
    spread = max(ests) - min(ests)
    if not spread < spread_tol:
        raise NotConvergedError(f"extrapolation spread {spread:.3f} >= {spread_tol}")
    kappa = round(ests[-1])
    return kappa, spread


def diagonal_series_coefficients(g: int, j: int, rmax: int) -> list[int]:
    """Exact coefficients b_r of the diagonal period S = 1 + sum_r b_r s^r, s = a_j^{-m_j}.

    b_r = (-1)^{m_j r} (m_j r)! / (((m_j-n_j)/2 r)!^2 (n_j r)!)  with
    n_j = (2j-1)/kappa_j, m_j = (2g+1)/kappa_j.
    """
    kap = math.gcd(2 * j - 1, 2 * g + 1)
    nj = (2 * j - 1) // kap
    mj = (2 * g + 1) // kap
    h = (mj - nj) // 2
    out = []
    for r in range(1, rmax + 1):
        val = math.factorial(mj * r) // (math.factorial(h * r) ** 2 * math.factorial(nj * r))
        out.append((-1) ** (mj * r) * val)
    return out


def kappa_table(g: int, rmax: int | None = None, spread_tol: float = 0.1) -> list[int]:
    """Conifold multiples (kappa_1..kappa_g) recovered from series asymptotics."""
    out = []
    for j in range(1, g + 1):
        kap_expected = math.gcd(2 * j - 1, 2 * g + 1)
        mj = (2 * g + 1) // kap_expected
        rp = ring_point(g, j)
        r_use = rmax or max(360, 2000 // mj)
        b = diagonal_series_coefficients(g, j, r_use)
        s_ring = rp.a_ring ** (-mj)  # m_j odd, a_ring < 0, so s_ring < 0
        kappa, _spread = conifold_multiple(b, s_ring, rp.residue, spread_tol=spread_tol)
        out.append(kappa)
    return out


# ---------------------------------------------------------------------------
# D_{m,n} and uniformizations
# ---------------------------------------------------------------------------


def dmn(m: int, n: int) -> float:
    """D_{m,n} = (m+n+1)/pi * D2(-z^{m+1} w), z = e^{i pi/(m+n+1)}, w = sin ratio."""
    if m < 1 or n < 1:
        raise ValueError("need m, n >= 1")
    N = m + n + 1
    z = cmath.exp(1j * math.pi / N)
    w = math.sin(m * math.pi / N) / math.sin(math.pi / N)
    return N / math.pi * bloch_wigner(-z ** (m + 1) * w)


@dataclass
class Uniformization:
    """Degree-1 rational parametrization of the maximal conifold fiber through node j."""
    g: int
    j: int
    x_node: float
    divisor: FormalDivisor
    reduced_divisor: FormalDivisor
    on_curve_residual: float

    def X(self, z: complex) -> complex:
        g, q = self.g, self.g - self.j + 1
        zeta = cmath.exp(1j * 2 * math.pi / (2 * g + 1))
        return self.x_node * (1 - 1 / z) ** (g + 1) / ((1 - zeta ** q / z) * (1 - zeta ** (2 * q) / z) ** g)

    def Y(self, z: complex) -> complex:
        g, q = self.g, self.g - self.j + 1
        zeta = cmath.exp(1j * 2 * math.pi / (2 * g + 1))
        return self.x_node * (1 - z / zeta ** (2 * q)) ** (g + 1) / ((1 - z / zeta ** q) * (1 - z) ** g)


def uniformization(g: int, j: int, n_random: int = 50, tol: float = 1e-10,
                   seed: int = 7) -> Uniformization:
    """Build the j-th parametrization and verify it lands on the conifold curve."""
    import random
    if not 1 <= j <= g:
        raise ValueError("need 1 <= j <= g")
    q = g - j + 1
    x_node = ((-1) ** (g - j) / 2.0) / math.cos(q * math.pi / (2 * g + 1))
    F = _fgg_at_ahat(g)
    # zero/pole data: X has divisor (g+1)[1] - [zeta^q] - g[zeta^{2q}],
    # Y has (g+1)[zeta^{2q}] - [zeta^q] - g[1]; the DK divisor pairs them up.
    N = 2 * g + 1
    div: dict[RootOfUnity, int] = {}
    xdata = [(RootOfUnity.make(0, 1), g + 1), (RootOfUnity.make(q, N), -1), (RootOfUnity.make(2 * q, N), -g)]
    ydata = [(RootOfUnity.make(2 * q, N), g + 1), (RootOfUnity.make(q, N), -1), (RootOfUnity.make(0, 1), -g)]
    for pa, da in xdata:
        for pb, eb in ydata:
            ratio = pa * pb.inverse()
            div[ratio] = div.get(ratio, 0) + da * eb
    divisor = FormalDivisor(div)
    uni = Uniformization(g=g, j=j, x_node=x_node, divisor=divisor,
                         reduced_divisor=divisor.reduced(), on_curve_residual=0.0)
    rng = random.Random(seed)
    worst = 0.0
    tested = 0
    while tested < n_random:
        z = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
        if min(abs(z), abs(z - 1), abs(z - cmath.exp(1j * 2 * math.pi * q / N)),
               abs(z - cmath.exp(1j * 4 * math.pi * q / N))) < 0.2:
            continue
        X, Y = uni.X(z), uni.Y(z)
        scale = sum(abs(complex(c)) * abs(X) ** e1 * abs(Y) ** e2 for (e1, e2), c in F.terms.items())
        worst = max(worst, abs(F.evaluate((X, Y))) / scale)
        tested += 1
    if not worst < tol:
        raise ParametrizationFailureError(f"on-curve residual {worst:.2e} exceeds {tol:.1e}")
    uni.on_curve_residual = worst
    return uni


# ---------------------------------------------------------------------------
# Theorem-B style identity checks
# ---------------------------------------------------------------------------


def _z_exponent_functional(g: int, j: int) -> list[Fraction]:
    """Coefficients c with n_j(l) = sum_k c_k l_k, the z_j-exponent of a lattice term.

    z-coordinates of the diagonal family: z_1 = a_2 / a_1^3 (or 1/a_1^3 at g=1),
    z_i = a_{i-1} a_{i+1} / a_i^2, z_g = a_{g-1} / a_g^2.
    """
    Z = [[Fraction(0)] * g for _ in range(g)]
    Z[0][0] = Fraction(-3)
    if g >= 2:
        Z[0][1] = Fraction(1)
    for i in range(1, g - 1):
        Z[i][i - 1] += 1
        Z[i][i] -= 2
        Z[i][i + 1] += 1
    if g >= 2:
        Z[g - 1][g - 2] += 1
        Z[g - 1][g - 1] -= 2
    # invert Z^T exactly
    n = g
    M = [[Z[i][k] for i in range(n)] for k in range(n)]
    inv = [[Fraction(1 if i == kk else 0) for kk in range(n)] for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if M[r][col] != 0)
        M[col], M[piv] = M[piv], M[col]
        inv[col], inv[piv] = inv[piv], inv[col]
        d = M[col][col]
        M[col] = [x / d for x in M[col]]
        inv[col] = [x / d for x in inv[col]]
        for r in range(n):
            if r != col and M[r][col] != 0:
                f = M[r][col]
                M[r] = [a - f * b for a, b in zip(M[r], M[col])]
                inv[r] = [a - f * b for a, b in zip(inv[r], inv[col])]
    row = inv[j - 1]  # n_j = sum_k row[k] e_k
    # e_k = l_k for k != j, e_j = -il_j(l) with il_j = ((2g+1) l_j + sum_{k!=j} (2k-1) l_k)/(2j-1)
    c = []
    for k in range(1, g + 1):
        if k == j:
            ck = -row[j - 1] * Fraction(2 * g + 1, 2 * j - 1)
        else:
            ck = row[k - 1] - row[j - 1] * Fraction(2 * k - 1, 2 * j - 1)
        c.append(ck)
    return c


@dataclass
class IdentityReport:
    g: int
    j: int
    lhs: float
    rhs: float
    residual: float
    tail_bound: float
    terms_used: int
    shells_used: int
    n_max: int
    fit_quality: float

    def to_json(self) -> dict:
        return {"g": self.g, "j": self.j, "lhs": f"{self.lhs:.17g}", "rhs": f"{self.rhs:.17g}",
                "residual": f"{self.residual:.3e}", "tail_bound": f"{self.tail_bound:.3e}",
                "terms_used": self.terms_used, "shells_used": self.shells_used,
                "n_max": self.n_max, "fit_quality": f"{self.fit_quality:.3e}"}


def _lattice_shells(g: int, j: int, n_max: int):
    """Exact shell sums of the (0.9) lattice series for F_gg at a = a_hat, grouped by n_j.

    Yields {n_j: Fraction}, where the series term is
    Gamma(il)/(Gamma(1+il')^2 prod Gamma(1+l_k)) (-a_j)^{-il} prod a_k^{l_k}.
    """
    ah = a_hat_vector(g)
    aj = ah[j - 1]
    c = _z_exponent_functional(g, j)
    # Enumeration order: coordinates with c_k > 0 first (budget-bounded), then
    # the c_k = 0 block bounded through il'_j >= 0.  Verified below.
    pos = [k for k in range(1, g + 1) if c[k - 1] > 0]
    zero = [k for k in range(1, g + 1) if c[k - 1] == 0]
    if any(ck < 0 for ck in c) or set(pos) | set(zero) != set(range(1, g + 1)):
        raise ArithmeticError(f"unexpected z-exponent functional {c} at (g,j)=({g},{j})")
    for k in zero:
        if k >= j:
            raise ArithmeticError("zero-coefficient coordinate not bounded by il' constraint")
    shells: dict[int, Fraction] = {}
    l = [0] * g
    count = 0

    def leaf():
        nonlocal count
        num_il = (2 * g + 1) * l[j - 1] + sum((2 * k - 1) * l[k - 1] for k in range(1, g + 1) if k != j)
        if num_il == 0 or num_il % (2 * j - 1):
            return
        il = num_il // (2 * j - 1)
        num_lp = (g - j + 1) * l[j - 1] + sum((k - j) * l[k - 1] for k in range(1, g + 1) if k != j)
        if num_lp % (2 * j - 1) or num_lp < 0:
            return
        lp = num_lp // (2 * j - 1)
        nj = sum(ck * lk for ck, lk in zip(c, l))
        if nj.denominator != 1:
            raise ArithmeticError(f"fractional z-exponent {nj} at l={l}; grading assumption broken")
        nj = int(nj)
        if nj > n_max:
            return
        # Gamma(il)/(Gamma(1+lp)^2 prod Gamma(1+l_k)) = multinomial(il; lp,lp,l)/il
        den = math.factorial(lp) ** 2
        for lk in l:
            den *= math.factorial(lk)
        term = Fraction(math.factorial(il), den * il)
        sign = 1
        if aj > 0 and il % 2:   # (-a_j)^{-il}
            sign = -sign
        mag = Fraction(1, abs(aj) ** il)
        for k in range(1, g + 1):
            if k != j and l[k - 1]:
                if ah[k - 1] < 0 and l[k - 1] % 2:
                    sign = -sign
                mag *= Fraction(abs(ah[k - 1]) ** l[k - 1])
        shells[nj] = shells.get(nj, Fraction(0)) + sign * term * mag
        count += 1

    def rec_zero(idx: int, slack: Fraction):
        # slack = (2j-1) il'_j given current l on pos coords; each zero coord k < j
        # consumes (j - k) per unit.
        if idx == len(zero):
            leaf()
            return
        k = zero[idx]
        wt = j - k
        top = int(slack // wt)
        for v in range(0, top + 1):
            l[k - 1] = v
            rec_zero(idx + 1, slack - wt * v)
        l[k - 1] = 0

    def rec_pos(idx: int, budget: Fraction):
        if idx == len(pos):
            # (2j-1) il'_j before the zero-coefficient block: every set coordinate counts.
            slack = Fraction((g - j + 1) * l[j - 1] + sum((k - j) * l[k - 1]
                                                          for k in pos if k != j))
            if slack >= 0:
                rec_zero(0, slack)
            return
        k = pos[idx]
        ck = c[k - 1]
        top = int(budget / ck)
        for v in range(0, top + 1):
            l[k - 1] = v
            rec_pos(idx + 1, budget - ck * v)
        l[k - 1] = 0

    rec_pos(0, Fraction(n_max))
    return shells, count


def theorem_b_check(g: int, j: int, n_max: int | None = None,
                    fit_tol: float = 0.5) -> IdentityReport:
    """Certify  (2g+1) gcd(2j-1, 2g+1)/pi D2(1 + zeta_{2g+1}^{g-j+1})
                = log|a_hat_j| - (lattice sum)  numerically.

    Shell sums beyond n_max are extrapolated with the A/n^2 law; the fit
    scatter is reported and must stay below fit_tol.
    """
    if n_max is None:
        n_max = {1: 2000, 2: 500, 3: 150}.get(g, 120)
    ah = a_hat_vector(g)
    q = g - j + 1
    kap = math.gcd(2 * j - 1, 2 * g + 1)
    lhs = (2 * g + 1) * kap / math.pi * bloch_wigner(1 + cmath.exp(1j * 2 * math.pi * q / (2 * g + 1)))
    shells, count = _lattice_shells(g, j, n_max)
    vals: dict[int, float] = {}
    for n, frac in shells.items():
        if frac:
            vals[n] = float(mp.mpf(frac.numerator) / mp.mpf(frac.denominator))
    ns = sorted(vals)
    S = math.fsum(vals[n] for n in ns)
    # Tail: fit A/n^2 on the last decade of nonzero shells.
    window = [n for n in ns if n > ns[-1] * 0.5] or ns[-3:]
    A = math.fsum(vals[n] * n * n for n in window) / len(window)
    scatter = max(abs(vals[n] * n * n - A) for n in window) / max(abs(A), 1e-300)
    gaps = [b - a for a, b in zip(ns, ns[1:]) if a > ns[-1] * 0.5]
    delta = min(gaps) if gaps else 1
    tail = 0.0
    n = ns[-1]
    while True:
        n += delta
        t = A / (n * n)
        tail += t
        if abs(t) < 1e-18 or n > ns[-1] * 10000:
            break
    if not scatter < fit_tol:
        raise TailEstimateUnreliableError(f"A/n^2 fit scatter {scatter:.2f} exceeds {fit_tol}")
    rhs = math.log(abs(ah[j - 1])) - (S + tail)
    tail_bound = abs(tail) * scatter + abs(A) / ns[-1] ** 2
    return IdentityReport(g=g, j=j, lhs=lhs, rhs=rhs, residual=abs(lhs - rhs),
                          tail_bound=tail_bound, terms_used=count, shells_used=len(ns),
                          n_max=n_max, fit_quality=scatter)


# ---------------------------------------------------------------------------
# Toric equivalence of the two families
# ---------------------------------------------------------------------------


def toric_equivalence_check(g: int, probes: list[Fraction] | None = None) -> bool:
    """F_gg(x,y) with moduli a equals, up to a monomial factor, F_{2g-1,1}(u,v)
    with moduli reversed, under u = 1/(xy), v = x^g y^{g-1}."""
    if probes is None:
        probes = [Fraction(p) for p in (2, 3, 5, 7, 11, 13, 17, 19)][:g]
    fgg = family_gg(g).specialize(probes)
    target = family_mn(2 * g - 1, 1).specialize(list(reversed(probes)))
    # x = u^{g-1} v, y = u^{-g} v^{-1}: exponents (e1, e2) -> ((g-1)e1 - g e2, e1 - e2)
    image = fgg.substitute_monomials([[g - 1, -g], [1, -1]])
    shifted = image.shift((1 - g, 0))
    return shifted == target
