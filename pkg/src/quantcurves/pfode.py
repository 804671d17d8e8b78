"""Discovery of annihilating ODE operators from exact series coefficients.

Operators are written in the Euler derivative delta = x d/dx:
L = sum_i P_i(x) delta^i with polynomial P_i.  Acting on sum c_k x^k, the
coefficient of x^n in L is  sum_{i,d} P[i][d] (n-d)^i c_{n-d}.

Used to validate holonomicity of the holomorphic period and, mainly, to
build its logarithmic Frobenius partner for the instanton extraction.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import NoOperatorFoundError


@dataclass(frozen=True)
class ODEOperator:
    """sum_i P_i(x) delta^i; coeff_table[i][d] is the x^d coefficient of P_i."""
    coeff_table: tuple[tuple[Fraction, ...], ...]

    @property
    def order(self) -> int:
        return len(self.coeff_table) - 1

    @property
    def degree(self) -> int:
        return max(len(p) for p in self.coeff_table) - 1

    def apply_coefficient(self, c: Sequence[Fraction], n: int) -> Fraction:
        """Coefficient of x^n in L(sum c_k x^k)."""
        total = Fraction(0)
        for i, poly in enumerate(self.coeff_table):
            for d, pd in enumerate(poly):
                k = n - d
                if pd and 0 <= k < len(c) and c[k]:
                    total += pd * Fraction(k) ** i * c[k]
        return total

    def annihilates(self, c: Sequence[Fraction], through: int | None = None) -> bool:
        top = len(c) - 1 if through is None else through
        return all(self.apply_coefficient(c, n) == 0 for n in range(top + 1))

    def indicial(self, k: int) -> Fraction:
        return sum(poly[0] * Fraction(k) ** i for i, poly in enumerate(self.coeff_table) if poly)

    def dlog_apply_coefficient(self, c: Sequence[Fraction], n: int) -> Fraction:
        """Coefficient of x^n in (dL/d delta)(sum c_k x^k)."""
        total = Fraction(0)
        for i, poly in enumerate(self.coeff_table):
            if i == 0:
                continue
            for d, pd in enumerate(poly):
                k = n - d
                if pd and 0 <= k < len(c) and c[k]:
                    total += Fraction(i) * pd * Fraction(k) ** (i - 1) * c[k]
        return total


def _nullspace_vector(rows: list[list[Fraction]], ncols: int) -> list[Fraction] | None:
    m = [row[:] for row in rows]
    pivot_of_col = [-1] * ncols
    r = 0
    for col in range(ncols):
        pr = next((i for i in range(r, len(m)) if m[i][col] != 0), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = 1 / m[r][col]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][col] != 0:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivot_of_col[col] = r
        r += 1
        if r == len(m):
            break
    free = [c for c in range(ncols) if pivot_of_col[c] < 0]
    if not free:
        return None
    sol = [Fraction(0)] * ncols
    fv = free[0]
    sol[fv] = Fraction(1)
    for col in range(ncols):
        if pivot_of_col[col] >= 0:
            sol[col] = -m[pivot_of_col[col]][fv]
    return sol


def discover_ode(coeffs: Sequence[Fraction], max_order: int = 3, max_degree: int = 10,
                 holdout: int = 20) -> ODEOperator:
    """Minimal annihilating operator, verified on `holdout` coefficients beyond the fit.

    Searches order 2 first (elliptic period expectation), then 3, raising the
    polynomial degree at each order.
    """
    c = [Fraction(x) for x in coeffs]
    for order in range(2, max_order + 1):
        for degree in range(1, max_degree + 1):
            nunk = (order + 1) * (degree + 1)
            nfit = nunk + 8
            if nfit + holdout > len(c):
                continue
            rows = []
            for n in range(nfit):
                row = []
                for i in range(order + 1):
                    for d in range(degree + 1):
                        k = n - d
                        row.append(Fraction(k) ** i * c[k] if 0 <= k < len(c) else Fraction(0))
                rows.append(row)
            sol = _nullspace_vector(rows, nunk)
            if sol is None:
                continue
            table = tuple(tuple(sol[i * (degree + 1):(i + 1) * (degree + 1)]) for i in range(order + 1))
            op = ODEOperator(table)
            if all(len([x for x in p if x != 0]) == 0 for p in table[1:]):
                continue  # degenerate: no derivative part
            if op.annihilates(c):
                return op
    raise NoOperatorFoundError(
        f"no operator of order <= {max_order}, degree <= {max_degree} fits {len(c)} coefficients")


def frobenius_log_partner(op: ODEOperator, f: Sequence[Fraction]) -> list[Fraction]:
    """Series h with L(f log x + h) = 0 and h(0) = 0, for an indicial double root at 0.

    Requires op to annihilate f and the indicial polynomial to be nonzero at
    every positive integer (maximal unipotent monodromy at x = 0).
    """
    n_top = len(f) - 1
    if op.indicial(0) != 0:
        raise ValueError("indicial polynomial must vanish at 0")
    h = [Fraction(0)] * (n_top + 1)
    for n in range(1, n_top + 1):
        sigma = op.indicial(n)
        if sigma == 0:
            raise ValueError(f"indicial polynomial vanishes at {n}; log partner is obstructed")
        # L(h) coefficient at x^n splits as sigma(n) h_n + (terms with h_k, k<n);
        # the log cross-term contributes (dL/d delta)(f).
        partial = op.apply_coefficient(h, n)  # h[n] is still 0 here
        rhs = -op.dlog_apply_coefficient(f, n)
        h[n] = (rhs - partial) / sigma
    return h
