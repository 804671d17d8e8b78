"""Truncated power series with exact rational coefficients.

A RationalSeries carries a variable tag and a hard truncation order N;
operations never silently extend N (binary results use the smaller order).
Composition requires a zero constant term in the inner series.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Sequence

import mpmath as mp


class RationalSeries:
    __slots__ = ("var", "coeffs", "order")

    def __init__(self, coeffs: Sequence[Fraction | int], var: str = "x", order: int | None = None):
        if order is None:
            order = len(coeffs) - 1
        cs = [Fraction(c) for c in coeffs[:order + 1]]
        cs += [Fraction(0)] * (order + 1 - len(cs))
        self.coeffs = cs
        self.var = var
        self.order = order

    @classmethod
    def zero(cls, order: int, var: str = "x") -> "RationalSeries":
        return cls([], var=var, order=order)

    @classmethod
    def one(cls, order: int, var: str = "x") -> "RationalSeries":
        return cls([1], var=var, order=order)

    @classmethod
    def identity(cls, order: int, var: str = "x") -> "RationalSeries":
        return cls([0, 1], var=var, order=order)

    def __getitem__(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k <= self.order else Fraction(0)

    def _coerce(self, other) -> "RationalSeries":
        if isinstance(other, RationalSeries):
            return other
        return RationalSeries([other], var=self.var, order=self.order)

    def _binary_order(self, other: "RationalSeries") -> int:
        return min(self.order, other.order)

    def __add__(self, other) -> "RationalSeries":
        other = self._coerce(other)
        n = self._binary_order(other)
        return RationalSeries([self[k] + other[k] for k in range(n + 1)], var=self.var, order=n)

    __radd__ = __add__

    def __neg__(self) -> "RationalSeries":
        return RationalSeries([-c for c in self.coeffs], var=self.var, order=self.order)

    def __sub__(self, other) -> "RationalSeries":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "RationalSeries":
        return self._coerce(other) - self

    def __mul__(self, other) -> "RationalSeries":
        if isinstance(other, (int, Fraction)):
            return RationalSeries([c * other for c in self.coeffs], var=self.var, order=self.order)
        n = self._binary_order(other)
        out = [Fraction(0)] * (n + 1)
        for i, ci in enumerate(self.coeffs[:n + 1]):
            if ci == 0:
                continue
            for j in range(0, n - i + 1):
                cj = other[j]
                if cj:
                    out[i + j] += ci * cj
        return RationalSeries(out, var=self.var, order=n)

    __rmul__ = __mul__

    def inverse(self) -> "RationalSeries":
        if self.coeffs[0] == 0:
            raise ZeroDivisionError("series has zero constant term")
        n = self.order
        out = [Fraction(0)] * (n + 1)
        out[0] = 1 / self.coeffs[0]
        for k in range(1, n + 1):
            s = sum(self[i] * out[k - i] for i in range(1, k + 1))
            out[k] = -s / self.coeffs[0]
        return RationalSeries(out, var=self.var, order=n)

    def __truediv__(self, other) -> "RationalSeries":
        if isinstance(other, (int, Fraction)):
            return self * (Fraction(1) / Fraction(other))
        return self * other.inverse()

    def exp(self) -> "RationalSeries":
        """exp of a series with zero constant term."""
        if self.coeffs[0] != 0:
            raise ValueError("exp needs zero constant term")
        n = self.order
        out = [Fraction(0)] * (n + 1)
        out[0] = Fraction(1)
        for k in range(1, n + 1):
            out[k] = sum(Fraction(i) * self[i] * out[k - i] for i in range(1, k + 1)) / k
        return RationalSeries(out, var=self.var, order=n)

    def log(self) -> "RationalSeries":
        """log of a series with constant term 1."""
        if self.coeffs[0] != 1:
            raise ValueError("log needs constant term 1")
        n = self.order
        dlog = self.derivative() * self.inverse()
        out = [Fraction(0)] * (n + 1)
        for k in range(1, n + 1):
            out[k] = dlog[k - 1] / k
        return RationalSeries(out, var=self.var, order=n)

    def derivative(self) -> "RationalSeries":
        """d/dx, order drops by one."""
        n = max(self.order - 1, 0)
        return RationalSeries([Fraction(k + 1) * self[k + 1] for k in range(n + 1)], var=self.var, order=n)

    def euler(self) -> "RationalSeries":
        """x d/dx at the same order."""
        return RationalSeries([Fraction(k) * self[k] for k in range(self.order + 1)],
                              var=self.var, order=self.order)

    def compose(self, inner: "RationalSeries") -> "RationalSeries":
        """self(inner(x)); inner must have zero constant term."""
        if inner.coeffs[0] != 0:
            raise ValueError("composition needs zero inner constant term")
        n = min(self.order, inner.order)
        out = [Fraction(0)] * (n + 1)
        power = RationalSeries.one(n, var=inner.var)
        inner_n = RationalSeries(inner.coeffs, var=inner.var, order=n)
        for k in range(0, n + 1):
            ck = self[k]
            if ck:
                for i in range(n + 1):
                    out[i] += ck * power[i]
            if k < n:
                power = power * inner_n
        return RationalSeries(out, var=inner.var, order=n)

    def revert(self) -> "RationalSeries":
        """Compositional inverse of x + O(x^2) (unit linear coefficient required)."""
        if self.coeffs[0] != 0 or self.coeffs[1] != 1:
            raise ValueError("reversion needs the form x + O(x^2)")
        n = self.order
        v = RationalSeries.identity(n, var=self.var)
        for k in range(2, n + 1):
            err = self.compose(v)[k]
            cs = list(v.coeffs)
            cs[k] -= err
            v = RationalSeries(cs, var=self.var, order=n)
        return v

    def truncate(self, order: int) -> "RationalSeries":
        return RationalSeries(self.coeffs[:order + 1], var=self.var, order=min(order, self.order))

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def eval_mp(self, x, prec_bits: int = 256):
        """Evaluate at a point by Horner in mpmath at the given binary precision."""
        with mp.workprec(prec_bits):
            acc = mp.mpf(0) if not isinstance(x, mp.mpc) else mp.mpc(0)
            for c in reversed(self.coeffs):
                acc = acc * x + mp.mpf(c.numerator) / c.denominator
            return acc

    def map(self, f: Callable[[int, Fraction], Fraction]) -> "RationalSeries":
        return RationalSeries([f(k, c) for k, c in enumerate(self.coeffs)], var=self.var, order=self.order)

    def __eq__(self, other) -> bool:
        return (isinstance(other, RationalSeries) and self.order == other.order
                and self.coeffs == other.coeffs)

    def __repr__(self) -> str:
        shown = [f"{c}*{self.var}^{k}" for k, c in enumerate(self.coeffs[:6]) if c != 0]
        return f"RationalSeries({' + '.join(shown) or '0'} + O({self.var}^{self.order + 1}))"


class MultiSeries:
    """Sparse multivariate series: multi-exponent tuple -> Fraction, truncated by a weight.

    Used for the general-genus regulator expansions, where exponents of the
    moduli can be negative on one distinguished axis.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: dict[tuple[int, ...], Fraction] | None = None):
        self.terms = {tuple(e): Fraction(c) for e, c in (terms or {}).items() if c != 0}

    def __add__(self, other: "MultiSeries") -> "MultiSeries":
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, Fraction(0)) + c
        return MultiSeries(out)

    def coefficient(self, e: Sequence[int]) -> Fraction:
        return self.terms.get(tuple(e), Fraction(0))

    def __eq__(self, other) -> bool:
        return isinstance(other, MultiSeries) and self.terms == other.terms

    def __len__(self) -> int:
        return len(self.terms)

    def __repr__(self) -> str:
        return f"MultiSeries({len(self.terms)} terms)"
