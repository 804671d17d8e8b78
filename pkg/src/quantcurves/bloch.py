"""Bloch-Wigner dilogarithm and exact root-of-unity divisors.

D2(z) = Im Li2(z) + arg(1-z) log|z| is evaluated through the six-fold
symmetry group {z, 1/z, 1-z, 1/(1-z), z/(z-1), (z-1)/z} plus the duplication
relation D2(z) = D2(z^2)/2 - D2(-z), reducing every argument to a disk where
the defining series converges fast.  Divisor points are exact roots of unity
so scissors reductions stay exact.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from math import fsum, gcd

from .errors import PoleAtOneOrZeroError

_SERIES_RADIUS = 0.72


def _d2_series(z: complex) -> float:
    # Im Li2 + arg(1-z) log|z| with Li2 summed directly; |z| <= radius keeps
    # the tail below 1e-19 within ~160 terms.
    terms_im = []
    w = z
    k = 1
    while True:
        terms_im.append(w.imag / (k * k))
        w *= z
        k += 1
        if abs(w) / (k * k) < 1e-19 or k > 400:
            break
    im_li2 = fsum(terms_im)
    r = abs(z)
    if r == 0.0:
        return 0.0
    return im_li2 + cmath.phase(1 - z) * math.log(r)


def bloch_wigner(z: complex, _depth: int = 0) -> float:
    """D2(z), accurate to ~1e-14; raises at the poles z = 0, 1 of the chain."""
    z = complex(z)
    if z == 0 or z == 1:
        raise PoleAtOneOrZeroError("D2 is evaluated at 0 or 1")
    if z.imag == 0.0:
        return 0.0
    # D2(w) = sign * D2(z) for the six Moebius images of z.
    candidates = [
        (z, 1.0),
        (1.0 / z, -1.0),
        (1.0 - z, -1.0),
        (1.0 / (1.0 - z), 1.0),
        (z / (z - 1.0), -1.0),
        ((z - 1.0) / z, 1.0),
    ]
    best, sign = min(candidates, key=lambda c: abs(c[0]))
    if abs(best) <= _SERIES_RADIUS:
        return sign * _d2_series(best)
    if _depth >= 6:
        # |z| ~ 1 near a sixth root of unity; series still converges, slowly.
        return sign * _d2_series(best)
    # Duplication: D2(z) = D2(z^2)/2 - D2(-z); both images leave the corner.
    return bloch_wigner(z * z, _depth + 1) / 2.0 - bloch_wigner(-z, _depth + 1)


def li2(z: complex) -> complex:
    """Principal-branch dilogarithm (series + inversion/reflection); test oracle use."""
    z = complex(z)
    if z == 1:
        return complex(math.pi ** 2 / 6, 0.0)
    if abs(z) <= 0.5:
        acc_re, acc_im = [], []
        w = z
        k = 1
        while abs(w) / (k * k) > 1e-19 and k < 500:
            acc_re.append(w.real / (k * k))
            acc_im.append(w.imag / (k * k))
            w *= z
            k += 1
        return complex(fsum(acc_re), fsum(acc_im))
    if abs(z) > 1.0:
        # Li2(z) = -Li2(1/z) - pi^2/6 - log(-z)^2 / 2
        lg = cmath.log(-z)
        return -li2(1.0 / z) - math.pi ** 2 / 6 - lg * lg / 2.0
    # Li2(z) = pi^2/6 - log(z) log(1-z) - Li2(1-z)
    return math.pi ** 2 / 6 - cmath.log(z) * cmath.log(1.0 - z) - li2(1.0 - z)


@dataclass(frozen=True)
class RootOfUnity:
    """exp(2 pi i num / den), stored exactly with 0 <= num < den."""
    num: int
    den: int

    @classmethod
    def make(cls, num: int, den: int) -> "RootOfUnity":
        if den <= 0:
            raise ValueError("den must be positive")
        num %= den
        g = gcd(num, den) or 1
        return cls(num // g, den // g)

    def conjugate(self) -> "RootOfUnity":
        return RootOfUnity.make(-self.num, self.den)

    def inverse(self) -> "RootOfUnity":
        return self.conjugate()

    def __mul__(self, other: "RootOfUnity") -> "RootOfUnity":
        return RootOfUnity.make(self.num * other.den + other.num * self.den, self.den * other.den)

    def value(self) -> complex:
        return cmath.exp(2j * math.pi * self.num / self.den)

    def is_real(self) -> bool:
        return self.num == 0 or 2 * self.num == self.den

    def __repr__(self) -> str:
        return f"zeta({self.num}/{self.den})"


class FormalDivisor:
    """Integer multiset of exact circle points, modulo [x] + [x-bar] = 0."""

    def __init__(self, points: dict[RootOfUnity, int] | None = None):
        self.points: dict[RootOfUnity, int] = {}
        for p, m in (points or {}).items():
            if m:
                self.points[p] = self.points.get(p, 0) + m
        self.points = {p: m for p, m in self.points.items() if m}

    def __add__(self, other: "FormalDivisor") -> "FormalDivisor":
        out = dict(self.points)
        for p, m in other.points.items():
            out[p] = out.get(p, 0) + m
        return FormalDivisor(out)

    def __rmul__(self, k: int) -> "FormalDivisor":
        return FormalDivisor({p: k * m for p, m in self.points.items()})

    @property
    def degree(self) -> int:
        return sum(self.points.values())

    def reduced(self) -> "FormalDivisor":
        """Fold conjugate points ([x] + [x-bar] = 0) and drop real points (D2 = 0)."""
        out: dict[RootOfUnity, int] = {}
        for p, m in self.points.items():
            if p.is_real():
                continue
            q = p.conjugate()
            # keep the representative in the upper half circle
            rep, sgn = (p, 1) if 2 * p.num < p.den else (q, -1)
            out[rep] = out.get(rep, 0) + sgn * m
        return FormalDivisor(out)

    def d2(self) -> float:
        """sum of multiplicities times D2 at the points; D2 vanishes at real points."""
        total = 0.0
        for p, m in self.points.items():
            if p.is_real():
                continue
            total += m * bloch_wigner(p.value())
        return total

    def __eq__(self, other) -> bool:
        return isinstance(other, FormalDivisor) and self.reduced().points == other.reduced().points

    def __repr__(self) -> str:
        inner = ", ".join(f"{m}*[{p}]" for p, m in sorted(self.points.items(), key=lambda t: (t[0].den, t[0].num)))
        return f"FormalDivisor({inner})"


def five_term_defect(x: complex, y: complex) -> float:
    """Numerical defect of the five-term relation at (x, y); ~0 for generic arguments."""
    pts = [x, y, (1 - x) / (1 - x * y), (1 - y) / (1 - x * y), 1 - x * y]
    return fsum(bloch_wigner(p) for p in pts)
