"""Tempered curve families: fixed boundary coefficients plus symbolic interior moduli.

A family is determined by its Newton polygon together with one rational
coefficient per boundary lattice point; the g interior points carry the
moduli a_1..a_g.  Integral temperedness means every edge polynomial is
(1 + w)^d, which pins the boundary coefficients to binomial values once the
vertex coefficients are normalized to 1.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import InconsistentGenusError, NonTemperedError
from .lattice import LatticePolygon, LaurentPolynomial, Point


@dataclass(frozen=True)
class EdgePolynomial:
    """One-variable polynomial along an edge, coefficients listed from a chosen vertex."""
    index: int
    coeffs: tuple[Fraction, ...]

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_binomial_power(self) -> bool:
        d = self.degree
        return all(self.coeffs[i] == math.comb(d, i) for i in range(d + 1))


class CurveFamily:
    """Newton polygon + concrete boundary coefficients + ordered interior moduli slots."""

    def __init__(self, polygon: LatticePolygon, boundary_coeffs: Mapping[Point, Fraction | int],
                 name: str | None = None):
        self.polygon = polygon
        self.boundary_coeffs: dict[Point, Fraction] = {
            tuple(p): Fraction(c) for p, c in boundary_coeffs.items()}
        if set(self.boundary_coeffs) != set(polygon.boundary_points):
            raise ValueError("boundary coefficients must cover exactly the boundary lattice points")
        # Interior points ordered origin first, then descending lexicographically;
        # for the triangle families this realizes the indexing a_j at (1-j, 1-j)
        # resp. (1-j, 0).
        pts = sorted(polygon.interior_points, key=lambda p: (p != (0, 0), (-p[0], -p[1])))
        self.interior_points: tuple[Point, ...] = tuple(pts)
        self.name = name

    @property
    def g(self) -> int:
        return len(self.interior_points)

    @property
    def phi(self) -> LaurentPolynomial:
        """Boundary part of F (the moduli-independent piece)."""
        return LaurentPolynomial({p: c for p, c in self.boundary_coeffs.items()})

    def specialize(self, moduli: Sequence[Fraction | int]) -> LaurentPolynomial:
        """F at concrete moduli values."""
        if len(moduli) != self.g:
            raise ValueError(f"expected {self.g} moduli")
        terms = {p: c for p, c in self.boundary_coeffs.items()}
        for p, a in zip(self.interior_points, moduli):
            terms[p] = Fraction(a)
        return LaurentPolynomial(terms)

    def edge_polynomials(self) -> list[EdgePolynomial]:
        out = []
        for idx, (v0, _v1, direction, length) in enumerate(self.polygon.edges()):
            coeffs = []
            for i in range(length + 1):
                p = (v0[0] + i * direction[0], v0[1] + i * direction[1])
                coeffs.append(self.boundary_coeffs[p])
            out.append(EdgePolynomial(idx, tuple(coeffs)))
        return out

    def is_tempered(self) -> bool:
        return all(e.is_binomial_power() for e in self.edge_polynomials())

    def require_tempered(self) -> None:
        for e in self.edge_polynomials():
            if not e.is_binomial_power():
                raise NonTemperedError(f"edge {e.index} polynomial {e.coeffs} is not (1+w)^{e.degree}")

    def canonical_key(self) -> str:
        """Deterministic identity string for caching."""
        items = ";".join(f"{p[0]},{p[1]}:{c}" for p, c in sorted(self.boundary_coeffs.items()))
        return f"poly[{','.join(f'{x},{y}' for x, y in self.polygon.vertices)}]|{items}"

    def to_json(self) -> dict:
        return {
            "vertices": [list(v) for v in self.polygon.vertices],
            "boundary_coeffs": {f"{p[0]},{p[1]}": _fmt_rat(c) for p, c in sorted(self.boundary_coeffs.items())},
            "moduli": [f"a{j + 1}" for j in range(self.g)],
        }

    @classmethod
    def from_json(cls, data: dict, name: str | None = None) -> "CurveFamily":
        polygon = LatticePolygon(data["vertices"])
        coeffs = {}
        for key, val in data["boundary_coeffs"].items():
            x, y = key.split(",")
            coeffs[(int(x), int(y))] = _parse_rat(val)
        return cls(polygon, coeffs, name=name)

    def __repr__(self) -> str:
        return f"CurveFamily({self.name or self.canonical_key()})"


def _fmt_rat(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _parse_rat(s) -> Fraction:
    return Fraction(s) if not isinstance(s, str) else Fraction(*map(int, s.split("/"))) if "/" in s else Fraction(int(s))


def tempered_family(polygon: LatticePolygon, name: str | None = None) -> CurveFamily:
    """The unique integrally tempered family on `polygon` with vertex coefficients 1."""
    coeffs: dict[Point, Fraction] = {}
    for v0, _v1, direction, length in polygon.edges():
        for i in range(length + 1):
            p = (v0[0] + i * direction[0], v0[1] + i * direction[1])
            coeffs[p] = Fraction(math.comb(length, i))
    fam = CurveFamily(polygon, coeffs, name=name)
    fam.require_tempered()
    return fam


def family_mn(m: int, n: int, g: int | None = None) -> CurveFamily:
    """Tempered family on hull{(1,0),(0,1),(-m,-n)} with binomial mass corrections.

    The boundary corrections carry binomial coefficients along the two long
    edges, governed by g1 = gcd(m+1, n) and g2 = gcd(m, n+1).
    """
    if m < 1 or n < 1:
        raise ValueError("need m, n >= 1")
    polygon = LatticePolygon([(1, 0), (0, 1), (-m, -n)])
    if g is not None and polygon.g != g:
        raise InconsistentGenusError(f"polygon has {polygon.g} interior points, not {g}")
    fam = tempered_family(polygon, name=f"m_n:{m},{n}")
    # Cross-check the boundary against the explicit binomial-correction form.
    expected = {(1, 0): Fraction(1), (0, 1): Fraction(1), (-m, -n): Fraction(1)}
    g1 = math.gcd(m + 1, n)
    g2 = math.gcd(m, n + 1)
    for ell in range(1, g1):
        p = (1 - ell * (m + 1) // g1, -ell * n // g1)
        expected[p] = Fraction(math.comb(g1, ell))
    for ell in range(1, g2):
        p = (-ell * m // g2, 1 - ell * (n + 1) // g2)
        expected[p] = Fraction(math.comb(g2, ell))
    if expected != fam.boundary_coeffs:
        raise NonTemperedError("binomial correction form disagrees with tempered construction")
    return fam


def family_gg(g: int) -> CurveFamily:
    fam = family_mn(g, g)
    fam.name = f"gg:{g}"
    return fam


_NAMED: dict[str, list[Point]] = {
    # Newton polygon = fan polygon of the divisor surface S, X = K_S.
    "local_p2": [(1, 0), (0, 1), (-1, -1)],
    "local_p1xp1": [(1, 0), (0, 1), (-1, 0), (0, -1)],
    "local_f1": [(1, 0), (0, 1), (-1, -1), (0, -1)],
    "local_f2": [(1, 0), (0, 1), (-2, -1)],
}


def get_family(family_id: str) -> CurveFamily:
    """Resolve a named family: built-in names, 'gg:<g>', or 'm_n:<m>,<n>'."""
    fid = family_id.strip().lower()
    if fid in _NAMED:
        return tempered_family(LatticePolygon(_NAMED[fid]), name=fid)
    if fid.startswith("gg:"):
        return family_gg(int(fid.split(":", 1)[1]))
    if fid.startswith("m_n:"):
        m, n = fid.split(":", 1)[1].split(",")
        return family_mn(int(m), int(n))
    raise KeyError(f"unknown family id {family_id!r}")


def load_family(path: str) -> CurveFamily:
    with open(path, "r", encoding="utf-8") as fh:
        return CurveFamily.from_json(json.load(fh))


def builtin_family_ids() -> list[str]:
    return sorted(_NAMED)
