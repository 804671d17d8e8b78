"""Exact lattice-polygon and Laurent-polynomial arithmetic.

Polygons are plane lattice polygons with the origin strictly interior;
Laurent polynomials map integer exponent vectors to exact rationals.
Everything here is exact: floats never enter.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import NonConvexError, OriginNotInteriorError

Point = tuple[int, int]


def _cross(o: Point, a: Point, b: Point) -> int:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


class LatticePolygon:
    """Convex lattice polygon, stored as a canonical counterclockwise vertex cycle.

    Canonical form: the lexicographically minimal rotation of the CCW vertex
    list, so equal polygons hash equally (used as cache keys).
    """

    __slots__ = ("vertices", "_edges")

    def __init__(self, vertices: Iterable[Sequence[int]]):
        pts = [tuple(int(c) for c in v) for v in vertices]
        if len(pts) < 3:
            raise NonConvexError("need at least 3 vertices")
        if len(set(pts)) != len(pts):
            raise NonConvexError("vertices are not distinct")
        # Accept either orientation on input; store CCW.
        area2 = sum(pts[i][0] * pts[(i + 1) % len(pts)][1] - pts[(i + 1) % len(pts)][0] * pts[i][1]
                    for i in range(len(pts)))
        if area2 < 0:
            pts.reverse()
        n = len(pts)
        for i in range(n):
            if _cross(pts[i], pts[(i + 1) % n], pts[(i + 2) % n]) <= 0:
                raise NonConvexError(f"vertices not in strictly convex CCW position near {pts[(i + 1) % n]}")
        start = min(range(n), key=lambda i: pts[i])
        self.vertices: tuple[Point, ...] = tuple(pts[start:] + pts[:start])
        self._edges = None
        if not self._origin_interior():
            raise OriginNotInteriorError("origin must be strictly interior")

    def _origin_interior(self) -> bool:
        return all(c > 0 for _, _, c in self.edge_inequalities())

    def edge_inequalities(self) -> list[tuple[int, int, int]]:
        """Primitive inward edge inequalities (u1, u2, c): polygon = {x : u.x + c >= 0}, c > 0."""
        if self._edges is None:
            out = []
            n = len(self.vertices)
            for i in range(n):
                (x0, y0), (x1, y1) = self.vertices[i], self.vertices[(i + 1) % n]
                # inward normal of CCW edge
                u = (-(y1 - y0), x1 - x0)
                g = math.gcd(abs(u[0]), abs(u[1]))
                u = (u[0] // g, u[1] // g)
                c = -(u[0] * x0 + u[1] * y0)
                out.append((u[0], u[1], c))
            self._edges = out
        return self._edges

    def contains(self, p: Sequence[int], dilation: int = 1) -> bool:
        """Membership in the dilated polygon `dilation * P` (dilation >= 0)."""
        return all(u1 * p[0] + u2 * p[1] + dilation * c >= 0 for u1, u2, c in self.edge_inequalities())

    def bounding_box(self) -> tuple[int, int, int, int]:
        xs = [v[0] for v in self.vertices]
        ys = [v[1] for v in self.vertices]
        return min(xs), max(xs), min(ys), max(ys)

    def lattice_points(self) -> Iterator[Point]:
        x0, x1, y0, y1 = self.bounding_box()
        for x in range(x0, x1 + 1):
            for y in range(y0, y1 + 1):
                if self.contains((x, y)):
                    yield (x, y)

    def _on_boundary(self, p: Point) -> bool:
        return any(u1 * p[0] + u2 * p[1] + c == 0 for u1, u2, c in self.edge_inequalities())

    @property
    def interior_points(self) -> tuple[Point, ...]:
        return tuple(p for p in self.lattice_points() if not self._on_boundary(p))

    @property
    def boundary_points(self) -> tuple[Point, ...]:
        return tuple(p for p in self.lattice_points() if self._on_boundary(p))

    @property
    def g(self) -> int:
        return len(self.interior_points)

    @property
    def r(self) -> int:
        return len(self.boundary_points)

    @property
    def area(self) -> Fraction:
        v = self.vertices
        n = len(v)
        twice = sum(v[i][0] * v[(i + 1) % n][1] - v[(i + 1) % n][0] * v[i][1] for i in range(n))
        return Fraction(twice, 2)

    def edges(self) -> list[tuple[Point, Point, Point, int]]:
        """Edges as (start, end, primitive direction, lattice length)."""
        out = []
        n = len(self.vertices)
        for i in range(n):
            a, b = self.vertices[i], self.vertices[(i + 1) % n]
            d = (b[0] - a[0], b[1] - a[1])
            length = math.gcd(abs(d[0]), abs(d[1]))
            out.append((a, b, (d[0] // length, d[1] // length), length))
        return out

    def is_reflexive(self) -> bool:
        """True iff every edge lies at integral distance 1 from the origin."""
        return all(c == 1 for _, _, c in self.edge_inequalities())

    def polar(self) -> "LatticePolygon | None":
        """Polar dual polygon; None when the polygon is not reflexive."""
        if not self.is_reflexive():
            return None
        # For an edge {u.x + 1 >= 0} of a reflexive polygon, -u is a vertex of
        # the polar, traversed in the same CCW order.
        return LatticePolygon([(-u1, -u2) for u1, u2, _ in self.edge_inequalities()])

    def pick_check(self) -> bool:
        return self.area == self.g + Fraction(self.r, 2) - 1

    def __eq__(self, other) -> bool:
        return isinstance(other, LatticePolygon) and self.vertices == other.vertices

    def __hash__(self) -> int:
        return hash(self.vertices)

    def __repr__(self) -> str:
        return f"LatticePolygon({list(self.vertices)})"


def classify_points(polygon: LatticePolygon):
    """Interior/boundary lattice points with counts (g, r) and, when reflexive, r_polar."""
    interior = list(polygon.interior_points)
    boundary = list(polygon.boundary_points)
    r_polar = None
    dual = polygon.polar()
    if dual is not None:
        r_polar = dual.r
    return interior, boundary, len(interior), len(boundary), r_polar


def is_reflexive(polygon: LatticePolygon) -> bool:
    return polygon.is_reflexive()


class LaurentPolynomial:
    """Laurent polynomial with exact rational coefficients and n-dim integer exponents.

    Most of the package works in two variables, but the exponent dimension is
    free so auxiliary variables (e.g. symbolic moduli probes) can ride along.
    Zero coefficients are never stored.
    """

    __slots__ = ("terms", "dim")

    def __init__(self, terms: Mapping[Sequence[int], Fraction | int] | None = None, dim: int = 2):
        self.terms: dict[tuple[int, ...], Fraction] = {}
        self.dim = dim
        if terms:
            for e, c in terms.items():
                c = Fraction(c)
                if c != 0:
                    e = tuple(int(x) for x in e)
                    self.dim = len(e)
                    self.terms[e] = self.terms.get(e, Fraction(0)) + c
            self.terms = {e: c for e, c in self.terms.items() if c != 0}

    @classmethod
    def monomial(cls, exponent: Sequence[int], coeff=1) -> "LaurentPolynomial":
        return cls({tuple(exponent): Fraction(coeff)}, dim=len(exponent))

    def __add__(self, other: "LaurentPolynomial") -> "LaurentPolynomial":
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, Fraction(0)) + c
        return LaurentPolynomial(out, dim=self.dim)

    def __sub__(self, other: "LaurentPolynomial") -> "LaurentPolynomial":
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, Fraction(0)) - c
        return LaurentPolynomial(out, dim=self.dim)

    def __mul__(self, other) -> "LaurentPolynomial":
        if isinstance(other, (int, Fraction)):
            return LaurentPolynomial({e: c * other for e, c in self.terms.items()}, dim=self.dim)
        out: dict[tuple[int, ...], Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return LaurentPolynomial(out, dim=self.dim)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return isinstance(other, LaurentPolynomial) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def constant_term(self, axes: Sequence[int] | None = None) -> "LaurentPolynomial | Fraction":
        """Constant term; with `axes`, collect terms whose exponent vanishes on those axes."""
        if axes is None:
            return self.terms.get((0,) * self.dim, Fraction(0))
        kept = {e: c for e, c in self.terms.items() if all(e[i] == 0 for i in axes)}
        return LaurentPolynomial(kept, dim=self.dim)

    def substitute_monomials(self, matrix: Sequence[Sequence[int]]) -> "LaurentPolynomial":
        """Monomial substitution x_i -> prod_j y_j^{M[j][i]}, i.e. exponents e -> M e."""
        out: dict[tuple[int, ...], Fraction] = {}
        for e, c in self.terms.items():
            ne = tuple(sum(matrix[j][i] * e[i] for i in range(len(e))) for j in range(len(matrix)))
            out[ne] = out.get(ne, Fraction(0)) + c
        return LaurentPolynomial(out, dim=self.dim)

    def shift(self, exponent: Sequence[int]) -> "LaurentPolynomial":
        """Multiply by the monomial x^exponent."""
        return LaurentPolynomial(
            {tuple(a + b for a, b in zip(e, exponent)): c for e, c in self.terms.items()}, dim=self.dim)

    def newton_polygon(self) -> LatticePolygon:
        if self.dim != 2:
            raise ValueError("newton_polygon needs 2 variables")
        pts = sorted(self.terms)
        hull = _convex_hull(pts)
        return LatticePolygon(hull)

    def evaluate(self, point: Sequence[complex]) -> complex:
        total = 0j
        for e, c in self.terms.items():
            v = complex(c)
            for x, p in zip(point, e):
                v *= x ** p
            total += v
        return total

    def __repr__(self) -> str:
        items = ", ".join(f"{tuple(e)}: {c}" for e, c in sorted(self.terms.items()))
        return f"LaurentPolynomial({{{items}}})"


def _convex_hull(points: list[Point]) -> list[Point]:
    # Andrew's monotone chain; returns CCW hull without repetition.
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts
    lower: list[Point] = []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[Point] = []
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def constant_term_power(phi: LaurentPolynomial, k: int, polygon: LatticePolygon | None = None) -> Fraction:
    """Exact constant term [phi^k]_0 by iterated multiplication with cone pruning."""
    if k < 0:
        raise ValueError("k must be >= 0")
    return constant_terms_up_to(phi, k, polygon)[k]


def constant_terms_up_to(phi: LaurentPolynomial, kmax: int,
                         polygon: LatticePolygon | None = None) -> list[Fraction]:
    """[phi^k]_0 for k = 0..kmax in one pass.

    An intermediate exponent e after i multiplications is dropped unless
    -e lies in (kmax - i) * Delta, since only then can further factors
    return it to the origin.
    """
    if polygon is None and len(phi.terms) >= 3:
        try:
            polygon = phi.newton_polygon()
        except (NonConvexError, OriginNotInteriorError):
            polygon = None
    out = [Fraction(1)] + [Fraction(0)] * kmax
    cur: dict[tuple[int, ...], Fraction] = {(0,) * phi.dim: Fraction(1)}
    base = list(phi.terms.items())
    for i in range(1, kmax + 1):
        nxt: dict[tuple[int, ...], Fraction] = {}
        remaining = kmax - i
        for e1, c1 in cur.items():
            for e2, c2 in base:
                e = tuple(a + b for a, b in zip(e1, e2))
                nxt[e] = nxt.get(e, Fraction(0)) + c1 * c2
        if polygon is not None:
            nxt = {e: c for e, c in nxt.items()
                   if c != 0 and polygon.contains((-e[0], -e[1]), remaining)}
        else:
            nxt = {e: c for e, c in nxt.items() if c != 0}
        cur = nxt
        out[i] = cur.get((0,) * phi.dim, Fraction(0))
    return out


def constant_term_power_naive(phi: LaurentPolynomial, k: int) -> Fraction:
    """Full-expansion oracle, no pruning. Test use only."""
    acc = LaurentPolynomial.monomial((0,) * phi.dim)
    for _ in range(k):
        acc = acc * phi
    return acc.terms.get((0,) * phi.dim, Fraction(0))


def unimodular_equivalence(p1: LatticePolygon, p2: LatticePolygon,
                           bound: int | None = None):
    """Search GL_2(Z) matrices M with M(p1) == p2; returns M or None.

    Brute force with entries bounded by the polygon diameter; intended for
    the small reflexive polygons only.
    """
    if bound is None:
        x0, x1, y0, y1 = p1.bounding_box()
        u0, u1b, w0, w1 = p2.bounding_box()
        bound = max(abs(v) for v in (x0, x1, y0, y1, u0, u1b, w0, w1)) + 1
    verts2 = set(p2.vertices)
    if len(p1.vertices) != len(p2.vertices):
        return None
    rng = range(-bound, bound + 1)
    for a, b, c, d in itertools.product(rng, repeat=4):
        if a * d - b * c not in (1, -1):
            continue
        image = {(a * x + b * y, c * x + d * y) for x, y in p1.vertices}
        if image == verts2:
            return ((a, b), (c, d))
    return None
