"""Direct quadrature of the second regulator period for the square family.

For phi = x1 + 1/x1 + x2 + 1/x2 at F = phi - u (u > 4 real), the period over
the cycle between the middle discriminant roots is

    R_beta(u) = int_{xi2}^{xi3} log((1 + sqrt(1-w)) / (1 - sqrt(1-w))) dx1/x1,
    w(x1) = 4 / (u - x1 - 1/x1)^2,

independent of all series machinery.  Asymptotically this is
4 log^2 u - 2 pi^2/3 + O(u^{-1} log u).
"""

from __future__ import annotations

import math

from scipy import integrate

from .errors import QuadratureFailureError


def discriminant_roots(u: float) -> tuple[float, float, float, float]:
    """The four positive roots xi1 < xi2 < xi3 < xi4 of (x + 1/x - u)^2 = 4."""
    roots = []
    for shift in (u + 2.0, u - 2.0):
        # x + 1/x = shift
        d = math.sqrt(shift * shift - 4.0)
        roots.extend([(shift - d) / 2.0, (shift + d) / 2.0])
    xi1, xi2, xi3, xi4 = sorted(roots)
    return xi1, xi2, xi3, xi4


def regulator_quadrature_p1xp1(u: float, tol: float = 1e-10) -> tuple[float, float]:
    """(R_beta, error_estimate) for the square family at parameter u > 4."""
    if not u > 4.0:
        raise QuadratureFailureError(f"need u > 4, got {u}")
    _, xi2, xi3, _ = discriminant_roots(u)
    # Substitute x = e^v; the cycle is v in [-V, V] with V = log(xi3), and the
    # integrand has square-root vanishing at the endpoints (mild for quad).
    V = math.log(xi3)

    def integrand(v: float) -> float:
        c = u - 2.0 * math.cosh(v)
        w = 4.0 / (c * c)
        if w >= 1.0:
            return 0.0
        s = math.sqrt(1.0 - w)
        return math.log((1.0 + s) / (1.0 - s))

    val, err = integrate.quad(integrand, -V, V, epsabs=tol * 0.1, epsrel=tol * 0.1, limit=400)
    if err > tol * max(1.0, abs(val)):
        raise QuadratureFailureError(f"quadrature error estimate {err:.2e} exceeds tolerance")
    return val, err
