"""Exception hierarchy shared across the package."""


class QuantCurvesError(Exception):
    """Base class for all package errors."""


class NonConvexError(QuantCurvesError):
    """Polygon vertices are not in strictly convex position."""


class OriginNotInteriorError(QuantCurvesError):
    """The origin is not strictly interior to the polygon."""


class NonTemperedError(QuantCurvesError):
    """An edge polynomial is not a power of (1 + w)."""


class InconsistentGenusError(QuantCurvesError):
    """Supplied interior-point count does not match the polygon."""


class NotReflexiveError(QuantCurvesError):
    """Operation requires a reflexive Newton polygon."""


class NonPositiveCoefficientsError(QuantCurvesError):
    """Conifold location needs strictly positive boundary coefficients."""


class OutsideDomainError(QuantCurvesError):
    """Evaluation point lies outside the convergence disk |a| > |a_hat|."""


class InsufficientOrderError(QuantCurvesError):
    """Series truncation order too small for the requested tolerance."""


class NoOperatorFoundError(QuantCurvesError):
    """No annihilating ODE operator within the search bounds."""


class QuadratureFailureError(QuantCurvesError):
    """Numerical quadrature error estimate exceeds tolerance."""


class BracketFailureError(QuantCurvesError):
    """Root bracketing for a quantization level failed."""


class OverflowGuardError(QuantCurvesError):
    """Matrix-element magnitude would overflow double precision."""


class TailDominatesError(QuantCurvesError):
    """Truncation tail exceeds the requested tolerance."""


class NotConvergedError(QuantCurvesError):
    """Extrapolation spread too large to round confidently."""


class PoleAtOneOrZeroError(QuantCurvesError):
    """Bloch-Wigner function is evaluated at 0 or 1."""


class ParametrizationFailureError(QuantCurvesError):
    """Rational parametrization fails the on-curve residual check."""


class TailEstimateUnreliableError(QuantCurvesError):
    """Tail-fit residual too large to certify the lattice-sum tail."""


class PathCrossesBranchPointError(QuantCurvesError):
    """Integration path passes too close to a ramification point."""


class ConfigError(QuantCurvesError):
    """Invalid run configuration."""
