"""quantcurves: regulator periods, normal functions, and operator spectra of mirror curves."""

from .families import CurveFamily, family_gg, family_mn, get_family, tempered_family
from .lattice import LatticePolygon, LaurentPolynomial, classify_points, constant_term_power

__all__ = [
    "CurveFamily", "LatticePolygon", "LaurentPolynomial",
    "classify_points", "constant_term_power",
    "family_gg", "family_mn", "get_family", "tempered_family",
]

__version__ = "0.1.0"
