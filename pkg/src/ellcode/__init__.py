"""Algebraic-geometry codes on elliptic curves over GF(p^m).

Field and curve arithmetic, Riemann-Roch bases for one-point, multipoint
and automorphism-orbit divisors, evaluation / quasi-cyclic / Goppa-like code
families, and Schur-square distinguisher bounds.
"""
__version__ = "0.1.0"

from .field import ExtField, FieldElement, SubfieldEmbedding  # noqa: E402
from .curve import INFINITY, CurvePoint, EllipticCurve  # noqa: E402
from .divisor import Divisor  # noqa: E402
from .function import CurveFunction, pole_certificate  # noqa: E402
from .automorphism import CurveAutomorphism, list_automorphisms, orbit  # noqa: E402
from .rr_basis import RRBasis, verify_basis  # noqa: E402
from .codes import LinearCode  # noqa: E402

__all__ = [
    "ExtField", "FieldElement", "SubfieldEmbedding", "INFINITY", "CurvePoint", "EllipticCurve",
    "Divisor", "CurveFunction", "pole_certificate", "CurveAutomorphism", "list_automorphisms",
    "orbit", "RRBasis", "verify_basis", "LinearCode",
]
