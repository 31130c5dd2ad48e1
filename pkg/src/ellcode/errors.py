"""Exception hierarchy.

Every error carries the name of the module that raised it so the CLI can
report where a precondition was violated.
"""
from __future__ import annotations


class EllcodeError(ValueError):
    module = "ellcode"

    def to_dict(self) -> dict:
        return {"error": type(self).__name__, "module": self.module, "message": str(self)}


# finite_field
class FieldError(EllcodeError):
    module = "finite_field"


class NotPrime(FieldError):
    pass


class ReducibleModulus(FieldError):
    pass


class DegreeMismatch(FieldError):
    pass


class FieldMismatch(FieldError):
    pass


class DivisionByZero(FieldError, ZeroDivisionError):
    pass


class InvalidSubfieldDegree(FieldError):
    pass


# curve
class CurveError(EllcodeError):
    module = "curve"


class SingularCurve(CurveError):
    pass


class PointNotOnCurve(CurveError):
    pass


class FieldTooLarge(CurveError):
    pass


class CurveMismatch(CurveError):
    pass


# divisor
class DivisorError(EllcodeError):
    module = "divisor"


# curve_function
class FunctionError(EllcodeError):
    module = "curve_function"


class PoleAtPoint(FunctionError):
    pass


class ZeroFunction(FunctionError):
    pass


class UnsupportedPlace(FunctionError):
    pass


# automorphism
class AutomorphismError(EllcodeError):
    module = "automorphism"


class UnsupportedOrder(AutomorphismError):
    pass


# rr_basis
class BasisError(EllcodeError):
    module = "rr_basis"


class InvalidDegree(BasisError):
    pass


class CharThreeUnsupported(BasisError):
    pass


class DegenerateDenominator(BasisError):
    pass


class UnsupportedPoint(BasisError):
    pass


class NoSolution(BasisError):
    pass


class DuplicatePoints(BasisError):
    pass


class BadOrbitPoint(BasisError):
    pass


class OrbitCollision(BasisError):
    pass


class InsufficientPoints(BasisError):
    pass


# codes
class CodeError(EllcodeError):
    module = "codes"


class RaggedRows(CodeError):
    pass


class BadBlockLength(CodeError):
    pass


class CodeTooLarge(CodeError):
    pass


class NotQuasiCyclic(CodeError):
    pass


# families
class FamilyError(EllcodeError):
    module = "families"


class SupportOverlap(FamilyError):
    pass


class DegreeOutOfRange(FamilyError):
    pass


class NotInvariant(FamilyError):
    pass


class ExclusionViolated(FamilyError):
    pass


class FunctionInSpace(FamilyError):
    pass


class ExponentCaseViolated(FamilyError):
    pass


# distinguisher
class DistinguisherError(EllcodeError):
    module = "distinguisher"


class HypothesisViolated(DistinguisherError):
    pass


class NonIntegralBound(DistinguisherError):
    def __init__(self, message: str, value=None):
        super().__init__(message)
        self.value = value

    def to_dict(self) -> dict:
        out = super().to_dict()
        out["value"] = str(self.value)
        return out


class SideConditionViolated(DistinguisherError):
    pass


# cli
class CliError(EllcodeError):
    module = "cli"


class ParseError(CliError):
    pass


class ValidationError(CliError):
    pass


class IoError(CliError):
    pass
