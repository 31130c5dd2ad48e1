"""Divisors supported on rational places of an elliptic curve."""
from __future__ import annotations

from typing import Iterable, Mapping

from .curve import INFINITY, CurvePoint, EllipticCurve
from .errors import CurveMismatch, PointNotOnCurve


class Divisor:
    """Finite formal sum of rational places with integer multiplicities."""

    __slots__ = ("curve", "_coeffs")

    def __init__(self, curve: EllipticCurve, coeffs: Mapping[CurvePoint, int] | Iterable = ()):
        self.curve = curve
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        acc: dict[CurvePoint, int] = {}
        for P, k in items:
            if not curve.is_on_curve(P):
                raise PointNotOnCurve(f"{P} is not on {curve}")
            acc[P] = acc.get(P, 0) + int(k)
        ordered = sorted((P for P, k in acc.items() if k), key=curve.point_key)
        self._coeffs = {P: acc[P] for P in ordered}

    @classmethod
    def point(cls, curve: EllipticCurve, P: CurvePoint, k: int = 1) -> "Divisor":
        return cls(curve, {P: k})

    @classmethod
    def at_infinity(cls, curve: EllipticCurve, k: int) -> "Divisor":
        return cls(curve, {INFINITY: k})

    @classmethod
    def sum_of(cls, curve: EllipticCurve, points: Iterable[CurvePoint]) -> "Divisor":
        return cls(curve, [(P, 1) for P in points])

    @property
    def coeffs(self) -> dict[CurvePoint, int]:
        return dict(self._coeffs)

    def items(self):
        return self._coeffs.items()

    def __getitem__(self, P: CurvePoint) -> int:
        return self._coeffs.get(P, 0)

    def _same(self, other: "Divisor"):
        if self.curve != other.curve:
            raise CurveMismatch("divisors live on different curves")

    def __add__(self, other: "Divisor") -> "Divisor":
        self._same(other)
        return Divisor(self.curve, list(self.items()) + list(other.items()))

    def __sub__(self, other: "Divisor") -> "Divisor":
        return self + (-other)

    def __neg__(self) -> "Divisor":
        return Divisor(self.curve, {P: -k for P, k in self.items()})

    def __mul__(self, n: int) -> "Divisor":
        return Divisor(self.curve, {P: n * k for P, k in self.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, Divisor) and self.curve == other.curve and self._coeffs == other._coeffs

    def __hash__(self):
        return hash((self.curve, tuple(self._coeffs.items())))

    def __repr__(self):
        if not self._coeffs:
            return "Divisor(0)"
        return "Divisor(" + " + ".join(f"{k}*{P}" for P, k in self.items()) + ")"

    @property
    def degree(self) -> int:
        return sum(self._coeffs.values())

    @property
    def support(self) -> list[CurvePoint]:
        return list(self._coeffs)

    @property
    def is_effective(self) -> bool:
        return all(k >= 0 for k in self._coeffs.values())

    def disjoint(self, other: "Divisor") -> bool:
        self._same(other)
        return not (self._coeffs.keys() & other._coeffs.keys())

    @property
    def affine_part(self) -> "Divisor":
        return Divisor(self.curve, {P: k for P, k in self.items() if not P.is_infinity})

    def to_json(self) -> list:
        return [{"point": self.curve.point_to_json(P), "mult": k} for P, k in self.items()]

    @classmethod
    def from_json(cls, curve: EllipticCurve, data: list) -> "Divisor":
        return cls(curve, [(curve.point_from_json(d["point"]), int(d["mult"])) for d in data])


def divisor_ops(A: Divisor, B: Divisor | None, op: str) -> Divisor:
    if op == "neg":
        return -A
    if op == "add":
        return A + B
    if op == "sub":
        return A - B
    raise ValueError(f"unknown divisor operation {op!r}")


def degree(A: Divisor) -> int:
    return A.degree


def support(A: Divisor) -> set[CurvePoint]:
    return set(A.support)


def is_effective(A: Divisor) -> bool:
    return A.is_effective


def disjoint(A: Divisor, B: Divisor) -> bool:
    return A.disjoint(B)
