"""Elliptic curves in general Weierstrass form over GF(p^m).

    E: y^2 + a1 x y + a3 y = x^3 + a2 x^2 + a4 x + a6

Coordinates and coefficients are element codes of ``curve.field``.
"""
from __future__ import annotations

import os
from math import isqrt
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional

from . import poly
from .errors import FieldMismatch, FieldTooLarge, PointNotOnCurve, SingularCurve
from .field import ExtField, FieldElement

DEFAULT_ENUM_CAP = 1 << 16


def enumeration_cap() -> int:
    env = os.environ.get("ELLCODE_ENUM_CAP")
    return int(env) if env else DEFAULT_ENUM_CAP


@dataclass(frozen=True)
class CurvePoint:
    """Affine point (x, y) or the point at infinity (x = y = None)."""

    x: Optional[int] = None
    y: Optional[int] = None

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    def __repr__(self):
        return "P_inf" if self.x is None else f"({self.x},{self.y})"


INFINITY = CurvePoint()


class EllipticCurve:
    def __init__(self, field: ExtField, a1=0, a2=0, a3=0, a4=0, a6=0):
        self.field = field
        self.a1, self.a2, self.a3, self.a4, self.a6 = (self._coef(c) for c in (a1, a2, a3, a4, a6))
        if self.discriminant == 0:
            raise SingularCurve(f"discriminant vanishes for {self}")

    def _coef(self, c) -> int:
        if isinstance(c, FieldElement):
            if c.field != self.field:
                raise FieldMismatch("coefficient from another field")
            return c.code
        if isinstance(c, (list, tuple)):
            return self.field.from_coeffs(c)
        return self.field.check(int(c))

    @classmethod
    def short(cls, field: ExtField, a4=0, a6=0) -> "EllipticCurve":
        """y^2 = x^3 + a4 x + a6."""
        return cls(field, 0, 0, 0, a4, a6)

    @classmethod
    def char2_supersingular(cls, field: ExtField, a3, a4=0, a6=0) -> "EllipticCurve":
        """y^2 + a3 y = x^3 + a4 x + a6."""
        return cls(field, 0, 0, a3, a4, a6)

    @classmethod
    def char2_ordinary(cls, field: ExtField, a2=0, a6=1) -> "EllipticCurve":
        """y^2 + x y = x^3 + a2 x^2 + a6."""
        return cls(field, 1, a2, 0, 0, a6)

    @property
    def coefficients(self) -> tuple[int, int, int, int, int]:
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    def _key(self):
        return (self.field, self.coefficients)

    def __eq__(self, other):
        return isinstance(other, EllipticCurve) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return f"EllipticCurve({self.field}, a={list(self.coefficients)})"

    # -- Weierstrass quantities ----------------------------------------------
    @cached_property
    def _b(self) -> tuple[int, int, int, int, int]:
        F = self.field
        a1, a2, a3, a4, a6 = self.coefficients
        m, a, s, n = F.mul, F.add, F.sub, F.from_int
        b2 = a(m(a1, a1), m(n(4), a2))
        b4 = a(m(n(2), a4), m(a1, a3))
        b6 = a(m(a3, a3), m(n(4), a6))
        b8 = s(a(a(m(m(a1, a1), a6), m(m(n(4), a2), a6)), m(a2, m(a3, a3))),
               a(m(m(a1, a3), a4), m(a4, a4)))
        c4 = s(m(b2, b2), m(n(24), b4))
        return b2, b4, b6, b8, c4

    @cached_property
    def discriminant(self) -> int:
        F = self.field
        b2, b4, b6, b8, _ = self._b
        m, n = F.mul, F.from_int
        terms = [
            F.neg(m(m(b2, b2), b8)),
            F.neg(m(n(8), m(b4, m(b4, b4)))),
            F.neg(m(n(27), m(b6, b6))),
            m(n(9), m(b2, m(b4, b6))),
        ]
        return F.sum(terms)

    @cached_property
    def j_invariant(self) -> int:
        F = self.field
        c4 = self._b[4]
        return F.div(F.mul(c4, F.mul(c4, c4)), self.discriminant)

    def invariants(self) -> tuple[FieldElement, FieldElement]:
        return FieldElement(self.field, self.discriminant), FieldElement(self.field, self.j_invariant)

    @cached_property
    def rhs_poly(self) -> poly.Poly:
        """x^3 + a2 x^2 + a4 x + a6."""
        return poly.trim([self.a6, self.a4, self.a2, 1])

    @cached_property
    def y_coeff_poly(self) -> poly.Poly:
        """a1 x + a3 (the coefficient of y on the left)."""
        return poly.trim([self.a3, self.a1])

    # -- points ---------------------------------------------------------------
    def point(self, x, y) -> CurvePoint:
        P = CurvePoint(self._coef(x), self._coef(y))
        if not self.is_on_curve(P):
            raise PointNotOnCurve(f"{P} is not on {self}")
        return P

    def equation_residual(self, x: int, y: int) -> int:
        F = self.field
        m, a = F.mul, F.add
        lhs = a(m(y, y), m(y, a(m(self.a1, x), self.a3)))
        rhs = a(m(x, a(m(x, a(x, self.a2)), self.a4)), self.a6)
        return F.sub(lhs, rhs)

    def is_on_curve(self, P: CurvePoint) -> bool:
        if P.is_infinity:
            return True
        if not (0 <= P.x < self.field.order and 0 <= P.y < self.field.order):
            raise FieldMismatch(f"{P} has coordinates outside {self.field}")
        return self.equation_residual(P.x, P.y) == 0

    def _require(self, P: CurvePoint):
        if not self.is_on_curve(P):
            raise PointNotOnCurve(f"{P} is not on {self}")

    def neg_y(self, x: int, y: int) -> int:
        F = self.field
        return F.sub(F.neg(y), F.add(F.mul(self.a1, x), self.a3))

    def negate(self, P: CurvePoint) -> CurvePoint:
        self._require(P)
        if P.is_infinity:
            return P
        return CurvePoint(P.x, self.neg_y(P.x, P.y))

    def is_two_torsion(self, P: CurvePoint) -> bool:
        return P.is_infinity or self.neg_y(P.x, P.y) == P.y

    def add(self, P: CurvePoint, Q: CurvePoint) -> CurvePoint:
        self._require(P)
        self._require(Q)
        return self._add(P, Q)

    def _add(self, P: CurvePoint, Q: CurvePoint) -> CurvePoint:
        if P.is_infinity:
            return Q
        if Q.is_infinity:
            return P
        F = self.field
        m, a, s, n = F.mul, F.add, F.sub, F.from_int
        x1, y1, x2, y2 = P.x, P.y, Q.x, Q.y
        if x1 == x2 and y2 == self.neg_y(x1, y1):
            return INFINITY
        if x1 != x2:
            dx = s(x2, x1)
            lam = F.div(s(y2, y1), dx)
            nu = F.div(s(m(y1, x2), m(y2, x1)), dx)
        else:
            den = a(a(m(n(2), y1), m(self.a1, x1)), self.a3)
            num = s(a(a(m(n(3), m(x1, x1)), m(n(2), m(self.a2, x1))), self.a4), m(self.a1, y1))
            lam = F.div(num, den)
            nu_num = s(a(a(F.neg(m(x1, m(x1, x1))), m(self.a4, x1)), m(n(2), self.a6)), m(self.a3, y1))
            nu = F.div(nu_num, den)
        x3 = s(s(s(a(m(lam, lam), m(self.a1, lam)), self.a2), x1), x2)
        y3 = s(s(F.neg(m(a(lam, self.a1), x3)), nu), self.a3)
        return CurvePoint(x3, y3)

    def scalar_mul(self, k: int, P: CurvePoint) -> CurvePoint:
        self._require(P)
        if k < 0:
            k, P = -k, self.negate(P)
        acc = INFINITY
        base = P
        while k:
            if k & 1:
                acc = self._add(acc, base)
            base = self._add(base, base)
            k >>= 1
        return acc

    def torsion_test(self, P: CurvePoint, n: int) -> bool:
        return self.scalar_mul(n, P).is_infinity

    def point_order(self, P: CurvePoint) -> int:
        self._require(P)
        k, Q = 1, P
        while not Q.is_infinity:
            Q = self._add(Q, P)
            k += 1
        return k

    # -- enumeration ------------------------------------------------------------
    @cached_property
    def _artin_table(self) -> dict[int, list[int]]:
        F = self.field
        table: dict[int, list[int]] = {}
        for w in range(F.order):
            table.setdefault(F.add(F.mul(w, w), w), []).append(w)
        return table

    def y_values(self, x: int) -> list[int]:
        """All y with (x, y) on the curve, in increasing code order."""
        F = self.field
        c = F.add(F.mul(self.a1, x), self.a3)
        r = poly.evaluate(F, self.rhs_poly, x)
        if F.p != 2:
            z = F.add(F.mul(F.from_int(4), r), F.mul(c, c))
            root = F.sqrt_table.get(z)
            if root is None:
                return []
            half = F.inv(F.from_int(2))
            ys = {F.mul(F.sub(root, c), half), F.mul(F.sub(F.neg(root), c), half)}
            return sorted(ys)
        if c == 0:
            return [F.sqrt_table[r]]
        ws = self._artin_table.get(F.div(r, F.mul(c, c)), [])
        return sorted(F.mul(c, w) for w in ws)

    @cached_property
    def points(self) -> tuple[CurvePoint, ...]:
        """All rational points, affine ones in (x, y) code order, then P_inf."""
        if self.field.order > enumeration_cap():
            raise FieldTooLarge(
                f"field order {self.field.order} exceeds enumeration cap {enumeration_cap()}")
        pts = [CurvePoint(x, y) for x in range(self.field.order) for y in self.y_values(x)]
        pts.append(INFINITY)
        return tuple(pts)

    def enumerate_points(self) -> list[CurvePoint]:
        return list(self.points)

    def affine_points(self) -> list[CurvePoint]:
        return [P for P in self.points if not P.is_infinity]

    def hasse_window(self) -> tuple[int, int]:
        q = self.field.order
        w = isqrt(4 * q)
        return q + 1 - w, q + 1 + w

    # -- serialisation ---------------------------------------------------------
    def point_key(self, P: CurvePoint):
        """Lexicographic order on (x-coefficients, y-coefficients), P_inf last."""
        if P.is_infinity:
            return (1, (), ())
        F = self.field
        return (0, F.coeffs(P.x), F.coeffs(P.y))

    def to_json(self) -> dict:
        F = self.field
        return {"field": F.to_json(), "a": [F.element_to_json(c) for c in self.coefficients]}

    @classmethod
    def from_json(cls, data: dict) -> "EllipticCurve":
        F = ExtField.from_json(data["field"])
        a = [F.element_from_json(c) for c in data["a"]]
        return cls(F, *a)

    def point_to_json(self, P: CurvePoint):
        if P.is_infinity:
            return "infinity"
        F = self.field
        return {"x": F.element_to_json(P.x), "y": F.element_to_json(P.y)}

    def point_from_json(self, data) -> CurvePoint:
        if data == "infinity" or data is None:
            return INFINITY
        F = self.field
        return self.point(F.element_from_json(data["x"]), F.element_from_json(data["y"]))


# -- functional interface ---------------------------------------------------

def is_on_curve(E: EllipticCurve, P: CurvePoint) -> bool:
    return E.is_on_curve(P)


def negate(E: EllipticCurve, P: CurvePoint) -> CurvePoint:
    return E.negate(P)


def add_points(E: EllipticCurve, P: CurvePoint, Q: CurvePoint) -> CurvePoint:
    return E.add(P, Q)


def scalar_mul(E: EllipticCurve, n: int, P: CurvePoint) -> CurvePoint:
    return E.scalar_mul(n, P)


def torsion_test(E: EllipticCurve, P: CurvePoint, n: int) -> bool:
    return E.torsion_test(P, n)


def enumerate_points(E: EllipticCurve) -> list[CurvePoint]:
    return E.enumerate_points()


def invariants(E: EllipticCurve) -> tuple[FieldElement, FieldElement]:
    return E.invariants()


def sort_points(E: EllipticCurve, pts: Iterable[CurvePoint]) -> list[CurvePoint]:
    return sorted(pts, key=E.point_key)
