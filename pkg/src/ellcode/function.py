"""Rational functions (a(X) + b(X) Y) / d(X) on an elliptic curve.

Valuations at affine places come from power-series expansions of X and Y
in a local parameter; at P_inf they follow from the weights -2 (X) and
-3 (Y), which never cancel because they have different parity.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import poly
from .curve import INFINITY, CurvePoint, EllipticCurve
from .divisor import Divisor
from .errors import (
    CurveMismatch,
    DivisionByZero,
    PointNotOnCurve,
    PoleAtPoint,
    UnsupportedPlace,
    ZeroFunction,
)


# -- truncated power series (lists of codes, index = power of t) ------------

def series_mul(F, a: Sequence[int], b: Sequence[int], n: int) -> list[int]:
    out = [0] * n
    fadd, fmul = F.add, F.mul
    for i, x in enumerate(a[:n]):
        if x:
            for j in range(min(len(b), n - i)):
                y = b[j]
                if y:
                    out[i + j] = fadd(out[i + j], fmul(x, y))
    return out


def series_add(F, a: Sequence[int], b: Sequence[int], n: int) -> list[int]:
    out = [0] * n
    for i in range(n):
        x = a[i] if i < len(a) else 0
        y = b[i] if i < len(b) else 0
        out[i] = F.add(x, y)
    return out


def series_compose(F, p: poly.Poly, xs: Sequence[int], n: int) -> list[int]:
    """p(X(t)) truncated to n terms (Horner)."""
    acc = [0] * n
    for c in reversed(p):
        acc = series_mul(F, acc, xs, n)
        acc[0] = F.add(acc[0], c)
    return acc


def series_order(s: Sequence[int]) -> int | None:
    for i, c in enumerate(s):
        if c:
            return i
    return None


@dataclass(frozen=True)
class LocalExpansion:
    """X and Y as power series in a local parameter at an affine place.

    ``parameter`` is "x" for t = X - alpha (unramified places) and "y" for
    t = Y - beta (places fixed by negation, where X - alpha has order 2).
    """

    point: CurvePoint
    parameter: str
    xs: tuple[int, ...]
    ys: tuple[int, ...]

    @property
    def precision(self) -> int:
        return len(self.xs)


def y_series(E: EllipticCurve, alpha: int, beta: int, n: int) -> list[int]:
    """Y = sum y_j t^j with t = X - alpha, solving the curve equation
    coefficient by coefficient."""
    F = E.field
    r = poly.shift(F, E.rhs_poly, alpha) + [0] * (n + 4)
    c0 = F.add(F.mul(E.a1, alpha), E.a3)
    den = F.add(F.add(beta, beta), c0)
    if den == 0:
        raise UnsupportedPlace("X - alpha is not a local parameter at a ramified place")
    inv = F.inv(den)
    ys = [beta] + [0] * (n - 1)
    for j in range(1, n):
        acc = F.sub(r[j], F.mul(E.a1, ys[j - 1]))
        for i in range(1, j):
            if ys[i] and ys[j - i]:
                acc = F.sub(acc, F.mul(ys[i], ys[j - i]))
        ys[j] = F.mul(acc, inv)
    return ys


def _x_series_ramified(E: EllipticCurve, alpha: int, beta: int, n: int) -> list[int]:
    """X = alpha + sum x_j t^j with t = Y - beta at a place where the partial
    derivative in Y vanishes (so the one in X does not)."""
    F = E.field
    ys = [beta, 1] + [0] * max(0, n - 2)
    ys = ys[:n]
    # G(X, Y) = Y^2 + (a1 X + a3) Y - r(X); dG/dX at the place
    sh = poly.shift(F, E.rhs_poly, alpha)
    r1 = sh[1] if len(sh) > 1 else 0
    gx = F.sub(F.mul(E.a1, beta), r1)
    if gx == 0:
        raise UnsupportedPlace("singular point")  # excluded by nonsingularity
    inv = F.inv(gx)
    xs = [alpha] + [0] * (n - 1)
    y2 = series_mul(F, ys, ys, n)
    for j in range(1, n):
        h = series_compose(F, E.y_coeff_poly, xs, n)
        res = series_add(F, y2, series_mul(F, h, ys, n), n)
        res = series_add(F, res, [F.neg(c) for c in series_compose(F, E.rhs_poly, xs, n)], n)
        # the unknown x_j enters coefficient j linearly with factor gx
        xs[j] = F.neg(F.mul(res[j], inv))
    return xs


def local_expansion(E: EllipticCurve, P: CurvePoint, n: int) -> LocalExpansion:
    if P.is_infinity:
        raise UnsupportedPlace("no affine expansion at P_inf")
    if not E.is_on_curve(P):
        raise PointNotOnCurve(f"{P} is not on {E}")
    F = E.field
    n = max(n, 2)
    if E.is_two_torsion(P):
        xs = _x_series_ramified(E, P.x, P.y, n)
        ys = ([P.y, 1] + [0] * n)[:n]
        return LocalExpansion(P, "y", tuple(xs), tuple(ys))
    xs = ([P.x, 1] + [0] * n)[:n]
    return LocalExpansion(P, "x", tuple(xs), tuple(y_series(E, P.x, P.y, n)))


class CurveFunction:
    """(num_a(X) + num_b(X) Y) / den(X) in canonical form.

    Canonical means gcd(num_a, num_b, den) = 1 and den monic; the zero
    function is stored as (0, 0, 1).
    """

    __slots__ = ("curve", "num_a", "num_b", "den")

    def __init__(self, curve: EllipticCurve, num_a=(), num_b=(), den=(1,)):
        F = curve.field
        a, b, d = poly.trim(num_a), poly.trim(num_b), poly.trim(den)
        if not d:
            raise DivisionByZero("zero denominator")
        if not a and not b:
            d = (1,)
        else:
            g = poly.gcd(F, poly.gcd(F, a, b), d)
            if len(g) > 1:
                a = poly.divmod_(F, a, g)[0]
                b = poly.divmod_(F, b, g)[0]
                d = poly.divmod_(F, d, g)[0]
            lead = d[-1]
            if lead != 1:
                inv = F.inv(lead)
                a, b, d = poly.scale(F, a, inv), poly.scale(F, b, inv), poly.scale(F, d, inv)
        self.curve = curve
        self.num_a, self.num_b, self.den = a, b, d

    # -- constructors --------------------------------------------------------
    @classmethod
    def constant(cls, E: EllipticCurve, c: int) -> "CurveFunction":
        return cls(E, poly.const(c))

    @classmethod
    def one(cls, E: EllipticCurve) -> "CurveFunction":
        return cls(E, (1,))

    @classmethod
    def x(cls, E: EllipticCurve) -> "CurveFunction":
        return cls(E, (0, 1))

    @classmethod
    def y(cls, E: EllipticCurve) -> "CurveFunction":
        return cls(E, (), (1,))

    @classmethod
    def monomial(cls, E: EllipticCurve, i: int, j: int) -> "CurveFunction":
        """X^i Y^j with j in {0, 1}."""
        m = (0,) * i + (1,)
        return cls(E, (), m) if j else cls(E, m)

    # -- identity -------------------------------------------------------------
    def _key(self):
        return (self.num_a, self.num_b, self.den)

    def __eq__(self, other):
        return isinstance(other, CurveFunction) and self.curve == other.curve and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return f"CurveFunction(a={list(self.num_a)}, b={list(self.num_b)}, d={list(self.den)})"

    @property
    def is_zero(self) -> bool:
        return not self.num_a and not self.num_b

    def canonical(self) -> "CurveFunction":
        return CurveFunction(self.curve, self.num_a, self.num_b, self.den)

    # -- arithmetic -------------------------------------------------------------
    def _check(self, other: "CurveFunction"):
        if self.curve != other.curve:
            raise CurveMismatch("functions on different curves")

    def __add__(self, other: "CurveFunction") -> "CurveFunction":
        self._check(other)
        F = self.curve.field
        d1, d2 = self.den, other.den
        a = poly.add(F, poly.mul(F, self.num_a, d2), poly.mul(F, other.num_a, d1))
        b = poly.add(F, poly.mul(F, self.num_b, d2), poly.mul(F, other.num_b, d1))
        return CurveFunction(self.curve, a, b, poly.mul(F, d1, d2))

    def __neg__(self) -> "CurveFunction":
        F = self.curve.field
        return CurveFunction(self.curve, poly.neg(F, self.num_a), poly.neg(F, self.num_b), self.den)

    def __sub__(self, other: "CurveFunction") -> "CurveFunction":
        return self + (-other)

    def scale(self, c: int) -> "CurveFunction":
        F = self.curve.field
        return CurveFunction(self.curve, poly.scale(F, self.num_a, c), poly.scale(F, self.num_b, c), self.den)

    def __mul__(self, other: "CurveFunction") -> "CurveFunction":
        if isinstance(other, int):
            return self.scale(other)
        self._check(other)
        E, F = self.curve, self.curve.field
        a1, b1, a2, b2 = self.num_a, self.num_b, other.num_a, other.num_b
        bb = poly.mul(F, b1, b2)
        # Y^2 = rhs(X) - (a1 X + a3) Y
        a = poly.add(F, poly.mul(F, a1, a2), poly.mul(F, bb, E.rhs_poly))
        b = poly.sub(F, poly.add(F, poly.mul(F, a1, b2), poly.mul(F, a2, b1)), poly.mul(F, bb, E.y_coeff_poly))
        return CurveFunction(E, a, b, poly.mul(F, self.den, other.den))

    def numerator_norm(self) -> poly.Poly:
        """N(a + bY) = a^2 - a b h - b^2 rhs, the product over both points above X."""
        E, F = self.curve, self.curve.field
        a, b = self.num_a, self.num_b
        t1 = poly.mul(F, a, a)
        t2 = poly.mul(F, poly.mul(F, a, b), E.y_coeff_poly)
        t3 = poly.mul(F, poly.mul(F, b, b), E.rhs_poly)
        return poly.sub(F, poly.sub(F, t1, t2), t3)

    def inverse(self) -> "CurveFunction":
        if self.is_zero:
            raise DivisionByZero("inverse of the zero function")
        E, F = self.curve, self.curve.field
        a, b, d = self.num_a, self.num_b, self.den
        conj_a = poly.sub(F, a, poly.mul(F, b, E.y_coeff_poly))
        conj_b = poly.neg(F, b)
        return CurveFunction(E, poly.mul(F, d, conj_a), poly.mul(F, d, conj_b), self.numerator_norm())

    def __truediv__(self, other: "CurveFunction") -> "CurveFunction":
        if isinstance(other, int):
            return self.scale(self.curve.field.inv(other))
        self._check(other)
        return self * other.inverse()

    def __pow__(self, e: int) -> "CurveFunction":
        base = self if e >= 0 else self.inverse()
        acc = CurveFunction.one(self.curve)
        for _ in range(abs(e)):
            acc = acc * base
        return acc

    # -- local analysis -----------------------------------------------------------
    def numerator_pole_order(self) -> int:
        """-v_inf(a + bY) = max(2 deg a, 2 deg b + 3)."""
        da, db = poly.degree(self.num_a), poly.degree(self.num_b)
        return max(2 * da if da >= 0 else -1, 2 * db + 3 if db >= 0 else -1)

    def _num_series(self, exp: LocalExpansion, n: int) -> list[int]:
        F = self.curve.field
        if exp.parameter == "x":
            sa = poly.shift(F, self.num_a, exp.point.x)
            sb = poly.shift(F, self.num_b, exp.point.x)
        else:
            sa = series_compose(F, self.num_a, exp.xs, n)
            sb = series_compose(F, self.num_b, exp.xs, n)
        return series_add(F, sa[:n], series_mul(F, sb, exp.ys, n), n)

    def _num_local(self, P: CurvePoint) -> tuple[int, int]:
        """(order, leading coefficient) of the numerator at P."""
        n = self.numerator_pole_order() + 1
        exp = local_expansion(self.curve, P, n)
        s = self._num_series(exp, n)
        k = series_order(s)
        if k is None:  # cannot happen with n above the total zero count
            raise ZeroFunction("numerator vanished to full precision")
        return k, s[k]

    def _den_local(self, P: CurvePoint) -> tuple[int, int]:
        F = self.curve.field
        k = poly.multiplicity(F, self.den, P.x)
        rest = poly.divmod_(F, self.den, poly.power(F, poly.linear(F, P.x), k))[0]
        lead = poly.evaluate(F, rest, P.x)
        if k and self.curve.is_two_torsion(P):
            # X - alpha = x_2 t^2 + ... in the Y-based parameter
            exp = local_expansion(self.curve, P, 3)
            return 2 * k, F.mul(lead, F.pow(exp.xs[2], k))
        return k, lead

    def valuation(self, P: CurvePoint) -> int:
        if self.is_zero:
            raise ZeroFunction("valuation of the zero function")
        if P.is_infinity:
            return -self.numerator_pole_order() + 2 * poly.degree(self.den)
        if not self.curve.is_on_curve(P):
            raise PointNotOnCurve(f"{P} is not on {self.curve}")
        return self._num_local(P)[0] - self._den_local(P)[0]

    def evaluate(self, P: CurvePoint) -> int:
        """Value at an affine point as an element code."""
        E, F = self.curve, self.curve.field
        if P.is_infinity:
            v = self.valuation(P) if not self.is_zero else 1
            if v < 0:
                raise PoleAtPoint("pole at P_inf")
            if v > 0:
                return 0
            # weight-0 part: leading terms have equal weight
            da, dd = poly.degree(self.num_a), poly.degree(self.den)
            return F.div(self.num_a[da], self.den[dd])
        d = poly.evaluate(F, self.den, P.x)
        if d:
            num = F.add(poly.evaluate(F, self.num_a, P.x), F.mul(poly.evaluate(F, self.num_b, P.x), P.y))
            return F.div(num, d)
        if not E.is_on_curve(P):
            raise PointNotOnCurve(f"{P} is not on {E}")
        if self.is_zero:
            return 0
        kn, ln = self._num_local(P)
        kd, ld = self._den_local(P)
        if kn < kd:
            raise PoleAtPoint(f"pole of order {kd - kn} at {P}")
        return 0 if kn > kd else F.div(ln, ld)

    def __call__(self, P: CurvePoint) -> int:
        return self.evaluate(P)

    def __getstate__(self):
        return (self.curve, self.num_a, self.num_b, self.den)

    def __setstate__(self, state):
        self.curve, self.num_a, self.num_b, self.den = state

    # -- divisors ---------------------------------------------------------------
    def _points_above_roots(self, p: poly.Poly) -> list[CurvePoint]:
        E, F = self.curve, self.curve.field
        found, rest = poly.roots(F, p)
        if poly.degree(rest) > 0:
            raise UnsupportedPlace("polynomial has an irreducible factor of degree > 1")
        pts = []
        for alpha in found:
            ys = E.y_values(alpha)
            if not ys:
                raise UnsupportedPlace(f"no rational point above x = {alpha}")
            pts.extend(CurvePoint(alpha, y) for y in ys)
        return pts

    def pole_candidates(self) -> list[CurvePoint]:
        """Rational points above the roots of den (the only affine poles)."""
        return self._points_above_roots(self.den)

    def principal_divisor(self) -> Divisor:
        if self.is_zero:
            raise ZeroFunction("the zero function has no divisor")
        F = self.curve.field
        pts = set(self._points_above_roots(poly.mul(F, self.numerator_norm(), self.den)))
        coeffs = {P: self.valuation(P) for P in pts}
        coeffs[INFINITY] = self.valuation(INFINITY)
        return Divisor(self.curve, coeffs)

    def pole_divisor(self) -> Divisor:
        return Divisor(self.curve, {P: -k for P, k in self.principal_divisor().items() if k < 0})

    def zero_divisor(self) -> Divisor:
        return Divisor(self.curve, {P: k for P, k in self.principal_divisor().items() if k > 0})

    # -- serialisation --------------------------------------------------------------
    def to_json(self) -> dict:
        F = self.curve.field
        return {"num_a": poly.to_json(F, self.num_a), "num_b": poly.to_json(F, self.num_b),
                "den": poly.to_json(F, self.den)}

    @classmethod
    def from_json(cls, E: EllipticCurve, data: dict) -> "CurveFunction":
        F = E.field
        return cls(E, poly.from_json(F, data.get("num_a", [])), poly.from_json(F, data.get("num_b", [])),
                   poly.from_json(F, data.get("den", [1])))


def fn_arith(f: CurveFunction, g, op: str) -> CurveFunction:
    if op == "add":
        return f + g
    if op == "mul":
        return f * g
    if op == "div":
        return f / g
    if op == "scale":
        return f.scale(g)
    raise ValueError(f"unknown function operation {op!r}")


def valuation(f: CurveFunction, place: CurvePoint) -> int:
    return f.valuation(place)


def evaluate(f: CurveFunction, P: CurvePoint) -> int:
    return f.evaluate(P)


def pole_certificate(f: CurveFunction, G: Divisor) -> bool:
    """True iff f lies in L(G): checks every place of supp(G), every rational
    place above a root of den, and P_inf."""
    if f.curve != G.curve:
        raise CurveMismatch("function and divisor on different curves")
    if f.is_zero:
        return True
    places = set(G.support) | set(f.pole_candidates()) | {INFINITY}
    return all(f.valuation(P) >= -G[P] for P in places)
