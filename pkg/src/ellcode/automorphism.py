"""Automorphisms of an elliptic curve that fix P_inf.

Every such map has the shape

    sigma(x, y) = (u^2 x + r, u^3 y + s u^2 x + t)

and it preserves the curve exactly when the change of variables leaves all
five Weierstrass coefficients unchanged.  The search sweeps u over F* and
solves the coefficient equations for (s, r, t) wherever the characteristic
allows, sweeping the remaining free parameters otherwise.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Iterator

from . import poly
from .curve import INFINITY, CurvePoint, EllipticCurve, enumeration_cap
from .divisor import Divisor
from .errors import CurveMismatch, FieldTooLarge, PointNotOnCurve, UnsupportedOrder
from .function import CurveFunction

VALID_ORDERS = (1, 2, 3, 4, 6)


def char_class(p: int) -> str:
    return "char2" if p == 2 else "char3" if p == 3 else "charGT3"


@dataclass(frozen=True)
class CurveAutomorphism:
    curve: EllipticCurve
    u: int
    r: int = 0
    s: int = 0
    t: int = 0

    @property
    def params(self) -> tuple[int, int, int, int]:
        return (self.u, self.r, self.s, self.t)

    @property
    def char_class(self) -> str:
        return char_class(self.curve.field.p)

    @property
    def is_identity(self) -> bool:
        return self.params == (1, 0, 0, 0)

    def __repr__(self):
        return f"CurveAutomorphism(u={self.u}, r={self.r}, s={self.s}, t={self.t})"

    def __call__(self, P: CurvePoint) -> CurvePoint:
        return self.apply(P)

    def apply(self, P: CurvePoint) -> CurvePoint:
        if P.is_infinity:
            return P
        F = self.curve.field
        u2 = F.mul(self.u, self.u)
        u2x = F.mul(u2, P.x)
        x = F.add(u2x, self.r)
        y = F.add(F.add(F.mul(F.mul(u2, self.u), P.y), F.mul(self.s, u2x)), self.t)
        return CurvePoint(x, y)

    def compose(self, other: "CurveAutomorphism") -> "CurveAutomorphism":
        """self o other (apply other first)."""
        if self.curve != other.curve:
            raise CurveMismatch("automorphisms of different curves")
        F = self.curve.field
        m, a = F.mul, F.add
        u1, r1, s1, t1 = self.params
        u2, r2, s2, t2 = other.params
        u1sq = m(u1, u1)
        return CurveAutomorphism(
            self.curve,
            m(u1, u2),
            a(m(u1sq, r2), r1),
            a(m(u1, s2), s1),
            a(a(m(m(u1sq, u1), t2), m(m(s1, u1sq), r2)), t1),
        )

    def power(self, k: int) -> "CurveAutomorphism":
        acc = identity(self.curve)
        for _ in range(k % self.order):
            acc = self.compose(acc)
        return acc

    @property
    def order(self) -> int:
        acc, k = self, 1
        while not acc.is_identity:
            acc = self.compose(acc)
            k += 1
            if k > 24:
                raise UnsupportedOrder("automorphism order exceeds 24")
        return k

    def pullback(self, f: CurveFunction) -> CurveFunction:
        """f o sigma."""
        E, F = self.curve, self.curve.field
        if f.curve != E:
            raise CurveMismatch("function on another curve")
        u2 = F.mul(self.u, self.u)
        sa = poly.compose_linear(F, f.num_a, u2, self.r)
        sb = poly.compose_linear(F, f.num_b, u2, self.r)
        sd = poly.compose_linear(F, f.den, u2, self.r)
        sy_x = poly.trim([self.t, F.mul(self.s, u2)])  # X-part of sigma(y)
        num_a = poly.add(F, sa, poly.mul(F, sb, sy_x))
        num_b = poly.scale(F, sb, F.mul(u2, self.u))
        return CurveFunction(E, num_a, num_b, sd)

    def push_divisor(self, D: Divisor) -> Divisor:
        return Divisor(self.curve, [(self.apply(P), k) for P, k in D.items()])

    def to_json(self) -> dict:
        F = self.curve.field
        out = {k: F.element_to_json(v) for k, v in zip("urst", self.params)}
        out["order"] = self.order
        return out

    @classmethod
    def from_json(cls, E: EllipticCurve, data: dict) -> "CurveAutomorphism":
        F = E.field
        sigma = cls(E, *(F.element_from_json(data.get(k, 0)) for k in "urst"))
        if not preserves_curve(sigma):
            raise PointNotOnCurve("parameters do not define an automorphism of the curve")
        return sigma


def identity(E: EllipticCurve) -> CurveAutomorphism:
    return CurveAutomorphism(E, 1, 0, 0, 0)


def transformed_coefficients(E: EllipticCurve, u: int, r: int, s: int, t: int) -> tuple[int, ...]:
    """Coefficients a_i' of the curve obtained by x = u^2 x' + r, y = u^3 y' + s u^2 x' + t."""
    F = E.field
    m, a, sub, n = F.mul, F.add, F.sub, F.from_int
    a1, a2, a3, a4, a6 = E.coefficients
    ui = F.inv(u)
    up = [1]
    for _ in range(6):
        up.append(m(up[-1], ui))
    r2, s2 = m(r, r), m(s, s)
    b1 = a(a1, m(n(2), s))
    b2 = sub(a(sub(a2, m(s, a1)), m(n(3), r)), s2)
    b3 = a(a(a3, m(r, a1)), m(n(2), t))
    b4 = sub(sub(a(a(sub(a4, m(s, a3)), m(n(2), m(r, a2))), m(n(3), r2)), m(a(t, m(r, s)), a1)),
             m(n(2), m(s, t)))
    b6 = sub(sub(sub(a(a(a(a6, m(r, a4)), m(r2, a2)), m(r2, r)), m(t, a3)), m(t, t)), m(m(r, t), a1))
    return (m(b1, up[1]), m(b2, up[2]), m(b3, up[3]), m(b4, up[4]), m(b6, up[6]))


def preserves_curve(sigma: CurveAutomorphism) -> bool:
    E = sigma.curve
    if sigma.u == 0:
        return False
    return transformed_coefficients(E, *sigma.params) == E.coefficients


def _candidates(E: EllipticCurve) -> Iterator[tuple[int, int, int, int]]:
    F = E.field
    p = F.p
    m, a, sub, n = F.mul, F.add, F.sub, F.from_int
    a1, a2, a3, a4, a6 = E.coefficients
    everything = range(F.order)
    for u in range(1, F.order):
        u2 = m(u, u)
        u3 = m(u2, u)
        # a1: u a1 = a1 + 2 s
        if p != 2:
            s_vals = [F.div(sub(m(u, a1), a1), n(2))]
        elif m(u, a1) == a1:
            s_vals = everything
        else:
            continue
        for s in s_vals:
            # a2: u^2 a2 = a2 - s a1 + 3 r - s^2
            lhs2 = a(sub(m(u2, a2), a2), a(m(s, a1), m(s, s)))
            if p != 3:
                r_vals = [F.div(lhs2, n(3))]
            elif lhs2 == 0:
                r_vals = everything
            else:
                continue
            for r in r_vals:
                # a3: u^3 a3 = a3 + r a1 + 2 t
                lhs3 = sub(sub(m(u3, a3), a3), m(r, a1))
                if p != 2:
                    t_vals = [F.div(lhs3, n(2))]
                elif lhs3 != 0:
                    continue
                elif a1:
                    # a4 in char 2: u^4 a4 = a4 + s a3 + (t + r s) a1 + r^2, linear in t
                    rest = a(a(a(m(m(u2, u2), a4), a4), m(s, a3)), m(r, r))
                    t_vals = [a(F.div(rest, a1), m(r, s))]
                else:
                    # a6 in char 2 with a1 = 0: t^2 + a3 t = a6 + u^6 a6 + r a4 + r^2 a2 + r^3
                    rhs = a(a(a(a(a6, m(m(u3, u3), a6)), m(r, a4)), m(m(r, r), a2)), m(m(r, r), r))
                    t_vals = [m(a3, w) for w in E._artin_table.get(F.div(rhs, m(a3, a3)), [])]
                for t in t_vals:
                    yield u, r, s, t


def list_automorphisms(E: EllipticCurve) -> list[CurveAutomorphism]:
    """All automorphisms fixing P_inf that are defined over the base field."""
    if E.field.order > enumeration_cap():
        raise FieldTooLarge(f"field order {E.field.order} exceeds enumeration cap")
    out = []
    for u, r, s, t in _candidates(E):
        sigma = CurveAutomorphism(E, u, r, s, t)
        if preserves_curve(sigma):
            out.append(sigma)
    return out


def automorphisms_of_order(E: EllipticCurve, ell: int) -> list[CurveAutomorphism]:
    if ell not in VALID_ORDERS:
        raise UnsupportedOrder(f"order {ell} not in {VALID_ORDERS}")
    return [sig for sig in list_automorphisms(E) if sig.order == ell]


def theoretical_group_order(E: EllipticCurve) -> int:
    """|Aut(E, P_inf)| over the algebraic closure, from j and the characteristic."""
    p, j = E.field.p, E.j_invariant
    if j != 0 and j != E.field.from_int(1728):
        return 2
    if p == 2:
        return 24
    if p == 3:
        return 12
    return 6 if j == 0 else 4


def order(sigma: CurveAutomorphism) -> int:
    return sigma.order


def compose(sigma: CurveAutomorphism, tau: CurveAutomorphism) -> CurveAutomorphism:
    return sigma.compose(tau)


def apply(sigma: CurveAutomorphism, P: CurvePoint) -> CurvePoint:
    if not sigma.curve.is_on_curve(P):
        raise PointNotOnCurve(f"{P} is not on the curve")
    return sigma.apply(P)


def orbit(sigma: CurveAutomorphism, P: CurvePoint) -> list[CurvePoint]:
    """P, sigma(P), sigma^2(P), ... up to the first repeat."""
    if not sigma.curve.is_on_curve(P):
        raise PointNotOnCurve(f"{P} is not on the curve")
    out = [P]
    Q = sigma.apply(P)
    while Q != P:
        out.append(Q)
        Q = sigma.apply(Q)
    return out


@dataclass
class OrbitPartition:
    sigma: CurveAutomorphism
    orbits: list[list[CurvePoint]]
    index: dict[CurvePoint, int] = dc_field(repr=False, default_factory=dict)

    @property
    def sizes(self) -> list[int]:
        return [len(o) for o in self.orbits]

    def orbit_of(self, P: CurvePoint) -> list[CurvePoint]:
        return self.orbits[self.index[P]]

    def omega(self, P: CurvePoint) -> int:
        return len(self.orbit_of(P))


def orbit_partition(sigma: CurveAutomorphism) -> OrbitPartition:
    seen: dict[CurvePoint, int] = {}
    orbits = []
    for P in sigma.curve.points:
        if P in seen:
            continue
        orb = orbit(sigma, P)
        for Q in orb:
            seen[Q] = len(orbits)
        orbits.append(orb)
    return OrbitPartition(sigma, orbits, seen)


# -- invariant-point classification ---------------------------------------------

def point_classes(E: EllipticCurve, P: CurvePoint) -> set[str]:
    if P.is_infinity:
        return {"infinity"}
    out = {"affine"}
    if P.x == 0 and P.y == 0:
        out.add("origin")
    if P.y == 0:
        out.add("y_zero")
    if P.x == 0:
        out.add("x_zero")
    if E.torsion_test(P, 3):
        out.add("e3")
    return out


def predicted_rules(E: EllipticCurve, ell: int) -> list[tuple[str, int]]:
    """(point class, predicted orbit size) pairs for a nontrivial sigma of order ell."""
    if ell not in (2, 3, 4, 6):
        raise UnsupportedOrder(f"order {ell} not in (2, 3, 4, 6)")
    p = E.field.p
    if p > 3:
        return {2: [("y_zero", 1)], 4: [("y_zero", 2)], 3: [("x_zero", 1)],
                6: [("x_zero", 2), ("y_zero", 3)]}[ell]
    if p == 3:
        return {2: [("y_zero", 1)], 4: [("y_zero", 2)], 3: [("affine", 3)],
                6: [("y_zero", 3), ("x_zero", 3)]}[ell]
    if ell == 2:
        # j = 0: the involution fixes no affine point, so every affine orbit has size 2
        return [("affine", 2)] if E.j_invariant == 0 else [("x_zero", 1)]
    return {3: [("e3", 1)], 4: [("affine", 4)], 6: [("e3", 2)]}[ell]


@dataclass
class InvariantPointEntry:
    point: CurvePoint
    rule: str
    predicted: int
    empirical: int
    flagged: bool = False
    shadowed: list[tuple[str, int]] = dc_field(default_factory=list)

    @property
    def match(self) -> bool:
        return self.predicted == self.empirical


@dataclass
class InvariantPointReport:
    sigma: CurveAutomorphism
    ell: int
    entries: list[InvariantPointEntry]

    @property
    def discrepancies(self) -> list[InvariantPointEntry]:
        return [e for e in self.entries if not e.match]

    @property
    def ok(self) -> bool:
        return not self.discrepancies

    def to_json(self) -> dict:
        E = self.sigma.curve
        return {
            "sigma": self.sigma.to_json(),
            "order": self.ell,
            "entries": [
                {"point": E.point_to_json(e.point), "rule": e.rule, "predicted": e.predicted,
                 "empirical": e.empirical, "match": e.match, "flagged": e.flagged,
                 "shadowed": [list(s) for s in e.shadowed]}
                for e in self.entries
            ],
        }


def classify_invariant_points(E: EllipticCurve, sigma: CurveAutomorphism) -> InvariantPointReport:
    """Predicted vs empirical orbit sizes for every special point.

    P_inf and (0, 0) (when on the curve) take the exceptional value 1 and
    override any class rule; (0, 0) entries are flagged because the curves on
    which that exception is meant to apply are not pinned down.
    """
    if sigma.curve != E:
        raise CurveMismatch("automorphism of another curve")
    ell = sigma.order
    rules = predicted_rules(E, ell)
    part = orbit_partition(sigma)
    entries = []
    for P in E.points:
        classes = point_classes(E, P)
        hits = [(c, v) for c, v in rules if c in classes]
        if "infinity" in classes:
            entries.append(InvariantPointEntry(P, "exceptional", 1, part.omega(P), shadowed=hits))
        elif "origin" in classes:
            entries.append(InvariantPointEntry(P, "exceptional", 1, part.omega(P), flagged=True, shadowed=hits))
        elif hits:
            c, v = hits[0]
            entries.append(InvariantPointEntry(P, c, v, part.omega(P), shadowed=hits[1:]))
    return InvariantPointReport(sigma, ell, entries)


def automorphism_group_report(E: EllipticCurve) -> dict:
    auts = list_automorphisms(E)
    orders: dict[int, int] = {}
    for sig in auts:
        orders[sig.order] = orders.get(sig.order, 0) + 1
    full = theoretical_group_order(E)
    return {"rational_count": len(auts), "theoretical_count": full,
            "complete": len(auts) == full, "orders": dict(sorted(orders.items()))}
