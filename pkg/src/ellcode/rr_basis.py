"""Explicit bases of Riemann-Roch spaces L(G) on elliptic curves."""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Iterable, Sequence

from . import linalg, poly
from .automorphism import CurveAutomorphism, orbit
from .curve import INFINITY, CurvePoint, EllipticCurve
from .divisor import Divisor
from .errors import (
    BadOrbitPoint,
    CharThreeUnsupported,
    DegenerateDenominator,
    DuplicatePoints,
    InsufficientPoints,
    InvalidDegree,
    NoSolution,
    OrbitCollision,
    PoleAtPoint,
    UnsupportedOrder,
    UnsupportedPoint,
)
from .function import (
    CurveFunction,
    local_expansion,
    pole_certificate,
    series_add,
    series_compose,
    series_mul,
)

CONSTRUCTIONS = (
    "infinity",
    "one_point_taylor",
    "one_point_solve",
    "one_point_ramified",
    "multipoint",
    "multipoint_minus_infinity",
    "qc_orbit",
    "qc_orbit_minus_infinity",
)


@dataclass
class RRBasis:
    divisor: Divisor
    functions: list[CurveFunction]
    construction: str
    meta: dict = dc_field(default_factory=dict)

    def __len__(self):
        return len(self.functions)

    def __iter__(self):
        return iter(self.functions)

    @property
    def curve(self) -> EllipticCurve:
        return self.divisor.curve

    def to_json(self) -> dict:
        return {"divisor": self.divisor.to_json(), "functions": [f.to_json() for f in self.functions],
                "construction": self.construction}

    @classmethod
    def from_json(cls, E: EllipticCurve, data: dict) -> "RRBasis":
        return cls(Divisor.from_json(E, data["divisor"]),
                   [CurveFunction.from_json(E, f) for f in data["functions"]], data["construction"])


# -- L(k P_inf) -------------------------------------------------------------------

def infinity_exponents(k: int) -> list[tuple[int, int]]:
    """(i, j) with 2i + 3j <= k, j in {0, 1}, ordered by (j, i)."""
    return [(i, j) for j in (0, 1) for i in range(k // 2 + 1) if 2 * i + 3 * j <= k]


def basis_at_infinity(E: EllipticCurve, k: int) -> RRBasis:
    if k < 1:
        raise InvalidDegree(f"k must be >= 1, got {k}")
    fns = [CurveFunction.monomial(E, i, j) for i, j in infinity_exponents(k)]
    return RRBasis(Divisor.at_infinity(E, k), fns, "infinity")


# -- one point ----------------------------------------------------------------------

@dataclass(frozen=True)
class TaylorExpansion:
    """Y = beta' + sum_{j>=1} c_j t^j, t = X - alpha, around the conjugate point."""

    center: CurvePoint
    coeffs: tuple[int, ...]  # c_1, c_2, ...

    def residual_order(self, E: EllipticCurve) -> int:
        """t-order of the curve equation after substituting the truncated series."""
        F = E.field
        n = len(self.coeffs) + 4
        ys = [self.center.y, *self.coeffs]
        xs = [self.center.x, 1]
        lhs = series_add(F, series_mul(F, ys, ys, n), series_mul(F, series_compose(F, E.y_coeff_poly, xs, n), ys, n), n)
        rhs = series_compose(F, E.rhs_poly, xs, n)
        diff = [F.sub(a, b) for a, b in zip(lhs, rhs)]
        return next((i for i, c in enumerate(diff) if c), n)


def conjugate(E: EllipticCurve, P: CurvePoint) -> CurvePoint:
    return E.negate(P)


def _check_taylor_point(E: EllipticCurve, P: CurvePoint):
    if E.field.p == 3:
        raise CharThreeUnsupported("the Taylor recurrence does not apply in characteristic 3")
    if P.is_infinity or E.is_two_torsion(P) or E.torsion_test(P, 3):
        raise UnsupportedPoint(f"{P} lies in E[2] or E[3]")


def taylor_coefficients(E: EllipticCurve, Pc: CurvePoint, s: int) -> TaylorExpansion:
    """c_1 .. c_{s-1} of Y around Pc = (alpha, beta') via the Kronecker-delta recurrence.

    c_1 = (3 alpha^2 + 2 a2 alpha + a4 - a1 beta') / (2 beta' + a1 alpha + a3), then
    c_j = ((3 alpha + a2) [j=2] + [j=3] - a1 c_{j-1} - S_j) / (same denominator),
    with S_j = sum_{i=1}^{j-1} c_i c_{j-i}.  In characteristic 2 and for short
    forms in characteristic > 3 these are the usual closed forms.
    """
    _check_taylor_point(E, Pc)
    F = E.field
    m, a, sub, n = F.mul, F.add, F.sub, F.from_int
    alpha, beta = Pc.x, Pc.y
    den = a(a(m(n(2), beta), m(E.a1, alpha)), E.a3)
    if den == 0:
        raise DegenerateDenominator(f"2 beta' + a1 alpha + a3 vanishes at {Pc}")
    inv = F.inv(den)
    c = [0]  # c[0] unused; c_1 lives at index 1
    if s >= 2:
        num1 = sub(a(a(m(n(3), m(alpha, alpha)), m(n(2), m(E.a2, alpha))), E.a4), m(E.a1, beta))
        c.append(m(num1, inv))
    for j in range(2, s):
        acc = 0
        if j == 2:
            acc = a(m(n(3), alpha), E.a2)
        elif j == 3:
            acc = 1
        acc = sub(acc, m(E.a1, c[j - 1]))
        for i in range(1, j):
            acc = sub(acc, m(c[i], c[j - i]))
        c.append(m(acc, inv))
    return TaylorExpansion(Pc, tuple(c[1:]))


def _f_from_A(E: EllipticCurve, alpha: int, A: poly.Poly, s: int) -> CurveFunction:
    F = E.field
    return CurveFunction(E, A, (1,), poly.power(F, poly.linear(F, alpha), s))


def _A_taylor(E: EllipticCurve, Pc: CurvePoint, coeffs: Sequence[int], s: int) -> poly.Poly:
    """A_s(X) = -beta' - sum_{j=1}^{s-1} c_j (X - alpha)^j."""
    F = E.field
    lin = poly.linear(F, Pc.x)
    acc = poly.const(F.neg(Pc.y))
    pw: poly.Poly = (1,)
    for j in range(1, s):
        pw = poly.mul(F, pw, lin)
        acc = poly.sub(F, acc, poly.scale(F, pw, coeffs[j - 1]))
    return acc


def solve_A(E: EllipticCurve, Pc: CurvePoint, s: int) -> poly.Poly:
    """A of degree <= s-1 with v_Pc(Y + A(X)) >= s, by matching series coefficients."""
    F = E.field
    exp = local_expansion(E, Pc, s)
    shifted = [F.sub(c, Pc.x) if k == 0 else c for k, c in enumerate(exp.xs)]  # X - alpha
    cols = []
    pw = [1] + [0] * (s - 1)
    for _ in range(s):
        cols.append(pw)
        pw = series_mul(F, pw, shifted, s)
    A = [[cols[i][j] for i in range(s)] for j in range(s)]
    b = [F.neg(exp.ys[j]) for j in range(s)]
    x = linalg.solve(F, A, b)
    if x is None:
        raise NoSolution(f"no A of degree <= {s - 1} with a zero of order {s} at {Pc}")
    acc: poly.Poly = ()
    lin = poly.linear(F, Pc.x)
    pw_poly: poly.Poly = (1,)
    for coef in x:
        acc = poly.add(F, acc, poly.scale(F, pw_poly, coef))
        pw_poly = poly.mul(F, pw_poly, lin)
    return acc


def one_point_functions(E: EllipticCurve, P: CurvePoint, k: int, method: str = "taylor") -> list[CurveFunction]:
    """[f_2, ..., f_k] with f_s = (Y + A_s(X)) / (X - alpha)^s."""
    if P.is_infinity:
        raise UnsupportedPoint("P_inf is handled by basis_at_infinity")
    if not E.is_on_curve(P):
        raise UnsupportedPoint(f"{P} is not on the curve")
    Pc = conjugate(E, P)
    if k < 2:
        return []
    if method == "taylor":
        _check_taylor_point(E, P)
        tx = taylor_coefficients(E, Pc, k)
        return [_f_from_A(E, P.x, _A_taylor(E, Pc, tx.coeffs, s), s) for s in range(2, k + 1)]
    if method == "solve":
        return [_f_from_A(E, P.x, solve_A(E, Pc, s), s) for s in range(2, k + 1)]
    if method == "ramified":
        return ramified_functions(E, P, k)
    raise ValueError(f"unknown method {method!r}")


def ramified_functions(E: EllipticCurve, P: CurvePoint, k: int) -> list[CurveFunction]:
    """[f_2, ..., f_k] at a 2-torsion point, where v_P(X - alpha) = 2 and v_P(Y - beta) = 1:
    f_s = 1/(X - alpha)^{s/2} for even s, (Y - beta)/(X - alpha)^{(s+1)/2} for odd s."""
    if not E.is_two_torsion(P):
        raise UnsupportedPoint(f"{P} is not a 2-torsion point")
    F = E.field
    lin = poly.linear(F, P.x)
    out = []
    for s in range(2, k + 1):
        if s % 2:
            out.append(CurveFunction(E, (F.neg(P.y),), (1,), poly.power(F, lin, (s + 1) // 2)))
        else:
            out.append(CurveFunction(E, (1,), (), poly.power(F, lin, s // 2)))
    return out


def taylor_applicable(E: EllipticCurve, P: CurvePoint) -> bool:
    try:
        _check_taylor_point(E, P)
    except (CharThreeUnsupported, UnsupportedPoint):
        return False
    return True


def _pick_method(E: EllipticCurve, P: CurvePoint, method: str) -> str:
    if method == "auto":
        if taylor_applicable(E, P):
            return "taylor"
        return "ramified" if E.is_two_torsion(P) else "solve"
    return method


def one_point_basis(E: EllipticCurve, P: CurvePoint, k: int, method: str = "taylor") -> RRBasis:
    if k < 1:
        raise InvalidDegree(f"k must be >= 1, got {k}")
    method = _pick_method(E, P, method)
    fns = [CurveFunction.one(E)] + one_point_functions(E, P, k, method)
    return RRBasis(Divisor.point(E, P, k), fns, f"one_point_{method}")


# -- multipoint -------------------------------------------------------------------------

def chord_function(E: EllipticCurve, P1: CurvePoint, P2: CurvePoint) -> CurveFunction:
    """g = (Y + B(X)) / ((X - a_1)(X - a_2)) with B the line through -P1, -P2,
    or 1/(X - a_1) when the two points share their x-coordinate."""
    F = E.field
    m, a, sub = F.mul, F.add, F.sub
    (x1, y1), (x2, y2) = (P1.x, P1.y), (P2.x, P2.y)
    if x1 == x2:
        return CurveFunction(E, (1,), (), poly.linear(F, x1))
    lam = a(F.div(sub(y2, y1), sub(x2, x1)), E.a1)
    b1 = a(a(y1, m(E.a1, x1)), E.a3)
    B = poly.trim([sub(b1, m(lam, x1)), lam])
    return CurveFunction(E, B, (1,), poly.mul(F, poly.linear(F, x1), poly.linear(F, x2)))


def _normalise_points(E: EllipticCurve, G) -> list[tuple[CurvePoint, int]]:
    pts = list(G.items()) if isinstance(G, Divisor) else [(P, int(k)) for P, k in G]
    seen = set()
    for P, k in pts:
        if P.is_infinity:
            raise UnsupportedPoint("multipoint divisors are affine; use basis_at_infinity for P_inf")
        if not E.is_on_curve(P):
            raise UnsupportedPoint(f"{P} is not on the curve")
        if k < 1:
            raise InvalidDegree(f"multiplicity {k} at {P} must be >= 1")
        if P in seen:
            raise DuplicatePoints(f"{P} listed twice")
        seen.add(P)
    if not pts:
        raise InvalidDegree("empty divisor")
    return pts


def multipoint_basis(E: EllipticCurve, G, method: str = "auto") -> RRBasis:
    """Basis of L(sum k_i P_i), keeping the given order of the P_i for the chord chain."""
    pts = _normalise_points(E, G)
    fns = [CurveFunction.one(E)]
    methods = []
    for P, k in pts:
        mth = _pick_method(E, P, method)
        methods.append(mth)
        fns.extend(one_point_functions(E, P, k, mth))
    for (P1, _), (P2, _) in zip(pts, pts[1:]):
        fns.append(chord_function(E, P1, P2))
    D = Divisor(E, pts)
    return RRBasis(D, fns, "multipoint", {"methods": methods, "order": [P for P, _ in pts]})


def multipoint_basis_minus_infinity(E: EllipticCurve, G, method: str = "auto") -> RRBasis:
    """Basis of L(G0 - P_inf): the multipoint basis of G0 without the constant."""
    full = multipoint_basis(E, G, method)
    D = full.divisor - Divisor.at_infinity(E, 1)
    return RRBasis(D, full.functions[1:], "multipoint_minus_infinity", full.meta)


# -- orbit divisors ------------------------------------------------------------------------

def excluded_orbit_point(E: EllipticCurve, P: CurvePoint) -> str | None:
    if P.is_infinity:
        return "P_inf"
    if P.x == 0:
        return "x = 0"
    if P.y == 0:
        return "y = 0"
    if E.is_two_torsion(P):
        return "2-torsion"
    if E.torsion_test(P, 3):
        return "3-torsion"
    return None


def orbit_divisor(sigma: CurveAutomorphism, reps: Sequence[CurvePoint], mults: Sequence[int]) -> tuple[Divisor, list[list[CurvePoint]]]:
    E = sigma.curve
    ell = sigma.order
    orbits = []
    seen: set[CurvePoint] = set()
    for Q in reps:
        orb = orbit(sigma, Q)
        if len(orb) != ell:
            raise BadOrbitPoint(f"orbit of {Q} has size {len(orb)}, expected {ell}")
        if seen & set(orb):
            raise OrbitCollision(f"orbit of {Q} meets an earlier orbit")
        seen |= set(orb)
        orbits.append(orb)
    D = Divisor(E, [(P, t) for orb, t in zip(orbits, mults) for P in orb])
    return D, orbits


def orbit_denominator(E: EllipticCurve, orbits: Sequence[Sequence[CurvePoint]], mults: Sequence[int]) -> poly.Poly:
    """prod_z [prod over distinct x in orbit z of (X - x)]^{t_z}."""
    F = E.field
    den: poly.Poly = (1,)
    for orb, t in zip(orbits, mults):
        xs = sorted({P.x for P in orb})
        if 2 * len(xs) != len(orb):
            raise BadOrbitPoint("orbit is not a union of conjugate pairs")
        den = poly.mul(F, den, poly.power(F, poly.from_roots(F, xs), t))
    return den


def qc_orbit_basis(sigma: CurveAutomorphism, reps: Sequence[CurvePoint], mults: Sequence[int],
                   c: int = 0) -> RRBasis:
    """Basis of L(sum_z t_z Orb(Q_z) - c P_inf) for sigma of order 2, 4 or 6."""
    E = sigma.curve
    ell = sigma.order
    if ell == 3:
        raise UnsupportedOrder("order-3 orbits do not pair conjugate points; use multipoint_basis")
    if ell not in (2, 4, 6):
        raise UnsupportedOrder(f"order {ell} not in (2, 4, 6)")
    if len(reps) != len(mults) or not reps:
        raise InvalidDegree("need one multiplicity per orbit representative")
    if any(t < 1 for t in mults):
        raise InvalidDegree("orbit multiplicities must be >= 1")
    for Q in reps:
        why = excluded_orbit_point(E, Q)
        if why:
            raise BadOrbitPoint(f"{Q} is excluded ({why})")
    G0, orbits = orbit_divisor(sigma, reps, mults)
    bound = ell * sum(mults)
    if c < 0 or c > bound:
        raise InvalidDegree(f"c = {c} outside [0, {bound}]")
    den = orbit_denominator(E, orbits, mults)
    fns = []
    for i, j in infinity_exponents(bound - c):
        mono = (0,) * i + (1,)
        fns.append(CurveFunction(E, (), mono, den) if j else CurveFunction(E, mono, (), den))
    G = G0 - Divisor.at_infinity(E, c) if c else G0
    return RRBasis(G, fns, "qc_orbit_minus_infinity" if c else "qc_orbit",
                   {"ell": ell, "orbits": orbits, "c": c, "principal": c == bound})


# -- verification ---------------------------------------------------------------------------

@dataclass
class BasisReport:
    membership: list[bool]
    rank: int
    size: int
    degree: int
    eval_points: int

    @property
    def members_ok(self) -> bool:
        return all(self.membership)

    @property
    def independent(self) -> bool:
        return self.rank == self.size

    @property
    def dimension_ok(self) -> bool:
        if self.degree >= 1:
            return self.size == self.degree
        return self.size <= 1

    @property
    def ok(self) -> bool:
        return self.members_ok and self.independent and self.dimension_ok

    def to_json(self) -> dict:
        return {"membership": self.membership, "rank": self.rank, "size": self.size,
                "degree": self.degree, "eval_points": self.eval_points,
                "independent": self.independent, "dimension_ok": self.dimension_ok, "ok": self.ok}


def evaluation_points(basis: RRBasis) -> list[CurvePoint]:
    """Affine points off supp(G) where every basis function is regular."""
    E = basis.curve
    bad = set(basis.divisor.support)
    for f in basis.functions:
        bad |= set(f.pole_candidates())
    return [P for P in E.affine_points() if P not in bad]


def evaluation_matrix(functions: Iterable[CurveFunction], points: Sequence[CurvePoint]) -> list[list[int]]:
    return [[f.evaluate(P) for P in points] for f in functions]


def verify_basis(basis: RRBasis, extra_eval_points: Sequence[CurvePoint] | None = None) -> BasisReport:
    E = basis.curve
    pts = list(extra_eval_points) if extra_eval_points is not None else evaluation_points(basis)
    n = len(basis.functions)
    if len(pts) < n + 2:
        raise InsufficientPoints(f"{len(pts)} evaluation points for {n} functions")
    membership = [pole_certificate(f, basis.divisor) for f in basis.functions]
    try:
        M = evaluation_matrix(basis.functions, pts)
        rk = linalg.rank(E.field, M) if n else 0
    except PoleAtPoint:
        rk = -1
    return BasisReport(membership, rk, n, basis.divisor.degree, len(pts))
