"""Code families built on explicit Riemann-Roch bases.

Evaluation codes C_L(D, G), the quasi-cyclic subfield subcode of the dual
(QC-SSDE), and Goppa-like codes Gamma(D, G', g) = C_L(D, G' + div g)^perp
restricted to a subfield, with their quasi-cyclic variant.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from typing import Sequence

from . import codes, poly
from .automorphism import CurveAutomorphism, orbit
from .codes import LinearCode
from .curve import INFINITY, CurvePoint, EllipticCurve
from .divisor import Divisor
from .errors import (
    BadOrbitPoint,
    DegreeOutOfRange,
    ExclusionViolated,
    ExponentCaseViolated,
    FunctionInSpace,
    NotInvariant,
    OrbitCollision,
    SupportOverlap,
    UnsupportedOrder,
    UnsupportedPlace,
)
from .function import CurveFunction, pole_certificate
from .rr_basis import (
    RRBasis,
    basis_at_infinity,
    evaluation_matrix,
    excluded_orbit_point,
    multipoint_basis,
    multipoint_basis_minus_infinity,
    orbit_denominator,
    orbit_divisor,
    qc_orbit_basis,
)


def basis_for(G: Divisor, method: str = "auto") -> RRBasis:
    """Pick a basis construction from the shape of G.

    Supported shapes: k P_inf, an effective affine divisor, and G0 - P_inf
    with G0 effective and affine.
    """
    E = G.curve
    inf = G[INFINITY]
    aff = G.affine_part
    if not aff.coeffs:
        if inf < 1:
            raise DegreeOutOfRange(f"no basis construction for {G!r}")
        return basis_at_infinity(E, inf)
    if not aff.is_effective:
        raise DegreeOutOfRange("affine part of G must be effective")
    if inf == 0:
        return multipoint_basis(E, aff, method)
    if inf == -1:
        return multipoint_basis_minus_infinity(E, aff, method)
    raise DegreeOutOfRange(f"unsupported multiplicity {inf} at P_inf alongside affine points")


def _check_support(E: EllipticCurve, points: Sequence[CurvePoint]) -> list[CurvePoint]:
    pts = list(points)
    if len(set(pts)) != len(pts):
        raise SupportOverlap("evaluation points must be pairwise distinct")
    for P in pts:
        if P.is_infinity:
            raise SupportOverlap("P_inf cannot be an evaluation point")
        if not E.is_on_curve(P):
            raise SupportOverlap(f"{P} is not on the curve")
    return pts


# -- evaluation codes ------------------------------------------------------------------

@dataclass
class EvaluationSpec:
    curve: EllipticCurve
    points: list[CurvePoint]
    G: Divisor
    basis: RRBasis | None = None

    @property
    def D(self) -> Divisor:
        return Divisor.sum_of(self.curve, self.points)

    @property
    def n(self) -> int:
        return len(self.points)


def evaluation_code(spec: EvaluationSpec) -> LinearCode:
    """C_L(D, G): rows (f(P_1), ..., f(P_n)) for f in a basis of L(G)."""
    E, G = spec.curve, spec.G
    pts = _check_support(E, spec.points)
    clash = set(pts) & set(G.support)
    if clash:
        raise SupportOverlap(f"supp(D) meets supp(G) at {sorted(clash, key=E.point_key)[0]}")
    if not 0 < G.degree < len(pts):
        raise DegreeOutOfRange(f"need 0 < deg(G) = {G.degree} < n = {len(pts)}")
    basis = spec.basis if spec.basis is not None else basis_for(G)
    if basis.divisor != G:
        raise DegreeOutOfRange("supplied basis belongs to a different divisor")
    rows = evaluation_matrix(basis.functions, pts)
    prov = {"family": "evaluation", "construction": basis.construction, "deg_G": G.degree}
    return codes.from_rows(E.field, rows, len(pts), prov)


# -- automorphism action ------------------------------------------------------------------

@dataclass
class AutomorphismAction:
    code: LinearCode
    permutation: list[int]
    invariant: bool
    failing_rows: list[int] = dc_field(default_factory=list)


def code_automorphism_action(C: LinearCode, sigma: CurveAutomorphism,
                             points: Sequence[CurvePoint]) -> AutomorphismAction:
    """Permute coordinates by (f(P_i)) -> (f(sigma(P_i))) and test whether C is preserved."""
    index = {P: i for i, P in enumerate(points)}
    if len(index) != C.n:
        raise NotInvariant(f"{len(index)} distinct points for a code of length {C.n}")
    perm = []
    for P in points:
        Q = sigma.apply(P)
        if Q not in index:
            raise NotInvariant(f"sigma maps {P} outside the support")
        perm.append(index[Q])
    rows = [[row[j] for j in perm] for row in C.generator]
    failing = [i for i, r in enumerate(rows) if not C.contains(r)]
    image = codes.from_rows(C.field, rows, C.n, {"permuted_by": sigma.to_json()})
    return AutomorphismAction(image, perm, not failing, failing)


# -- orbit supports ------------------------------------------------------------------------

def orbit_support(sigma: CurveAutomorphism, reps: Sequence[CurvePoint],
                  avoid: Sequence[CurvePoint] = ()) -> tuple[list[CurvePoint], list[list[CurvePoint]]]:
    """Support (P_0, s(P_0), ..., s^{l-1}(P_0), P_1, ...) from explicit representatives."""
    E = sigma.curve
    ell = sigma.order
    banned = set(avoid) | {INFINITY}
    seen: set[CurvePoint] = set()
    orbits = []
    for P in reps:
        if not E.is_on_curve(P):
            raise ExclusionViolated(f"{P} is not on the curve")
        orb = orbit(sigma, P)
        if len(orb) != ell:
            raise ExclusionViolated(f"orbit of {P} has size {len(orb)}, expected {ell}")
        if banned & set(orb):
            raise ExclusionViolated(f"orbit of {P} meets supp(G)")
        if seen & set(orb):
            raise OrbitCollision(f"{P} lies in the orbit of an earlier representative")
        seen |= set(orb)
        orbits.append(orb)
    return [Q for orb in orbits for Q in orb], orbits


def sample_orbit_reps(sigma: CurveAutomorphism, count: int, avoid: Sequence[CurvePoint] = (),
                      seed: int = 0) -> list[CurvePoint]:
    """Seeded choice of count points with pairwise disjoint full-length orbits off avoid."""
    E = sigma.curve
    ell = sigma.order
    banned = set(avoid) | {INFINITY}
    pool = list(E.affine_points())
    random.Random(seed).shuffle(pool)
    reps: list[CurvePoint] = []
    used: set[CurvePoint] = set()
    for P in pool:
        if len(reps) == count:
            break
        if P in used:
            continue
        orb = orbit(sigma, P)
        if len(orb) != ell or banned & set(orb):
            continue
        used |= set(orb)
        reps.append(P)
    if len(reps) < count:
        raise OrbitCollision(f"only {len(reps)} disjoint orbits of size {ell} available, need {count}")
    return reps


# -- QC-SSDE ---------------------------------------------------------------------------

@dataclass
class QCSpec:
    """Quasi-cyclic data: sigma, D orbits (given or sampled) and G.

    G is k_inf * P_inf when k_inf is set, otherwise
    sum_z t_z Orb(Q_z) - c P_inf with Q_z = g_reps[z], t_z = g_mults[z].
    """

    sigma: CurveAutomorphism
    n_orbits: int
    g_reps: list[CurvePoint] = dc_field(default_factory=list)
    g_mults: list[int] = dc_field(default_factory=list)
    c: int = 0
    k_inf: int | None = None
    d_reps: list[CurvePoint] | None = None
    seed: int = 0
    subfield_degree: int = 1

    @property
    def ell(self) -> int:
        return self.sigma.order


@dataclass
class QCResult:
    spec: QCSpec
    points: list[CurvePoint]
    orbits: list[list[CurvePoint]]
    G: Divisor
    basis: RRBasis
    evaluation: LinearCode
    code: LinearCode
    parity_check: list[list[int]] | None = None

    @property
    def n(self) -> int:
        return len(self.points)

    @property
    def ell(self) -> int:
        return self.spec.ell

    @property
    def column_grouping(self) -> list[list[int]]:
        l = self.ell
        return [list(range(b, b + l)) for b in range(0, self.n, l)]

    def subfield_bound(self) -> int:
        """n - (m/d)(n - k) for the restricted code, k = dim of the code before restriction."""
        big_m = self.evaluation.field.m
        rel = big_m // self.spec.subfield_degree
        k_parent = self.n - self.evaluation.k
        return self.n - rel * (self.n - k_parent)

    def provenance(self) -> dict:
        E = self.G.curve
        return {"ell": self.ell, "seed": self.spec.seed, "sigma": self.spec.sigma.to_json(),
                "support": [E.point_to_json(P) for P in self.points], "G": self.G.to_json(),
                "basis": self.basis.construction, "subfield_degree": self.spec.subfield_degree}


def _qc_divisor_and_basis(spec: QCSpec) -> tuple[Divisor, RRBasis]:
    sigma = spec.sigma
    E = sigma.curve
    if spec.ell not in (2, 4, 6):
        raise UnsupportedOrder(f"quasi-cyclic constructions need order 2, 4 or 6, got {spec.ell}")
    if spec.k_inf is not None:
        basis = basis_at_infinity(E, spec.k_inf)
        return basis.divisor, basis
    for Q in spec.g_reps:
        why = excluded_orbit_point(E, Q)
        if why:
            raise ExclusionViolated(f"orbit representative {Q} is excluded ({why})")
    try:
        basis = qc_orbit_basis(sigma, spec.g_reps, spec.g_mults, spec.c)
    except BadOrbitPoint as exc:
        raise ExclusionViolated(str(exc)) from exc
    return basis.divisor, basis


def _qc_support(spec: QCSpec, avoid: Sequence[CurvePoint]) -> tuple[list[CurvePoint], list[list[CurvePoint]]]:
    reps = spec.d_reps
    if reps is None:
        reps = sample_orbit_reps(spec.sigma, spec.n_orbits, avoid, spec.seed)
    elif len(reps) != spec.n_orbits:
        raise ExclusionViolated(f"{len(reps)} representatives given for {spec.n_orbits} orbits")
    return orbit_support(spec.sigma, reps, avoid)


def qc_ssde(spec: QCSpec) -> QCResult:
    """Parity-check matrix over GF(p^d) of C_L(D, G)^perp restricted to GF(p^d).

    H_0 is the evaluation generator of C_L(D, G); each entry is expanded over
    the subfield and the stacked rows are reduced.  Columns follow orbit order.
    """
    E = spec.sigma.curve
    G, basis = _qc_divisor_and_basis(spec)
    points, orbits = _qc_support(spec, G.support)
    n = len(points)
    if not 0 < G.degree < n:
        raise DegreeOutOfRange(f"need 0 < deg(G) = {G.degree} < n = {n}")
    H0 = evaluation_matrix(basis.functions, points)
    C = codes.from_rows(E.field, H0, n, {"family": "evaluation", "construction": basis.construction})
    H, sub = codes.subfield_subcode_from_parity(C.generator, E.field, spec.subfield_degree, n)
    res = QCResult(spec, points, orbits, G, basis, C, sub, H)
    sub.provenance = {"family": "qc-ssde", **res.provenance()}
    return res


# -- Goppa-like codes -----------------------------------------------------------------------

@dataclass
class GoppaLikeSpec:
    curve: EllipticCurve
    points: list[CurvePoint]
    G_prime: Divisor
    g: CurveFunction
    subfield_degree: int = 1
    basis: RRBasis | None = None


@dataclass
class GoppaLikeResult:
    spec: GoppaLikeSpec
    basis: RRBasis
    functions: list[CurveFunction]
    divisor: Divisor | None  # G' + div(g), None when div(g) has non-rational places
    evaluation: LinearCode
    code: LinearCode


def goppa_like(spec: GoppaLikeSpec) -> GoppaLikeResult:
    """Gamma(D, G', g): dual of {ev_D(f / g) : f in L(G')}, restricted to GF(p^d)."""
    E, Gp, g = spec.curve, spec.G_prime, spec.g
    pts = _check_support(E, spec.points)
    if not Gp.is_effective:
        raise DegreeOutOfRange("G' must be effective")
    if not 0 < Gp.degree < len(pts):
        raise DegreeOutOfRange(f"need 0 < deg(G') = {Gp.degree} < n = {len(pts)}")
    if g.is_zero or pole_certificate(g, Gp):
        raise FunctionInSpace("g lies in L(G')")
    try:
        div_g = g.principal_divisor()
        bad = set(Gp.support) | set(div_g.support)
    except UnsupportedPlace:
        # some zeros or poles of g are not rational; none of those can meet D
        div_g = None
        bad = set(Gp.support) | {P for P in pts if g.valuation(P) != 0}
    clash = [P for P in pts if P in bad]
    if clash:
        raise SupportOverlap(f"{clash[0]} lies in supp(G') or supp(div g)")
    basis = spec.basis if spec.basis is not None else basis_for(Gp)
    ginv = g.inverse()
    fns = [f * ginv for f in basis.functions]
    rows = evaluation_matrix(fns, pts)
    G = Gp + div_g if div_g is not None else None
    C = codes.from_rows(E.field, rows, len(pts), {"family": "evaluation", "construction": basis.construction,
                                                  "scaled_by_inverse_of": g.to_json()})
    _, sub = codes.subfield_subcode_from_parity(C.generator, E.field, spec.subfield_degree, len(pts))
    sub.provenance = {"family": "goppa-like", "G_prime": Gp.to_json(), "g": g.to_json(),
                      "subfield_degree": spec.subfield_degree}
    return GoppaLikeResult(spec, basis, fns, G, C, sub)


def one_point_goppa_like(E: EllipticCurve, points: Sequence[CurvePoint], s: int, g: CurveFunction,
                         s_prime: int | None = None, subfield_degree: int = 1) -> GoppaLikeResult:
    """Gamma(D, s P_inf, g) with g in L(s' P_inf) of exact pole order s' > s (default s' = s + 1)."""
    if s_prime is None:
        s_prime = s + 1
    if s_prime <= s:
        raise DegreeOutOfRange(f"s' = {s_prime} must exceed s = {s}")
    order = -g.valuation(INFINITY)
    if order != s_prime:
        raise DegreeOutOfRange(f"g has pole order {order} at P_inf, expected {s_prime}")
    if g.pole_candidates():
        raise DegreeOutOfRange("g must be a polynomial function (poles only at P_inf)")
    spec = GoppaLikeSpec(E, list(points), Divisor.at_infinity(E, s), g, subfield_degree)
    return goppa_like(spec)


def zeros_form_code(E: EllipticCurve, points: Sequence[CurvePoint], g: CurveFunction,
                    subfield_degree: int = 1) -> LinearCode:
    """C_L(D, (g)_0 - P_inf)^perp restricted to GF(p^d)."""
    pts = _check_support(E, points)
    G0 = g.zero_divisor()
    G = G0 - Divisor.at_infinity(E, 1)
    C = evaluation_code(EvaluationSpec(E, pts, G, multipoint_basis_minus_infinity(E, G0)))
    _, sub = codes.subfield_subcode_from_parity(C.generator, E.field, subfield_degree, len(pts))
    sub.provenance = {"family": "goppa-like-zeros-form", "G": G.to_json(), "subfield_degree": subfield_degree}
    return sub


# -- QC-Goppa-like --------------------------------------------------------------------------

def orbit_polynomial(sigma: CurveAutomorphism, reps: Sequence[CurvePoint],
                     exponents: Sequence[int]) -> poly.Poly:
    """prod_z [prod over the distinct x of Orb(Q_z) of (X - x)]^{t*_z}."""
    E = sigma.curve
    orbits = []
    for Q in reps:
        orb = orbit(sigma, Q)
        if len(orb) != sigma.order:
            raise ExclusionViolated(f"orbit of {Q} has size {len(orb)}, expected {sigma.order}")
        orbits.append(orb)
    try:
        return orbit_denominator(E, orbits, exponents)
    except BadOrbitPoint as exc:
        raise ExclusionViolated(str(exc)) from exc


def qc_goppa_like(spec: QCSpec, g_orbit_reps: Sequence[CurvePoint] | None = None,
                  t_star: Sequence[int] | None = None) -> QCResult:
    """Quasi-cyclic Goppa-like code with G' = sum_z t_z Orb(Q_z).

    g is built from the orbits of g_orbit_reps (default: the G' orbits) with
    exponents t*_z.  An orbit inside supp(G') needs t*_z = t_z + 1; an orbit
    outside it needs t*_z > 0.
    """
    sigma = spec.sigma
    E = sigma.curve
    if spec.k_inf is not None or spec.c:
        raise ExclusionViolated("G' must be a pure orbit divisor")
    Gp, basis = _qc_divisor_and_basis(spec)
    reps = list(g_orbit_reps) if g_orbit_reps is not None else list(spec.g_reps)
    if t_star is None:
        t_star = [t + 1 for t in spec.g_mults] if g_orbit_reps is None else None
    if t_star is None or len(t_star) != len(reps) or not reps:
        raise ExponentCaseViolated("need one exponent t* per orbit of g")
    mult_of = {}
    for Q, t in zip(spec.g_reps, spec.g_mults):
        for P in orbit(sigma, Q):
            mult_of[P] = t
    for Q, ts in zip(reps, t_star):
        why = excluded_orbit_point(E, Q)
        if why:
            raise ExclusionViolated(f"orbit representative {Q} of g is excluded ({why})")
        orb = orbit(sigma, Q)
        inside = [P in mult_of for P in orb]
        if all(inside):
            need = mult_of[Q] + 1
            if ts != need:
                raise ExponentCaseViolated(f"orbit of {Q} lies in supp(G'): t* must be {need}, got {ts}")
        elif any(inside):
            raise ExclusionViolated(f"orbit of {Q} partly meets supp(G')")
        elif ts < 1:
            raise ExponentCaseViolated(f"orbit of {Q} lies outside supp(G'): t* must be positive, got {ts}")
    g = CurveFunction(E, orbit_polynomial(sigma, reps, t_star))
    avoid = set(Gp.support) | set(g.zero_divisor().support)
    points, orbits = _qc_support(spec, sorted(avoid, key=E.point_key))
    gl = goppa_like(GoppaLikeSpec(E, points, Gp, g, spec.subfield_degree, basis))
    res = QCResult(spec, points, orbits, Gp, basis, gl.evaluation, gl.code)
    gl.code.provenance = {"family": "qc-goppa-like", **res.provenance(), "g": g.to_json(),
                          "t_star": list(t_star)}
    return res
