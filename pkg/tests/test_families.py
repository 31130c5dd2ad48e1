from __future__ import annotations

import itertools
import random

import pytest

from ellcode import codes
from ellcode.automorphism import automorphisms_of_order, identity, orbit
from ellcode.curve import INFINITY, CurvePoint, EllipticCurve
from ellcode.divisor import Divisor
from ellcode.errors import (
    DegreeOutOfRange,
    ExclusionViolated,
    ExponentCaseViolated,
    FunctionInSpace,
    OrbitCollision,
    SupportOverlap,
    UnsupportedOrder,
)
from ellcode.families import (
    EvaluationSpec,
    GoppaLikeSpec,
    QCSpec,
    code_automorphism_action,
    evaluation_code,
    goppa_like,
    one_point_goppa_like,
    orbit_support,
    qc_goppa_like,
    qc_ssde,
    sample_orbit_reps,
    zeros_form_code,
)
from ellcode.field import ExtField, SubfieldEmbedding
from ellcode.function import CurveFunction
from ellcode.rr_basis import excluded_orbit_point

E7 = EllipticCurve.short(ExtField(7), 0, 1)
E16 = EllipticCurve(ExtField(2, 4), 0, 0, 1, 1, 0)  # y^2 + y = x^3 + x
E49 = EllipticCurve.short(ExtField(7, 2), 1, 0)  # y^2 = x^3 + x, j = 1728


def dot(F, a, b):
    acc = 0
    for x, y in zip(a, b):
        acc = F.add(acc, F.mul(x, y))
    return acc


def good_reps(sigma, count):
    E = sigma.curve
    reps, used = [], set()
    for P in E.affine_points():
        if P in used or excluded_orbit_point(E, P):
            continue
        orb = orbit(sigma, P)
        if len(orb) == sigma.order:
            reps.append(P)
            used |= set(orb)
        if len(reps) == count:
            break
    return reps


def test_one_point_evaluation_code_over_gf7():
    pts = E7.affine_points()
    C = evaluation_code(EvaluationSpec(E7, pts, Divisor.at_infinity(E7, 3)))
    assert (C.n, C.k) == (11, 3)
    # independent oracle: evaluate 1, x, y directly
    direct = [[1] * 11, [P.x for P in pts], [P.y for P in pts]]
    assert C.same_code(codes.from_rows(E7.field, direct))
    assert codes.min_distance_exhaustive(C) >= 11 - 3


def test_evaluation_code_errors():
    pts = E7.affine_points()
    P = pts[0]
    with pytest.raises(SupportOverlap):
        evaluation_code(EvaluationSpec(E7, pts, Divisor.point(E7, P, 2)))
    with pytest.raises(SupportOverlap):
        evaluation_code(EvaluationSpec(E7, [P, P], Divisor.at_infinity(E7, 1)))
    with pytest.raises(DegreeOutOfRange):
        evaluation_code(EvaluationSpec(E7, pts[:4], Divisor.at_infinity(E7, 4)))
    with pytest.raises(DegreeOutOfRange):
        evaluation_code(EvaluationSpec(E7, pts[1:], Divisor(E7, {P: 2, INFINITY: 2})))


def test_automorphism_actions():
    pts = E7.affine_points()
    C = evaluation_code(EvaluationSpec(E7, pts, Divisor.at_infinity(E7, 4)))
    ident = code_automorphism_action(C, identity(E7), pts)
    assert ident.invariant and ident.permutation == list(range(11))
    # sigma fixes P_inf, so L(k P_inf) and every power of sigma preserve the code
    sigma = automorphisms_of_order(E7, 6)[0]
    for j in range(6):
        act = code_automorphism_action(C, sigma.power(j), pts)
        assert act.invariant
        assert act.code.same_code(C)
    # a one-point divisor at a moved point is not preserved
    P = CurvePoint(2, 3)
    assert sigma(P) != P
    moved = set(orbit(sigma, P))
    D = [Q for Q in pts if Q not in moved]
    C2 = evaluation_code(EvaluationSpec(E7, D, Divisor.point(E7, P, 3)))
    act = code_automorphism_action(C2, sigma, D)
    assert not act.invariant and act.failing_rows


def test_tiny_gf16_ssde_instance():
    sigma = automorphisms_of_order(E16, 2)[0]
    res = qc_ssde(QCSpec(sigma, 4, k_inf=3, seed=5, subfield_degree=1))
    assert res.n == 8 and res.evaluation.k == 3
    C = res.code
    assert C.field == ExtField(2)
    # independent oracle: every binary vector orthogonal to the evaluation rows
    emb = SubfieldEmbedding(E16.field, 1)
    brute = [v for v in itertools.product((0, 1), repeat=8)
             if all(dot(E16.field, [emb.to_big[c] for c in v], row) == 0 for row in res.evaluation.generator)]
    assert len(brute) == 2 ** C.k
    assert set(brute) == set(codes.enumerate_codewords(C))
    assert C.k >= res.subfield_bound()
    assert codes.is_quasi_cyclic(C, 2)


@pytest.mark.parametrize("ell,shape", [(2, "kinf"), (4, "kinf"), (4, "orbit"), (2, "orbit")])
def test_qc_ssde_is_closed_under_block_shift(ell, shape):
    sigma = automorphisms_of_order(E49, ell)[0]
    rng = random.Random(ell)
    if shape == "kinf":
        spec = QCSpec(sigma, 5, k_inf=ell + 1, seed=1, subfield_degree=1)
    else:
        spec = QCSpec(sigma, 5, good_reps(sigma, 1), [1], c=1, seed=2, subfield_degree=1)
    res = qc_ssde(spec)
    C = res.code
    for _ in range(100):
        w = C.codeword([rng.randrange(C.field.order) for _ in range(C.k)])
        assert C.contains(codes.block_shift(w, ell, res.column_grouping))
    assert codes.block_circulant_form(C, ell, res.column_grouping).ok
    # the code sits inside the dual of the evaluation code
    for w in C.generator:
        for row in res.evaluation.generator:
            assert dot(E49.field, [SubfieldEmbedding(E49.field, 1).to_big[c] for c in w], row) == 0


def test_seeded_support_is_reproducible():
    sigma = automorphisms_of_order(E49, 4)[0]
    a = sample_orbit_reps(sigma, 4, seed=11)
    assert a == sample_orbit_reps(sigma, 4, seed=11)
    pts, orbits = orbit_support(sigma, a)
    assert len(pts) == 16 and all(len(o) == 4 for o in orbits)
    with pytest.raises(OrbitCollision):
        orbit_support(sigma, [a[0], sigma(a[0])])
    with pytest.raises(ExclusionViolated):
        orbit_support(sigma, [a[0]], avoid=[sigma(a[0])])
    with pytest.raises(OrbitCollision):
        sample_orbit_reps(sigma, 10 ** 3)


def test_qc_order_three_rejected():
    sigma = automorphisms_of_order(E7, 3)[0]
    with pytest.raises(UnsupportedOrder):
        qc_ssde(QCSpec(sigma, 2, k_inf=2))


def test_goppa_like_basics_and_errors():
    pts = E7.affine_points()
    g = CurveFunction(E7, (1, 0, 1))  # x^2 + 1 has no roots mod 7, so g has no affine zeros
    res = one_point_goppa_like(E7, pts, 3, g, s_prime=4)
    assert res.evaluation.k == 3
    assert res.code.k == 11 - 3
    assert res.divisor is None  # the zeros of g are not rational
    rational = one_point_goppa_like(E7, [Q for Q in pts if Q.x not in (1, 6)], 2, CurveFunction(E7, (6, 0, 1)), s_prime=4)  # x^2 - 1
    assert rational.divisor.degree == 2
    with pytest.raises(FunctionInSpace):
        goppa_like(GoppaLikeSpec(E7, pts, Divisor.at_infinity(E7, 4), g))
    with pytest.raises(DegreeOutOfRange):
        one_point_goppa_like(E7, pts, 2, g)  # pole order of g is 4, not s + 1 = 3
    h = CurveFunction(E7, (E7.field.neg(2), 1))  # X - 2 vanishes at (2, 3) and (2, 4)
    h = h * CurveFunction.x(E7)
    with pytest.raises(SupportOverlap):
        goppa_like(GoppaLikeSpec(E7, pts, Divisor.at_infinity(E7, 3), h))


def test_zeros_form_contains_goppa_like():
    E = EllipticCurve.short(ExtField(7, 2), 1, 0)
    g = CurveFunction.x(E) * CurveFunction.x(E) + CurveFunction.constant(E, 3)
    zeros = set(g.zero_divisor().support)
    pts = [P for P in E.affine_points() if P not in zeros][:30]
    direct = one_point_goppa_like(E, pts, 3, g, s_prime=4)
    other = zeros_form_code(E, pts, g)
    assert other.k == direct.code.k


def test_qc_goppa_like_exponents():
    sigma = automorphisms_of_order(E49, 4)[0]
    reps = good_reps(sigma, 2)
    spec = QCSpec(sigma, 4, [reps[0]], [1], seed=3, subfield_degree=1)
    res = qc_goppa_like(spec)
    assert codes.is_quasi_cyclic(res.code, 4, res.column_grouping)
    with pytest.raises(ExponentCaseViolated):
        qc_goppa_like(spec, [reps[0]], [1])  # below t + 1
    with pytest.raises(ExponentCaseViolated):
        qc_goppa_like(spec, [reps[1]], [0])
    other = qc_goppa_like(spec, [reps[1]], [2])
    assert codes.is_quasi_cyclic(other.code, 4, other.column_grouping)
