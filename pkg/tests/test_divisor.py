from __future__ import annotations

import random

import pytest
from hypothesis import given, settings, strategies as st

from ellcode.curve import INFINITY, CurvePoint, EllipticCurve
from ellcode.divisor import Divisor, degree, disjoint, divisor_ops, is_effective, support
from ellcode.errors import CurveMismatch, PointNotOnCurve
from ellcode.field import ExtField

E = EllipticCurve.short(ExtField(7), 0, 1)
PTS = list(E.points)

divisors = st.lists(
    st.tuples(st.sampled_from(PTS), st.integers(-4, 4)), max_size=6
).map(lambda items: Divisor(E, items))


@settings(max_examples=80, deadline=None)
@given(divisors, divisors, st.integers(-3, 3))
def test_group_structure(A, B, n):
    assert degree(A + B) == degree(A) + degree(B)
    assert A + B == B + A
    assert A - A == Divisor(E)
    assert (A * n).degree == n * A.degree
    assert -(-A) == A
    assert divisor_ops(A, B, "add") == A + B
    assert divisor_ops(A, None, "neg") == -A
    assert Divisor.from_json(E, A.to_json()) == A
    assert support(A) == {P for P in PTS if A[P] != 0}
    assert is_effective(A) == all(A[P] >= 0 for P in PTS)


def test_construction_and_support():
    P, Q = CurvePoint(2, 3), CurvePoint(0, 1)
    D = Divisor(E, [(P, 2), (Q, -1), (P, -2)])
    assert D.coeffs == {Q: -1}
    assert Divisor.at_infinity(E, 5).degree == 5
    S = Divisor.sum_of(E, [P, Q])
    assert S.is_effective and S.degree == 2
    assert disjoint(S, Divisor.at_infinity(E, 3))
    assert not S.disjoint(Divisor.point(E, P))
    assert (S + Divisor.at_infinity(E, 2)).affine_part == S
    assert len({S, Divisor.sum_of(E, [Q, P])}) == 1


def test_errors():
    with pytest.raises(PointNotOnCurve):
        Divisor(E, {CurvePoint(2, 5): 1})
    other = EllipticCurve.short(ExtField(7), 1, 1)
    with pytest.raises(CurveMismatch):
        Divisor(E) + Divisor(other)
