from __future__ import annotations

import random

import pytest

from conftest import SMALL_FIELDS, random_curve
from ellcode.curve import INFINITY, CurvePoint, EllipticCurve
from ellcode.divisor import Divisor
from ellcode.errors import DivisionByZero, PoleAtPoint, UnsupportedPlace, ZeroFunction
from ellcode.field import ExtField
from ellcode.function import CurveFunction, evaluate, fn_arith, pole_certificate, valuation


def random_function(E, rng, deg=3):
    q = E.field.order
    while True:
        a = [rng.randrange(q) for _ in range(rng.randint(0, deg))]
        b = [rng.randrange(q) for _ in range(rng.randint(0, deg - 1))]
        d = [rng.randrange(q) for _ in range(rng.randint(0, deg))] + [1]
        f = CurveFunction(E, a, b, d)
        if not f.is_zero:
            return f


def direct_value(E, f, P):
    """Plug the coordinates straight into (a + bY)/d."""
    F = E.field
    ev = lambda p: sum_poly(F, p, P.x)
    return F.div(F.add(ev(f.num_a), F.mul(ev(f.num_b), P.y)), ev(f.den))


def sum_poly(F, p, x):
    acc, xp = 0, 1
    for c in p:
        acc = F.add(acc, F.mul(c, xp))
        xp = F.mul(xp, x)
    return acc


@pytest.mark.parametrize("pm", SMALL_FIELDS)
def test_principal_divisor_and_values(pm):
    rng = random.Random(sum(pm) * 7)
    F = ExtField(*pm)
    for _ in range(3):
        E = random_curve(F, rng)
        for _ in range(6):
            f = random_function(E, rng)
            for P in E.affine_points():
                v = f.valuation(P)
                if sum_poly(F, f.den, P.x) != 0:
                    val = direct_value(E, f, P)
                    assert v >= 0
                    assert (v > 0) == (val == 0)
                    assert f.evaluate(P) == val
            try:
                div = f.principal_divisor()
            except UnsupportedPlace:
                continue  # some zeros or poles are not rational
            assert div.degree == 0
            for P in E.points:
                assert div[P] == f.valuation(P)


@pytest.mark.parametrize("pm", SMALL_FIELDS)
def test_valuation_is_additive(pm):
    rng = random.Random(sum(pm) * 11)
    E = random_curve(ExtField(*pm), rng)
    for _ in range(8):
        f, g = random_function(E, rng), random_function(E, rng)
        fg, h = f * g, f / g
        for P in E.points:
            assert fg.valuation(P) == f.valuation(P) + g.valuation(P)
            assert h.valuation(P) == f.valuation(P) - g.valuation(P)
        assert f * f.inverse() == CurveFunction.one(E)
        assert (f + g) - g == f
        assert fn_arith(f, g, "mul") == fg


def test_degree_zero_when_everything_splits():
    # X - a for rational a with two rational points above it
    E = EllipticCurve.short(ExtField(7), 0, 1)
    for P in E.affine_points():
        f = CurveFunction(E, (E.field.neg(P.x), 1))
        D = f.principal_divisor()
        assert D.degree == 0
        assert D[INFINITY] == -2
    chord = CurveFunction(E, (E.field.neg(3), 0), (1,))  # Y - 3 vanishes at the three points with y = 3
    D = chord.principal_divisor()
    assert D.degree == 0 and D[INFINITY] == -3


def test_weights_at_infinity():
    E = EllipticCurve.short(ExtField(11), 1, 3)
    for i in range(4):
        for j in range(2):
            assert CurveFunction.monomial(E, i, j).valuation(INFINITY) == -(2 * i + 3 * j)


def test_pole_certificate():
    E = EllipticCurve.short(ExtField(7), 0, 1)
    P = CurvePoint(2, 3)
    f = CurveFunction(E, (1,), (), (E.field.neg(2), 1))  # 1/(X - 2): simple poles at (2, 3), (2, 4)
    G = Divisor(E, {P: 1, CurvePoint(2, 4): 1})
    assert pole_certificate(f, G)
    assert not pole_certificate(f, Divisor.point(E, P))
    assert pole_certificate(CurveFunction.x(E), Divisor.at_infinity(E, 2))
    assert not pole_certificate(CurveFunction.y(E), Divisor.at_infinity(E, 2))
    with pytest.raises(PoleAtPoint):
        evaluate(f, P)
    assert valuation(f, P) == -1


def test_errors_and_json():
    E = EllipticCurve.short(ExtField(5), 1, 1)
    with pytest.raises(DivisionByZero):
        CurveFunction(E, (1,), (), ())
    with pytest.raises(ZeroFunction):
        CurveFunction(E).principal_divisor()
    f = CurveFunction(E, (1, 2), (3,), (4, 0, 1))
    assert CurveFunction.from_json(E, f.to_json()) == f
