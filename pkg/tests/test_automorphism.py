from __future__ import annotations

import itertools
import random

import pytest

from conftest import SMALL_FIELDS, random_curve
from ellcode.automorphism import (
    CurveAutomorphism,
    automorphism_group_report,
    automorphisms_of_order,
    classify_invariant_points,
    identity,
    list_automorphisms,
    orbit_partition,
    theoretical_group_order,
)
from ellcode.curve import INFINITY, EllipticCurve
from ellcode.errors import PointNotOnCurve, UnsupportedOrder
from ellcode.field import ExtField
from ellcode.function import CurveFunction


def weierstrass(E, x, y):
    F = E.field
    a1, a2, a3, a4, a6 = E.coefficients
    m, a = F.mul, F.add
    lhs = a(a(m(y, y), m(m(a1, x), y)), m(a3, y))
    x2 = m(x, x)
    rhs = a(a(a(m(x2, x), m(a2, x2)), m(a4, x)), a6)
    return F.sub(lhs, rhs)


def brute_automorphisms(E):
    """Every (u, r, s, t) with W(u^2 x + r, u^3 y + s u^2 x + t) = u^6 W(x, y) identically.

    Both sides have degree < q in each variable, so equality on all of F^2 is
    equality as polynomials.
    """
    F = E.field
    q = F.order
    grid = [(x, y) for x in range(q) for y in range(q)]
    base = {pt: weierstrass(E, *pt) for pt in grid}
    found = set()
    for u in range(1, q):
        u2 = F.mul(u, u)
        u3, u6 = F.mul(u2, u), F.pow(u, 6)
        for r, s, t in itertools.product(range(q), repeat=3):
            ok = True
            for x, y in grid:
                X = F.add(F.mul(u2, x), r)
                Y = F.add(F.add(F.mul(u3, y), F.mul(F.mul(s, u2), x)), t)
                if weierstrass(E, X, Y) != F.mul(u6, base[(x, y)]):
                    ok = False
                    break
            if ok:
                found.add((u, r, s, t))
    return found


CASES = [
    ((2, 2), (0, 0, 1, 0, 0)),
    ((2, 2), (1, 0, 0, 0, 1)),
    ((5, 1), (0, 0, 0, 0, 1)),
    ((5, 1), (0, 0, 0, 1, 0)),
    ((7, 1), (0, 0, 0, 0, 1)),
    ((7, 1), (1, 2, 3, 1, 5)),
    ((3, 2), (0, 0, 0, 1, 0)),
    ((3, 2), (1, 1, 0, 0, 1)),
]


@pytest.mark.parametrize("pm,coeffs", CASES)
def test_group_matches_brute_force(pm, coeffs):
    E = EllipticCurve(ExtField(*pm), *coeffs)
    auts = list_automorphisms(E)
    assert {a.params for a in auts} == brute_automorphisms(E)
    assert theoretical_group_order(E) % len(auts) == 0


def test_known_group_sizes():
    # y^2 = x^3 + 1 over GF(7): j = 0, 6 | q - 1 so all six are rational
    assert len(list_automorphisms(EllipticCurve.short(ExtField(7), 0, 1))) == 6
    # y^2 = x^3 + x over GF(5): j = 1728, 4 | q - 1
    assert len(list_automorphisms(EllipticCurve.short(ExtField(5), 1, 0))) == 4
    # supersingular curve over GF(4) has the full group of order 24
    E = EllipticCurve.char2_supersingular(ExtField(2, 2), 1, 0, 0)
    rep = automorphism_group_report(E)
    assert rep["rational_count"] == 24 and rep["complete"]


@pytest.mark.parametrize("pm", SMALL_FIELDS)
def test_automorphisms_act_on_points_and_functions(pm):
    rng = random.Random(sum(pm) + 100)
    F = ExtField(*pm)
    shapes = ["general", "short"] if F.p > 2 else ["char2_supersingular", "char2_ordinary"]
    for shape in shapes:
        E = random_curve(F, rng, shape)
        pts = set(E.points)
        x, y = CurveFunction.x(E), CurveFunction.y(E)
        for sigma in list_automorphisms(E):
            image = {sigma(P) for P in pts}
            assert image == pts
            assert sigma(INFINITY) == INFINITY
            for P in list(pts)[:8]:
                if P.is_infinity:
                    continue
                # (f o sigma)(P) = f(sigma(P))
                for f in (x, y, x * y + x):
                    assert sigma.pullback(f).evaluate(P) == f.evaluate(sigma(P))
            assert sigma.power(sigma.order).is_identity
            assert CurveAutomorphism.from_json(E, sigma.to_json()) == sigma
        # negation is always there
        assert any(all(s(P) == E.negate(P) for P in pts) for s in list_automorphisms(E))


def test_composition_is_associative_and_closed():
    E = EllipticCurve.char2_supersingular(ExtField(2, 2), 1, 0, 0)
    auts = list_automorphisms(E)
    params = {a.params for a in auts}
    P = E.affine_points()[0]
    for a, b in itertools.product(auts[:8], auts[:8]):
        ab = a.compose(b)
        assert ab.params in params
        assert ab(P) == a(b(P))


def test_orbit_partition_covers_points():
    E = EllipticCurve.short(ExtField(7), 0, 1)
    for sigma in automorphisms_of_order(E, 6):
        part = orbit_partition(sigma)
        assert sum(part.sizes) == len(E.points)
        assert all(6 % s == 0 for s in part.sizes)
        for P in E.points:
            assert P in part.orbit_of(P)


def test_classification_in_large_characteristic():
    E = EllipticCurve.short(ExtField(13), 0, 5)
    for ell in (2, 3, 6):
        for sigma in automorphisms_of_order(E, ell):
            assert classify_invariant_points(E, sigma).ok


def test_errors():
    E = EllipticCurve.short(ExtField(7), 0, 1)
    with pytest.raises(UnsupportedOrder):
        automorphisms_of_order(E, 5)
    with pytest.raises(PointNotOnCurve):
        CurveAutomorphism.from_json(E, {"u": 1, "r": 1})
    assert identity(E).order == 1
