from __future__ import annotations

import pytest
from hypothesis import given, settings, strategies as st

from ellcode import poly
from ellcode.errors import (
    DivisionByZero,
    FieldMismatch,
    InvalidSubfieldDegree,
    NotPrime,
    ReducibleModulus,
)
from ellcode.field import (
    ExtField,
    SubfieldEmbedding,
    build_ext_field,
    decompose_over_prime,
    is_irreducible_mod_p,
    recompose,
    smallest_irreducible,
    subfield_membership,
)

FIELDS = [ExtField(2, 4), ExtField(3, 3), ExtField(7, 1), ExtField(5, 2), ExtField(2, 1), ExtField(2, 6)]


def naive_mul(p, modulus, a, b):
    """Schoolbook product of coefficient lists reduced by a monic modulus."""
    m = len(modulus) - 1
    prod = [0] * (2 * m)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            prod[i + j] = (prod[i + j] + x * y) % p
    for d in range(len(prod) - 1, m - 1, -1):
        c = prod[d]
        if c:
            for k in range(m + 1):
                prod[d - m + k] = (prod[d - m + k] - c * modulus[k]) % p
    return prod[:m]


def elements(F):
    return st.integers(min_value=0, max_value=F.order - 1)


def test_gf16_reference_product():
    F = ExtField(2, 4)
    assert F.modulus == (1, 1, 0, 0, 1)
    x = F.generator
    x3 = F.pow(x, 3)
    assert F.mul(x, x3) == F.from_coeffs([1, 1])
    assert F.pow(x, 15) == 1


def test_default_modulus_is_smallest_irreducible():
    assert smallest_irreducible(3, 2) == (1, 0, 1)
    assert smallest_irreducible(2, 3) == (1, 1, 0, 1)
    assert is_irreducible_mod_p((1, 1, 0, 0, 1), 2)
    assert not is_irreducible_mod_p((1, 0, 1), 2)


def test_construction_errors():
    with pytest.raises(NotPrime):
        build_ext_field(9, 1)
    with pytest.raises(ReducibleModulus):
        ExtField(2, 2, (1, 0, 1))
    with pytest.raises(DivisionByZero):
        ExtField(7).inv(0)
    with pytest.raises(ZeroDivisionError):
        ExtField(2, 3).div(1, 0)


@pytest.mark.parametrize("F", FIELDS, ids=str)
def test_mul_matches_schoolbook(F):
    for a in range(0, F.order, max(1, F.order // 17)):
        for b in range(0, F.order, max(1, F.order // 13)):
            want = F.from_coeffs(naive_mul(F.p, F.modulus, F.coeffs(a), F.coeffs(b)))
            assert F.mul(a, b) == want


@pytest.mark.parametrize("F", FIELDS, ids=str)
def test_multiplicative_group_is_cyclic_of_order_q_minus_1(F):
    for a in range(1, F.order):
        assert F.pow(a, F.order - 1) == 1
        assert F.mul(a, F.inv(a)) == 1


@pytest.mark.parametrize("F", FIELDS[:4], ids=str)
def test_field_axioms(F):
    @settings(max_examples=60, deadline=None)
    @given(elements(F), elements(F), elements(F))
    def check(a, b, c):
        assert F.add(a, F.add(b, c)) == F.add(F.add(a, b), c)
        assert F.mul(a, F.mul(b, c)) == F.mul(F.mul(a, b), c)
        assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
        assert F.sub(F.add(a, b), b) == a
        assert F.add(a, F.neg(a)) == 0
        # Frobenius is additive and multiplicative
        assert F.frobenius(F.add(a, b)) == F.add(F.frobenius(a), F.frobenius(b))
        assert F.frobenius(F.mul(a, b)) == F.mul(F.frobenius(a), F.frobenius(b))

    check()


def test_field_element_wrapper():
    F = ExtField(5, 2)
    a, b = F(7), F(13)
    assert (a * b) / b == a
    assert a - a == F(0)
    assert (a ** 24).code == 1
    assert -a + a == 0
    assert decompose_over_prime(a) == F.coeffs(7)
    assert recompose(F, decompose_over_prime(a)) == a
    with pytest.raises(FieldMismatch):
        a + ExtField(5, 1)(1)


def test_json_roundtrip():
    F = ExtField(3, 3)
    assert ExtField.from_json(F.to_json()) == F
    for a in (0, 5, 26):
        assert F.element_from_json(F.element_to_json(a)) == a


def test_sqrt_table_squares():
    for F in (ExtField(7, 1), ExtField(3, 2), ExtField(2, 3)):
        for a, r in F.sqrt_table.items():
            assert F.mul(r, r) == a
        squares = {F.mul(a, a) for a in range(F.order)}
        assert set(F.sqrt_table) == squares


@pytest.mark.parametrize("p,m,d", [(2, 4, 2), (2, 6, 3), (2, 6, 2), (3, 2, 1), (5, 2, 1), (2, 4, 1)])
def test_subfield_embedding(p, m, d):
    F = ExtField(p, m)
    emb = SubfieldEmbedding(F, d)
    small = emb.small
    # the embedded copy is exactly the fixed field of Frobenius^d and is closed under the operations
    fixed = {a for a in range(F.order) if F.frobenius(a, d) == a}
    assert set(emb.to_big) == fixed
    for a in range(0, small.order):
        for b in range(0, small.order):
            assert emb.to_big[small.mul(a, b)] == F.mul(emb.to_big[a], emb.to_big[b])
            assert emb.to_big[small.add(a, b)] == F.add(emb.to_big[a], emb.to_big[b])
    # coordinates reconstruct the element over the basis 1, x, ..., x^(m/d - 1)
    for a in range(F.order):
        acc, xl = 0, 1
        for c in emb.coordinates(a):
            acc = F.add(acc, F.mul(emb.to_big[c], xl))
            xl = F.mul(xl, F.generator)
        assert acc == a
    assert subfield_membership(F(emb.to_big[-1]), d)


def test_bad_subfield_degree():
    with pytest.raises(InvalidSubfieldDegree):
        SubfieldEmbedding(ExtField(2, 4), 3)


def test_poly_roots_and_division():
    F = ExtField(7)
    f = poly.from_roots(F, [1, 1, 3])
    found, rest = poly.roots(F, poly.mul(F, f, (1, 0, 1)))  # x^2 + 1 is irreducible mod 7
    assert found == {1: 2, 3: 1}
    assert poly.monic(F, rest) == (1, 0, 1)
    q, r = poly.divmod_(F, f, poly.linear(F, 3))
    assert r == () and poly.mul(F, q, poly.linear(F, 3)) == f
    assert poly.evaluate(F, poly.compose_linear(F, f, 2, 5), 1) == poly.evaluate(F, f, 0)
