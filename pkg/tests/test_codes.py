from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from ellcode import codes, linalg
from ellcode.errors import BadBlockLength, CodeTooLarge, RaggedRows
from ellcode.field import ExtField, SubfieldEmbedding

GF2 = ExtField(2)
HAMMING = [
    [1, 0, 0, 0, 0, 1, 1],
    [0, 1, 0, 0, 1, 0, 1],
    [0, 0, 1, 0, 1, 1, 0],
    [0, 0, 0, 1, 1, 1, 1],
]


def random_code(F, rng, n, k):
    return codes.from_rows(F, [[rng.randrange(F.order) for _ in range(n)] for _ in range(k)], n)


def naive_min_distance(C):
    return min((sum(1 for c in w if c) for w in codes.enumerate_codewords(C) if any(w)), default=C.n + 1)


def test_hamming_code():
    C = codes.from_rows(GF2, HAMMING)
    assert (C.n, C.k) == (7, 4)
    assert codes.min_distance_exhaustive(C) == 3
    assert codes.weight_distribution(C) == [1, 0, 0, 7, 7, 0, 0, 1]
    D = codes.dual(C)
    assert D.k == 3
    assert codes.min_distance_exhaustive(D) == 4  # simplex code
    assert codes.dual(D).same_code(C)


@pytest.mark.parametrize("pm", [(2, 1), (3, 1), (2, 2), (5, 1), (2, 3)])
def test_min_distance_matches_enumeration(pm):
    F = ExtField(*pm)
    rng = random.Random(pm[0] * 10 + pm[1])
    for _ in range(6):
        n = rng.randint(4, 10)
        k = rng.randint(1, min(n, 4 if F.order <= 3 else 3))
        C = random_code(F, rng, n, k)
        assert codes.min_distance_exhaustive(C) == naive_min_distance(C)
        assert sum(codes.weight_distribution(C)) == F.order ** C.k


@pytest.mark.parametrize("pm", [(2, 4), (3, 2), (7, 1)])
def test_dual_is_orthogonal_complement(pm):
    F = ExtField(*pm)
    rng = random.Random(sum(pm))

    @settings(max_examples=25, deadline=None)
    @given(st.integers(3, 12), st.integers(0, 12), st.randoms(use_true_random=False))
    def check(n, k, r):
        C = random_code(F, r, n, min(k, n))
        D = codes.dual(C)
        assert C.k + D.k == n
        for g in C.generator:
            for h in D.generator:
                acc = 0
                for a, b in zip(g, h):
                    acc = F.add(acc, F.mul(a, b))
                assert acc == 0
        assert codes.dual(D).same_code(C)
        assert all(C.contains(C.codeword(m)) for m in ([r.randrange(F.order) for _ in range(C.k)],))

    check()


@pytest.mark.parametrize("pm,d", [((2, 2), 1), ((2, 4), 2), ((2, 4), 1), ((3, 2), 1)])
def test_subfield_subcode_matches_brute_force(pm, d):
    F = ExtField(*pm)
    emb = SubfieldEmbedding(F, d)
    inside = set(emb.to_big)
    rng = random.Random(pm[1] * 7 + d)
    for _ in range(4):
        n = rng.randint(4, 6)
        C = random_code(F, rng, n, rng.randint(1, n - 1))
        if F.order ** C.k > 5000:
            continue
        want = {w for w in codes.enumerate_codewords(C) if all(c in inside for c in w)}
        S = codes.subfield_subcode(C, d)
        got = {tuple(emb.to_big[c] for c in w) for w in codes.enumerate_codewords(S)}
        assert got == want
        _, S2 = codes.subfield_subcode_from_parity(C.parity_check(), F, d, n)
        assert S2.same_code(S)
        assert codes.lift(S, F).k == S.k


def test_schur_square():
    F = ExtField(3, 2)
    rng = random.Random(3)
    C = random_code(F, rng, 12, 3)
    S = codes.schur_square(C)
    assert S.k <= 6
    for a, b in itertools.product(C.generator, repeat=2):
        assert S.contains([F.mul(x, y) for x, y in zip(a, b)])
    # a Reed-Solomon code squares to a Reed-Solomon code of twice the degree
    xs = list(range(9))
    rs = codes.from_rows(F, [[F.pow(x, i) for x in xs] for i in range(3)])
    assert codes.schur_square(rs).k == 5


def test_block_shift_and_quasi_cyclic():
    assert codes.block_shift([1, 2, 3, 4, 5, 6], 3) == [3, 1, 2, 6, 4, 5]
    assert codes.block_shift([1, 2, 3, 4], 2, [[0, 2], [1, 3]]) == [3, 4, 1, 2]
    F = GF2
    C = codes.from_rows(F, [[1, 1, 0, 0, 1, 0], [0, 1, 1, 0, 0, 1], [1, 0, 1, 1, 0, 0]])
    assert codes.is_quasi_cyclic(C, 3)
    form = codes.block_circulant_form(C, 3)
    assert form.ok and form.is_circulant()
    assert codes.from_rows(F, form.rows).k == C.k
    bad = codes.from_rows(F, [[1, 0, 0, 0, 0, 0]])
    assert not codes.is_quasi_cyclic(bad, 3)
    assert not codes.block_circulant_form(bad, 3).ok
    with pytest.raises(BadBlockLength):
        codes.is_quasi_cyclic(C, 4)


def test_serialisation_and_errors():
    F = ExtField(2, 3)
    rng = random.Random(1)
    C = random_code(F, rng, 7, 3)
    assert codes.LinearCode.from_json(C.to_json()).same_code(C)
    assert codes.matrix_from_csv(F, codes.matrix_to_csv(F, C.generator)) == C.generator
    with pytest.raises(RaggedRows):
        codes.from_rows(F, [[1, 2], [1]])
    with pytest.raises(RaggedRows):
        C.contains([0])
    with pytest.raises(CodeTooLarge):
        codes.min_distance_exhaustive(codes.full_space(ExtField(2, 4), 8))
    assert codes.min_distance_exhaustive(codes.from_rows(F, [], 5)) == 6
    assert linalg.rank(F, codes.full_space(F, 4).generator) == 4
