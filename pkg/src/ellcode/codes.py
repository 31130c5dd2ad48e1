"""Linear codes over GF(p^m) with exact linear algebra."""
from __future__ import annotations

import csv
import io
import itertools
import json
from dataclasses import dataclass, field as dc_field
from typing import Sequence

import numpy as np

from . import linalg
from .errors import BadBlockLength, CodeTooLarge, RaggedRows
from .field import ExtField, SubfieldEmbedding

MIN_DISTANCE_CAP = 1 << 22


@dataclass
class LinearCode:
    """Row space of ``generator`` (kept in reduced row echelon form)."""

    field: ExtField
    n: int
    generator: list[list[int]]
    pivots: list[int]
    provenance: dict = dc_field(default_factory=dict)

    @property
    def k(self) -> int:
        return len(self.generator)

    @property
    def dimension(self) -> int:
        return self.k

    def __repr__(self):
        return f"LinearCode([{self.n}, {self.k}] over {self.field})"

    def reduce(self, v: Sequence[int]) -> list[int]:
        """Residual of v after elimination against the generator (zero iff v in C)."""
        F = self.field
        v = list(v)
        for row, pc in zip(self.generator, self.pivots):
            c = v[pc]
            if c:
                v = [F.sub(a, F.mul(c, b)) if b else a for a, b in zip(v, row)]
        return v

    def contains(self, v: Sequence[int]) -> bool:
        if len(v) != self.n:
            raise RaggedRows(f"vector of length {len(v)} for a code of length {self.n}")
        return not any(self.reduce(v))

    def parity_check(self) -> list[list[int]]:
        return linalg.kernel(self.field, self.generator, self.n)

    def same_code(self, other: "LinearCode") -> bool:
        return self.field == other.field and self.n == other.n and self.generator == other.generator

    def codeword(self, message: Sequence[int]) -> list[int]:
        F = self.field
        out = [0] * self.n
        for c, row in zip(message, self.generator):
            if c:
                out = [F.add(a, F.mul(c, b)) for a, b in zip(out, row)]
        return out

    # -- export ------------------------------------------------------------------
    def to_json(self) -> dict:
        F = self.field
        return {"field": F.to_json(), "n": self.n, "k": self.k,
                "generator": [[F.element_to_json(c) for c in row] for row in self.generator],
                "provenance": self.provenance}

    @classmethod
    def from_json(cls, data: dict) -> "LinearCode":
        F = ExtField.from_json(data["field"])
        rows = [[F.element_from_json(c) for c in row] for row in data["generator"]]
        return from_rows(F, rows, n=data.get("n"), provenance=data.get("provenance", {}))


def from_rows(field: ExtField, rows: Sequence[Sequence[int]], n: int | None = None,
              provenance: dict | None = None) -> LinearCode:
    rows = [list(r) for r in rows]
    if rows:
        lengths = {len(r) for r in rows}
        if len(lengths) != 1:
            raise RaggedRows(f"rows of lengths {sorted(lengths)}")
        n0 = lengths.pop()
        if n is not None and n != n0:
            raise RaggedRows(f"rows have length {n0}, expected {n}")
        n = n0
    elif n is None:
        raise RaggedRows("cannot infer the length of an empty code")
    for r in rows:
        for c in r:
            field.check(c)
    R, piv = linalg.rref(field, rows) if rows else ([], [])
    return LinearCode(field, n, R, piv, dict(provenance or {}))


def full_space(field: ExtField, n: int) -> LinearCode:
    return from_rows(field, [[1 if i == j else 0 for j in range(n)] for i in range(n)], n)


def dual(C: LinearCode) -> LinearCode:
    return from_rows(C.field, C.parity_check(), C.n, {"dual_of": C.provenance})


def subfield_subcode(C: LinearCode, d: int) -> LinearCode:
    """C intersected with GF(p^d)^n, via base expansion of a parity-check matrix."""
    emb = SubfieldEmbedding(C.field, d)
    if d == C.field.m:
        return C
    H = C.parity_check()
    rel = emb.rel_degree
    expanded = []
    for row in H:
        coords = [emb.coordinates(h) for h in row]
        for l in range(rel):
            expanded.append([c[l] for c in coords])
    small = emb.small
    gen = linalg.kernel(small, expanded, C.n) if expanded else [[1 if i == j else 0 for j in range(C.n)]
                                                             for i in range(C.n)]
    prov = {"subfield_subcode_of": C.provenance, "d": d}
    return from_rows(small, gen, C.n, prov)


def subfield_subcode_from_parity(H: Sequence[Sequence[int]], big: ExtField, d: int, n: int) -> tuple[list[list[int]], LinearCode]:
    """Expand a parity-check matrix over GF(p^m) into rows over GF(p^d), reduce it,
    and return (reduced parity-check rows, subcode)."""
    emb = SubfieldEmbedding(big, d)
    rows = []
    for row in H:
        coords = [emb.coordinates(h) for h in row]
        for l in range(emb.rel_degree):
            rows.append([c[l] for c in coords])
    small = emb.small
    R, _ = linalg.rref(small, rows) if rows else ([], [])
    gen = linalg.kernel(small, R, n) if R else [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    return R, from_rows(small, gen, n)


def lift(C: LinearCode, big: ExtField) -> LinearCode:
    """Image of a code over GF(p^d) in GF(p^m)^n under the standard embedding."""
    emb = SubfieldEmbedding(big, C.field.m)
    return from_rows(big, [[emb.to_big[c] for c in row] for row in C.generator], C.n)


# -- quasi-cyclic structure -------------------------------------------------------------

def block_shift(v: Sequence[int], ell: int, grouping: Sequence[Sequence[int]] | None = None) -> list[int]:
    """Cyclic shift inside each block: (c_0, ..., c_{l-1}) -> (c_{l-1}, c_0, ..., c_{l-2})."""
    n = len(v)
    if grouping is None:
        grouping = [list(range(b, b + ell)) for b in range(0, n, ell)]
    out = list(v)
    for blk in grouping:
        for i, col in enumerate(blk):
            out[col] = v[blk[i - 1]]
    return out


def _check_ell(n: int, ell: int):
    if ell < 1 or n % ell:
        raise BadBlockLength(f"block length {ell} does not divide n = {n}")


def quasi_cyclic_violation(C: LinearCode, ell: int, grouping=None) -> int | None:
    """Index of a generator row whose block shift leaves C, or None."""
    _check_ell(C.n, ell)
    for i, row in enumerate(C.generator):
        if not C.contains(block_shift(row, ell, grouping)):
            return i
    return None


def is_quasi_cyclic(C: LinearCode, ell: int, grouping=None) -> bool:
    return quasi_cyclic_violation(C, ell, grouping) is None


@dataclass
class BlockCirculantForm:
    ell: int
    grouping: list[list[int]]
    rows: list[list[int]]  # in grouped column order, row groups of size ell
    ok: bool
    violation: int | None = None

    def blocks(self) -> list[list[list[list[int]]]]:
        """blocks[a][b] is the ell x ell block at row group a, column group b."""
        l = self.ell
        return [[[r[b * l:(b + 1) * l] for r in self.rows[a * l:(a + 1) * l]]
                 for b in range(len(self.grouping))] for a in range(len(self.rows) // l)]

    def is_circulant(self) -> bool:
        for grp in self.blocks():
            for blk in grp:
                for i in range(1, self.ell):
                    prev, cur = blk[i - 1], blk[i]
                    if cur != prev[-1:] + prev[:-1]:
                        return False
        return True


def block_circulant_form(C: LinearCode, ell: int, column_grouping=None) -> BlockCirculantForm:
    """Generator made of ell x ell circulant blocks, one row group per chosen
    row and all its block shifts; ok is False (with the violating row) when
    C is not closed under the shift."""
    _check_ell(C.n, ell)
    grouping = [list(b) for b in column_grouping] if column_grouping is not None else \
        [list(range(b, b + ell)) for b in range(0, C.n, ell)]
    if sorted(c for b in grouping for c in b) != list(range(C.n)) or any(len(b) != ell for b in grouping):
        raise BadBlockLength("column grouping must partition the coordinates into blocks of size ell")
    bad = quasi_cyclic_violation(C, ell, grouping)
    if bad is not None:
        return BlockCirculantForm(ell, grouping, [], False, bad)
    order = [c for b in grouping for c in b]
    F = C.field
    rows: list[list[int]] = []
    span = from_rows(F, [[0] * C.n], C.n)
    for row in C.generator:
        if span.k and span.contains(row):
            continue
        group = [row]
        for _ in range(ell - 1):
            group.append(block_shift(group[-1], ell, grouping))
        rows.extend(group)
        span = from_rows(F, rows, C.n)
        if span.k == C.k:
            break
    permuted = [[r[c] for c in order] for r in rows]
    form = BlockCirculantForm(ell, grouping, permuted, True)
    form.ok = form.is_circulant() and span.k == C.k
    return form


# -- Schur products -------------------------------------------------------------------------

def schur_product_rows(F: ExtField, rows: Sequence[Sequence[int]]) -> list[list[int]]:
    if F.m == 1 and rows:
        A = np.array(rows, dtype=np.int64)
        i, j = np.triu_indices(len(rows))
        return ((A[i] * A[j]) % F.p).tolist()
    return [[F.mul(a, b) for a, b in zip(rows[i], rows[j])]
            for i in range(len(rows)) for j in range(i, len(rows))]


def schur_square(C: LinearCode) -> LinearCode:
    if C.k == 0:
        return from_rows(C.field, [], C.n)
    return from_rows(C.field, schur_product_rows(C.field, C.generator), C.n,
                     {"schur_square_of": C.provenance})


# -- minimum distance -------------------------------------------------------------------------

def _tables(F: ExtField) -> tuple[np.ndarray, np.ndarray]:
    q = F.order
    add = np.array([[F.add(a, b) for b in range(q)] for a in range(q)], dtype=np.int32)
    mul = np.array([[F.mul(a, b) for b in range(q)] for a in range(q)], dtype=np.int32)
    return add, mul


def _all_codewords(F: ExtField, rows: Sequence[Sequence[int]], n: int, add, mul) -> np.ndarray:
    W = np.zeros((1, n), dtype=np.int32)
    for row in rows:
        g = np.array(row, dtype=np.int32)
        scaled = mul[:, g]  # q x n: a * g for every scalar a
        W = add[W[:, None, :], scaled[None, :, :]].reshape(-1, n)
    return W


def min_distance_exhaustive(C: LinearCode) -> int:
    """Exact minimum weight of a nonzero codeword (q^k <= 2^22)."""
    q, k = C.field.order, C.k
    if q**k > MIN_DISTANCE_CAP:
        raise CodeTooLarge(f"q^k = {q}^{k} exceeds the exhaustive cap")
    if k == 0:
        return C.n + 1  # convention: no nonzero codewords
    if q > 1 << 10:
        raise CodeTooLarge("field too large for table-driven enumeration")
    add, mul = _tables(C.field)
    k1 = k
    while k1 > 1 and q**k1 > 1 << 16:
        k1 -= 1
    A = _all_codewords(C.field, C.generator[:k1], C.n, add, mul)
    best = C.n
    nzA = np.count_nonzero(A[1:], axis=1)
    if nzA.size:
        best = int(nzA.min())
    rest = C.generator[k1:]
    if rest:
        B = _all_codewords(C.field, rest, C.n, add, mul)
        for b in B[1:]:
            w = np.count_nonzero(add[A, b[None, :]], axis=1).min()
            best = min(best, int(w))
    return best


def weight_distribution(C: LinearCode) -> list[int]:
    q, k = C.field.order, C.k
    if q**k > MIN_DISTANCE_CAP:
        raise CodeTooLarge(f"q^k = {q}^{k} exceeds the exhaustive cap")
    add, mul = _tables(C.field)
    W = _all_codewords(C.field, C.generator, C.n, add, mul)
    return np.bincount(np.count_nonzero(W, axis=1), minlength=C.n + 1).tolist()


def enumerate_codewords(C: LinearCode) -> list[tuple[int, ...]]:
    q, k = C.field.order, C.k
    if q**k > MIN_DISTANCE_CAP:
        raise CodeTooLarge(f"q^k = {q}^{k} exceeds the exhaustive cap")
    out = []
    for msg in itertools.product(range(q), repeat=k):
        out.append(tuple(C.codeword(msg)))
    return out


# -- matrix export ----------------------------------------------------------------------------

def matrix_to_csv(F: ExtField, rows: Sequence[Sequence[int]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    for row in rows:
        w.writerow([":".join(str(c) for c in F.coeffs(v)) for v in row])
    return buf.getvalue()


def matrix_from_csv(F: ExtField, text: str) -> list[list[int]]:
    return [[F.from_coeffs(int(x) for x in cell.split(":")) for cell in row]
            for row in csv.reader(io.StringIO(text)) if row]


def matrix_to_json(F: ExtField, rows: Sequence[Sequence[int]]) -> str:
    return json.dumps({"field": F.to_json(), "rows": [[list(F.coeffs(v)) for v in row] for row in rows]},
                      sort_keys=True)
