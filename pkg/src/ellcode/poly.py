"""Univariate polynomials over an ExtField.

Polynomials are little-endian tuples of element codes with no trailing
zeros; the zero polynomial is ``()``.
"""
from __future__ import annotations

from typing import Sequence

from .errors import DivisionByZero
from .field import ExtField

Poly = tuple


def trim(a: Sequence[int]) -> Poly:
    n = len(a)
    while n and a[n - 1] == 0:
        n -= 1
    return tuple(a[:n])


def degree(a: Poly) -> int:
    return len(a) - 1  # -1 for zero


def const(c: int) -> Poly:
    return (c,) if c else ()


def linear(F: ExtField, root: int) -> Poly:
    """X - root."""
    return (F.neg(root), 1)


def add(F: ExtField, a: Poly, b: Poly) -> Poly:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, y in enumerate(b):
        out[i] = F.add(out[i], y)
    return trim(out)


def neg(F: ExtField, a: Poly) -> Poly:
    return tuple(F.neg(c) for c in a)


def sub(F: ExtField, a: Poly, b: Poly) -> Poly:
    return add(F, a, neg(F, b))


def scale(F: ExtField, a: Poly, c: int) -> Poly:
    if c == 0:
        return ()
    return tuple(F.mul(x, c) for x in a)


def mul(F: ExtField, a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    fadd, fmul = F.add, F.mul
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = fadd(out[i + j], fmul(x, y))
    return trim(out)


def power(F: ExtField, a: Poly, e: int) -> Poly:
    acc: Poly = (1,)
    while e:
        if e & 1:
            acc = mul(F, acc, a)
        a = mul(F, a, a)
        e >>= 1
    return acc


def divmod_(F: ExtField, a: Poly, b: Poly) -> tuple[Poly, Poly]:
    if not b:
        raise DivisionByZero("polynomial division by zero")
    a = list(a)
    inv = F.inv(b[-1])
    db = len(b) - 1
    q = [0] * max(0, len(a) - db)
    for k in range(len(a) - 1, db - 1, -1):
        c = a[k]
        if c:
            f = F.mul(c, inv)
            q[k - db] = f
            for i, y in enumerate(b):
                a[k - db + i] = F.sub(a[k - db + i], F.mul(f, y))
    return trim(q), trim(a[:db])


def monic(F: ExtField, a: Poly) -> Poly:
    if not a:
        return a
    return scale(F, a, F.inv(a[-1]))


def gcd(F: ExtField, a: Poly, b: Poly) -> Poly:
    while b:
        a, b = b, divmod_(F, a, b)[1]
    return monic(F, a)


def evaluate(F: ExtField, a: Poly, x: int) -> int:
    acc = 0
    for c in reversed(a):
        acc = F.add(F.mul(acc, x), c)
    return acc


def shift(F: ExtField, a: Poly, alpha: int) -> list[int]:
    """Coefficients of a(alpha + t) in powers of t (Horner with polynomials)."""
    acc: Poly = ()
    lin = (alpha, 1) if alpha else (0, 1)
    for c in reversed(a):
        acc = add(F, mul(F, acc, lin), const(c))
    return list(acc)


def from_roots(F: ExtField, roots: Sequence[int]) -> Poly:
    acc: Poly = (1,)
    for r in roots:
        acc = mul(F, acc, linear(F, r))
    return acc


def multiplicity(F: ExtField, a: Poly, root: int) -> int:
    """Multiplicity of root in a (a != 0)."""
    k = 0
    lin = linear(F, root)
    while a:
        q, r = divmod_(F, a, lin)
        if r:
            break
        a, k = q, k + 1
    return k


def roots(F: ExtField, a: Poly) -> tuple[dict[int, int], Poly]:
    """Rational roots with multiplicities, plus the root-free cofactor.

    Exhaustive over the field; callers work with small fields."""
    found: dict[int, int] = {}
    rest = a
    if degree(rest) <= 0:
        return found, rest
    for z in range(F.order):
        if degree(rest) <= 0:
            break
        if evaluate(F, rest, z) == 0:
            k = multiplicity(F, rest, z)
            found[z] = k
            rest = divmod_(F, rest, power(F, linear(F, z), k))[0]
    return found, rest


def to_json(F: ExtField, a: Poly) -> list:
    return [F.element_to_json(c) for c in a]


def from_json(F: ExtField, data) -> Poly:
    return trim([F.element_from_json(c) for c in data])


def compose_linear(F: ExtField, a: Poly, c1: int, c0: int) -> Poly:
    """a(c1*X + c0)."""
    acc: Poly = ()
    lin = trim([c0, c1])
    for c in reversed(a):
        acc = add(F, mul(F, acc, lin), const(c))
    return acc
