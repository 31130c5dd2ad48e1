"""Exact arithmetic in GF(p) and GF(p^m).

An element of GF(p^m) is stored in the power basis 1, x, ..., x^(m-1) of
GF(p)[x]/(modulus).  Internally the coefficient vector is packed into a
single integer *code* ``sum(c_i * p**i)`` so that polynomial, series and
matrix routines can work on plain ints; :class:`FieldElement` is the
user-facing wrapper around a code.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .errors import (
    DegreeMismatch,
    DivisionByZero,
    FieldMismatch,
    InvalidSubfieldDegree,
    NotPrime,
    ReducibleModulus,
)

# fields up to this order memoise products of non-binary extension elements
_MEMO_LIMIT = 1 << 12


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


# -- polynomials over GF(p) as little-endian int lists (modulus handling only) --

def _ptrim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a: list[int], b: list[int], p: int) -> list[int]:
    a = _ptrim([c % p for c in a])
    b = _ptrim([c % p for c in b])
    inv = pow(b[-1], -1, p)
    while len(a) >= len(b):
        f = a[-1] * inv % p
        shift = len(a) - len(b)
        for i, c in enumerate(b):
            a[shift + i] = (a[shift + i] - f * c) % p
        _ptrim(a)
    return a


def _pmulmod(a: list[int], b: list[int], f: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _pmod(out, f, p)


def _pgcd(a: list[int], b: list[int], p: int) -> list[int]:
    a = _ptrim([c % p for c in a])
    b = _ptrim([c % p for c in b])
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def is_irreducible_mod_p(f: Sequence[int], p: int) -> bool:
    """Ben-Or test: f has no factor of degree <= deg(f)/2 over GF(p)."""
    f = _ptrim([c % p for c in f])
    n = len(f) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    xpow = [0, 1]
    for _ in range(1, n // 2 + 1):
        # xpow <- xpow^p mod f
        acc, base, e = [1], xpow, p
        while e:
            if e & 1:
                acc = _pmulmod(acc, base, f, p)
            base = _pmulmod(base, base, f, p)
            e >>= 1
        xpow = acc
        diff = list(xpow) + [0] * max(0, 2 - len(xpow))
        diff[1] = (diff[1] - 1) % p
        g = _pgcd(f, diff, p)
        if len(g) > 1:
            return False
    return True


def smallest_irreducible(p: int, m: int) -> tuple[int, ...]:
    """Smallest monic irreducible of degree m, ordering candidates by the
    integer sum(c_i p^i) of their lower coefficients."""
    for code in range(p**m):
        low = [(code // p**i) % p for i in range(m)]
        if m > 1 and low[0] == 0:
            continue
        cand = low + [1]
        if is_irreducible_mod_p(cand, p):
            return tuple(cand)
    raise ReducibleModulus(f"no irreducible of degree {m} over GF({p})")  # unreachable


@dataclass(frozen=True)
class PrimeField:
    p: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise NotPrime(f"{self.p} is not prime")


class ExtField:
    """GF(p^m) = GF(p)[x]/(modulus).  ``m == 1`` gives the prime field."""

    def __init__(self, p: int, m: int = 1, modulus: Sequence[int] | None = None):
        self.base = PrimeField(p)
        if m < 1:
            raise DegreeMismatch(f"extension degree must be >= 1, got {m}")
        if modulus is None:
            modulus = smallest_irreducible(p, m) if m > 1 else (0, 1)
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != m + 1:
            raise DegreeMismatch(f"modulus has degree {len(modulus) - 1}, expected {m}")
        if modulus[-1] != 1:
            raise DegreeMismatch("modulus must be monic")
        if not is_irreducible_mod_p(modulus, p):
            raise ReducibleModulus(f"modulus {list(modulus)} is reducible over GF({p})")
        self.p = p
        self.m = m
        self.modulus = modulus
        self.order = p**m
        self._mul_memo: dict[int, int] = {}
        self._inv_memo: dict[int, int] = {}
        if m == 1:
            self.add = self._add_prime
            self.sub = self._sub_prime
            self.neg = self._neg_prime
            self.mul = self._mul_prime
        elif p == 2:
            self._modbits = sum(c << i for i, c in enumerate(modulus))
            self.add = self._add_bin
            self.sub = self._add_bin
            self.neg = self._neg_bin
            self.mul = self._mul_bin
        else:
            self.add = self._add_gen
            self.sub = self._sub_gen
            self.neg = self._neg_gen
            self.mul = self._mul_memoised if self.order <= _MEMO_LIMIT else self._mul_gen

    # -- identity / equality -------------------------------------------------
    def _key(self):
        return (self.p, self.m, self.modulus)

    def __eq__(self, other):
        return isinstance(other, ExtField) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        if self.m == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.m}, modulus={list(self.modulus)})"

    @property
    def char(self) -> int:
        return self.p

    zero = 0
    one = 1

    # -- code <-> coefficients ----------------------------------------------
    def coeffs(self, a: int) -> tuple[int, ...]:
        p = self.p
        out = []
        for _ in range(self.m):
            a, r = divmod(a, p)
            out.append(r)
        return tuple(out)

    def from_coeffs(self, cs: Iterable[int]) -> int:
        cs = [int(c) % self.p for c in cs]
        if len(cs) > self.m:
            raise DegreeMismatch(f"{len(cs)} coefficients for a degree-{self.m} field")
        code = 0
        for c in reversed(cs):
            code = code * self.p + c
        return code

    def from_int(self, n: int) -> int:
        """Image of the integer n under Z -> GF(p) -> GF(p^m)."""
        return int(n) % self.p

    def check(self, a: int) -> int:
        if not (isinstance(a, int) and 0 <= a < self.order):
            raise FieldMismatch(f"{a!r} is not an element code of {self}")
        return a

    def elements(self) -> range:
        return range(self.order)

    def __call__(self, value) -> "FieldElement":
        """Build an element from a code (int), coefficient list, or FieldElement."""
        if isinstance(value, FieldElement):
            if value.field != self:
                raise FieldMismatch(f"element of {value.field} used in {self}")
            return value
        if isinstance(value, (list, tuple)):
            return FieldElement(self, self.from_coeffs(value))
        return FieldElement(self, self.from_int(value) if self.m == 1 else self.check(int(value)))

    def element(self, code: int) -> "FieldElement":
        return FieldElement(self, self.check(code))

    # -- arithmetic on codes -------------------------------------------------
    def _add_prime(self, a, b):
        s = a + b
        return s - self.p if s >= self.p else s

    def _sub_prime(self, a, b):
        s = a - b
        return s + self.p if s < 0 else s

    def _neg_prime(self, a):
        return self.p - a if a else 0

    def _mul_prime(self, a, b):
        return a * b % self.p

    @staticmethod
    def _add_bin(a, b):
        return a ^ b

    @staticmethod
    def _neg_bin(a):
        return a

    def _mul_bin(self, a, b):
        m, mod = self.m, self._modbits
        top = 1 << m
        r = 0
        while b:
            if b & 1:
                r ^= a
            b >>= 1
            a <<= 1
            if a & top:
                a ^= mod
        return r

    def _add_gen(self, a, b):
        p = self.p
        out, scale = 0, 1
        while a or b:
            a, x = divmod(a, p)
            b, y = divmod(b, p)
            out += ((x + y) % p) * scale
            scale *= p
        return out

    def _sub_gen(self, a, b):
        return self._add_gen(a, self._neg_gen(b))

    def _neg_gen(self, a):
        p = self.p
        out, scale = 0, 1
        while a:
            a, x = divmod(a, p)
            if x:
                out += (p - x) * scale
            scale *= p
        return out

    def _mul_gen(self, a, b):
        if not a or not b:
            return 0
        p, m = self.p, self.m
        xa, xb = self.coeffs(a), self.coeffs(b)
        prod = [0] * (2 * m - 1)
        for i, x in enumerate(xa):
            if x:
                for j, y in enumerate(xb):
                    prod[i + j] += x * y
        mod = self.modulus
        for k in range(2 * m - 2, m - 1, -1):
            c = prod[k] % p
            if c:
                for i in range(m):
                    prod[k - m + i] -= c * mod[i]
            prod[k] = 0
        code = 0
        for c in reversed(prod[:m]):
            code = code * p + c % p
        return code

    def _mul_memoised(self, a, b):
        key = a * self.order + b if a <= b else b * self.order + a
        r = self._mul_memo.get(key)
        if r is None:
            r = self._mul_memo[key] = self._mul_gen(a, b)
        return r

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("inverse of zero")
        if self.m == 1:
            return pow(a, -1, self.p)
        r = self._inv_memo.get(a)
        if r is None:
            r = self._inv_memo[a] = self.pow(a, self.order - 2)
        return r

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        if self.m == 1:
            return pow(a, e, self.p)
        acc = 1
        while e:
            if e & 1:
                acc = self.mul(acc, a)
            a = self.mul(a, a)
            e >>= 1
        return acc

    def frobenius(self, a: int, times: int = 1) -> int:
        return self.pow(a, self.p**times)

    def sum(self, items: Iterable[int]) -> int:
        acc = 0
        add = self.add
        for x in items:
            acc = add(acc, x)
        return acc

    def dot(self, xs: Sequence[int], ys: Sequence[int]) -> int:
        acc = 0
        add, mul = self.add, self.mul
        for x, y in zip(xs, ys):
            if x and y:
                acc = add(acc, mul(x, y))
        return acc

    @cached_property
    def generator(self) -> int:
        """The class of x (the power-basis generator); equals 1 in a prime field."""
        return self.p if self.m > 1 else 1

    @cached_property
    def sqrt_table(self) -> dict[int, int]:
        """Map each square to one of its square roots."""
        table: dict[int, int] = {}
        for z in range(self.order):
            table.setdefault(self.mul(z, z), z)
        return table

    # -- serialisation -------------------------------------------------------
    def to_json(self) -> dict:
        return {"p": self.p, "m": self.m, "modulus": list(self.modulus)}

    @classmethod
    def from_json(cls, data: dict) -> "ExtField":
        return build_ext_field(int(data["p"]), int(data.get("m", 1)), data.get("modulus"))

    def element_to_json(self, a: int) -> list[int]:
        return list(self.coeffs(a))

    def element_from_json(self, data) -> int:
        if isinstance(data, int):
            return self.from_int(data) if self.m == 1 else self.check(data)
        return self.from_coeffs(data)


def build_ext_field(p: int, m: int = 1, modulus: Sequence[int] | None = None) -> ExtField:
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    return ExtField(p, m, modulus)


class FieldElement:
    """Immutable element of an :class:`ExtField`."""

    __slots__ = ("field", "code")

    def __init__(self, field: ExtField, code: int):
        self.field = field
        self.code = code

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.field.coeffs(self.code)

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldMismatch(f"{self.field} vs {other.field}")
            return other.code
        if isinstance(other, int):
            return self.field.from_int(other)
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        return FieldElement(self.field, self.field.add(self.code, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        return FieldElement(self.field, self.field.sub(self.code, o))

    def __rsub__(self, other):
        o = self._other(other)
        return FieldElement(self.field, self.field.sub(o, self.code))

    def __mul__(self, other):
        o = self._other(other)
        return FieldElement(self.field, self.field.mul(self.code, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        return FieldElement(self.field, self.field.div(self.code, o))

    def __rtruediv__(self, other):
        o = self._other(other)
        return FieldElement(self.field, self.field.div(o, self.code))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.code))

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.pow(self.code, e))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field, self.field.inv(self.code))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.code == other.code
        if isinstance(other, int):
            return self.code == self.field.from_int(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.code))

    def __bool__(self):
        return self.code != 0

    def __repr__(self):
        if self.field.m == 1:
            return f"{self.code}"
        return f"{self.field.p}^{self.field.m}:{list(self.coeffs)}"


def field_arith(a: FieldElement, b: FieldElement | None, op: str) -> FieldElement:
    """Dispatch a named field operation (``pow`` takes an int exponent as b)."""
    if op == "neg":
        return -a
    if op == "inv":
        return a.inverse()
    if op == "pow":
        return a ** int(b)
    if b is None:
        raise ValueError(f"operation {op!r} needs two operands")
    return {"add": a.__add__, "sub": a.__sub__, "mul": a.__mul__, "div": a.__truediv__}[op](b)


def decompose_over_prime(a: FieldElement) -> tuple[int, ...]:
    return a.coeffs


def recompose(field: ExtField, coeffs: Sequence[int]) -> FieldElement:
    return FieldElement(field, field.from_coeffs(coeffs))


def subfield_membership(a: FieldElement, d: int) -> bool:
    """True iff a lies in GF(p^d), i.e. a^(p^d) == a."""
    F = a.field
    if d < 1 or F.m % d:
        raise InvalidSubfieldDegree(f"{d} does not divide {F.m}")
    return F.frobenius(a.code, d) == a.code


class SubfieldEmbedding:
    """GF(p^d) realised inside GF(p^m), with coordinates of big-field
    elements over the basis 1, x, ..., x^(m/d - 1) of GF(p^m)/GF(p^d)."""

    def __init__(self, big: ExtField, d: int):
        if d < 1 or big.m % d:
            raise InvalidSubfieldDegree(f"{d} does not divide {big.m}")
        self.big = big
        self.d = d
        self.small = ExtField(big.p, d) if d < big.m else big
        self.rel_degree = big.m // d
        if d == big.m:
            self.to_big = list(range(big.order))
        else:
            theta = self._find_root()
            powers = [1]
            for _ in range(1, d):
                powers.append(big.mul(powers[-1], theta))
            self.to_big = []
            for k in range(self.small.order):
                acc = 0
                for c, pw in zip(self.small.coeffs(k), powers):
                    if c:
                        acc = big.add(acc, big.mul(big.from_int(c), pw))
                self.to_big.append(acc)
        self.to_small = {b: s for s, b in enumerate(self.to_big)}
        self._build_coordinate_map()

    def _find_root(self) -> int:
        F = self.big
        mod = self.small.modulus
        for z in range(F.order):
            acc = 0
            for c in reversed(mod):
                acc = F.add(F.mul(acc, z), F.from_int(c))
            if acc == 0:
                return z
        raise InvalidSubfieldDegree("subfield modulus has no root")  # unreachable

    def _build_coordinate_map(self):
        # GF(p)-basis of the big field: theta^i x^l, i < d, l < m/d
        F = self.big
        basis = []
        xs = [1]
        for _ in range(1, self.rel_degree):
            xs.append(F.mul(xs[-1], F.generator))
        small_basis = [self.to_big[self.small.pow(self.small.generator, i) if self.d > 1 else 1]
                       for i in range(self.d)]
        for l, xl in enumerate(xs):
            for i, th in enumerate(small_basis):
                basis.append((l, i, F.mul(th, xl)))
        # invert the m x m matrix over GF(p) whose columns are the basis vectors
        p, m = F.p, F.m
        cols = [F.coeffs(v) for _, _, v in basis]
        aug = [[cols[j][r] for j in range(m)] + [1 if r == k else 0 for k in range(m)] for r in range(m)]
        for c in range(m):
            piv = next(r for r in range(c, m) if aug[r][c] % p)
            aug[c], aug[piv] = aug[piv], aug[c]
            iv = pow(aug[c][c], -1, p)
            aug[c] = [v * iv % p for v in aug[c]]
            for r in range(m):
                if r != c and aug[r][c]:
                    f = aug[r][c]
                    aug[r] = [(v - f * w) % p for v, w in zip(aug[r], aug[c])]
        self._inv = [row[m:] for row in aug]
        self._slots = [(l, i) for l, i, _ in basis]

    def coordinates(self, a: int) -> tuple[int, ...]:
        """Coordinates (in the small field, as codes) of a big-field code."""
        p = self.big.p
        v = self.big.coeffs(a)
        comps = [sum(row[j] * v[j] for j in range(len(v))) % p for row in self._inv]
        per = [[0] * self.d for _ in range(self.rel_degree)]
        for (l, i), c in zip(self._slots, comps):
            per[l][i] = c
        return tuple(self.small.from_coeffs(cs) for cs in per)

    def contains(self, a: int) -> bool:
        return a in self.to_small
