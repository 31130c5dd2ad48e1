"""Upper bounds on the Schur square of dual Goppa-like codes and the resulting
distinguishability predicate.

All arithmetic is exact: bounds are computed as Fractions and must come out
integral, and logarithm ceilings compare integer powers instead of floats.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from . import codes
from .codes import LinearCode
from .errors import CodeTooLarge, HypothesisViolated, NonIntegralBound, SideConditionViolated

SQUARE_MAX_N = 512
SQUARE_MAX_K = 64


def ceil_log(q: int, x: Fraction | int) -> int:
    """Smallest integer e with q**e >= x, for x > 0."""
    x = Fraction(x)
    if x <= 0:
        raise ValueError("logarithm of a non-positive number")
    if x >= 1:
        e, p = 0, 1
        while p < x:
            p *= q
            e += 1
        return e
    # x < 1: e = -floor(log_q(1/x))
    inv, e, p = 1 / x, 0, 1
    while p * q <= inv:
        p *= q
        e += 1
    return -e


def _integral(value: Fraction, what: str) -> int:
    if value.denominator != 1:
        raise NonIntegralBound(f"{what} is not an integer: {value}", value)
    return int(value)


@dataclass(frozen=True)
class BoundParams:
    q: int
    m: int
    n: int
    k: int
    s: int | None = None
    s_star: int | None = None
    s_inf: int | None = None
    g_ab: int = 1

    @property
    def e(self) -> int:
        if not self.s:
            raise HypothesisViolated("e needs s = deg(G') > 0")
        return min(self.m // 2, ceil_log(self.q, Fraction(self.k * self.k, self.s)))

    @property
    def e_star(self) -> int:
        if not self.s_star:
            raise HypothesisViolated("e* needs s* > 0")
        x = Fraction(self.k * self.k, self.s_star * (self.q - 1) ** 2)
        return min(self.m // 2, ceil_log(self.q, x) + 1)

    @property
    def random_dimension(self) -> int:
        return comb(self.m * self.k + 1, 2)


def one_point_params(q: int, m: int, n: int, s_inf: int, k_offset: int = 0,
                     s_star: int | None = None) -> BoundParams:
    """Parameters for Gamma(D, s_inf P_inf, g*) with k = s_inf + k_offset and s* = s_inf + 1 by default."""
    return BoundParams(q, m, n, s_inf + k_offset, s_inf=s_inf,
                       s_star=s_inf + 1 if s_star is None else s_star)


def bound_general(params: BoundParams) -> int:
    q, m, k, s = params.q, params.m, params.k, params.s
    if k < 1:
        raise HypothesisViolated(f"k = {k} must be positive")
    if s is None or s <= params.g_ab:
        raise HypothesisViolated(f"s = deg(G') = {s} must exceed g_ab = {params.g_ab}")
    e = params.e
    geom = Fraction(q ** (e + 1) - 1, q - 1) if e >= 0 else (Fraction(q) ** (e + 1) - 1) / (q - 1)
    value = comb(m * k + 1, 2) - Fraction(m, 2) * (k * (k - 1) * (2 * e + 1) - 2 * s * geom)
    return _integral(value, "general bound")


def side_condition_holds(params: BoundParams) -> bool:
    s_inf, s_star = params.s_inf, params.s_star
    return s_inf >= (s_star - s_inf) * params.q + 2 * params.g_ab - 1


def bound_one_point(params: BoundParams) -> int:
    q, m, k, s_star = params.q, params.m, params.k, params.s_star
    if k < 1:
        raise HypothesisViolated(f"k = {k} must be positive")
    if params.s_inf is None or s_star is None:
        raise HypothesisViolated("one-point bound needs s_inf and s*")
    if not side_condition_holds(params):
        raise SideConditionViolated(
            f"s_inf = {params.s_inf} < (s* - s_inf) q + 2 g_ab - 1 = "
            f"{(s_star - params.s_inf) * q + 2 * params.g_ab - 1}")
    e = params.e_star
    qe = Fraction(q) ** e
    value = comb(m * k + 1, 2) - Fraction(m, 2) * (k * k * (2 * e + 1) + k - 2 * s_star * (qe - qe / q + 1))
    return _integral(value, "one-point bound")


@dataclass(frozen=True)
class SweepRow:
    s_inf: int
    k: int
    bound: int
    n: int

    @property
    def distinguishable(self) -> bool:
        return self.bound < self.n

    @property
    def verdict(self) -> str:
        return "distinguishable" if self.distinguishable else "indistinguishable"


def sweep(q: int, m: int, n: int, k_offset: int = 0, s_max: int | None = None) -> list[SweepRow]:
    """Ascending sweep over s_inf with s* = s_inf + 1, from the first s_inf meeting the
    side condition up to the first non-distinguishable value (inclusive)."""
    rows = []
    s = 1
    limit = s_max if s_max is not None else n
    while s <= limit:
        params = one_point_params(q, m, n, s, k_offset)
        if params.k < 1 or not side_condition_holds(params):
            s += 1
            continue
        row = SweepRow(s, params.k, bound_one_point(params), n)
        rows.append(row)
        if not row.distinguishable and s_max is None:
            break
        s += 1
    return rows


def largest_distinguishable_s(q: int, m: int, n: int, k_offset: int = 0) -> int:
    """Largest s_inf before the first s_inf whose one-point bound reaches n (0 if none)."""
    best = 0
    for row in sweep(q, m, n, k_offset):
        if not row.distinguishable:
            break
        best = row.s_inf
    return best


# -- empirical comparison ------------------------------------------------------------------

@dataclass
class SquareReport:
    n: int
    k: int
    empirical: int
    random_expectation: int
    bound: int | None
    bound_kind: str | None
    note: str = ""

    @property
    def bound_holds(self) -> bool | None:
        return None if self.bound is None else self.empirical <= self.bound

    @property
    def verdict(self) -> str:
        if self.empirical < self.random_expectation:
            return "distinguishable"
        if self.bound is not None and self.bound >= self.n:
            return "bound-exceeds-n"
        return "indistinguishable"

    def to_json(self) -> dict:
        return {"n": self.n, "k": self.k, "empirical": self.empirical,
                "random_expectation": self.random_expectation, "bound": self.bound,
                "bound_kind": self.bound_kind, "bound_holds": self.bound_holds,
                "verdict": self.verdict, "note": self.note}


def empirical_square_report(C: LinearCode, params: BoundParams | None = None, kind: str = "general",
                            max_n: int = SQUARE_MAX_N, max_k: int = SQUARE_MAX_K) -> SquareReport:
    """Exact dim of the Schur square of C next to the random expectation and, when
    params are given, the bound of the requested kind ("general" or "one_point")."""
    if C.n > max_n or C.k > max_k:
        raise CodeTooLarge(f"[{C.n}, {C.k}] exceeds the square caps n <= {max_n}, k <= {max_k}")
    emp = codes.schur_square(C).k
    expect = min(C.n, comb(C.k + 1, 2))
    bound, note = None, ""
    if params is not None:
        try:
            bound = bound_general(params) if kind == "general" else bound_one_point(params)
        except (HypothesisViolated, SideConditionViolated) as exc:
            note = str(exc)
    return SquareReport(C.n, C.k, emp, expect, bound, kind if params is not None else None, note)
