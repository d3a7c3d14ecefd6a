"""Symbolic verification of the two KV equations.

The Lie-series equation is checked directly in the free Lie algebra. The trace
identity is checked universally: every trace ``tr(ad w_1 ... ad w_k)`` becomes
a cyclic word in ``x = ad X`` and ``y = ad Y``.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict

from . import series
from .bch import bch, swapped
from .free_algebra import AD_LETTERS, AssocSeries, CyclicSeries, assoc_mul, cyclic_reduce
from .free_lie import LieSeries, apply_ad_series, expand_basis, lie_to_ad, standard_factorization
from .kv_solution import KVPair

_AD = str.maketrans("XY", "xy")


@dataclass
class Eq7Residual:
    residual: LieSeries
    max_degree: int
    # degree -> largest |numerator| among residual coefficients of that degree
    per_degree: Dict[int, int] = field(default_factory=dict)

    @property
    def is_zero(self) -> bool:
        return self.residual.is_zero()


@dataclass
class Eq8Residual:
    residual: CyclicSeries
    max_degree: int

    @property
    def is_zero(self) -> bool:
        return self.residual.is_zero()

    def zero_degrees(self) -> list:
        bad = set(self.residual.degrees())
        return [d for d in range(1, self.max_degree + 1) if d not in bad]


def one_minus_exp_neg(n: int) -> list:
    """Coefficients of ``1 - e^{-z}``."""
    c = [-a for a in series.exp_series(n + 1, -1)]
    c[0] += 1
    return c


def exp_minus_one(n: int) -> list:
    c = series.exp_series(n + 1)
    c[0] -= 1
    return c


def eq7_lhs(maxdeg: int) -> LieSeries:
    """``X + Y - log(e^Y e^X) = X + Y - Z(Y, X)``."""
    x = LieSeries.generator("X", maxdeg)
    y = LieSeries.generator("Y", maxdeg)
    return x + y - swapped(bch(maxdeg))


def check_eq7(p: KVPair, maxdeg: int | None = None) -> Eq7Residual:
    n = p.max_degree if maxdeg is None else min(maxdeg, p.max_degree)
    x = LieSeries.generator("X", n)
    y = LieSeries.generator("Y", n)
    rhs = apply_ad_series(one_minus_exp_neg(n), x, p.F.truncate(n), n) + apply_ad_series(
        exp_minus_one(n), y, p.G.truncate(n), n
    )
    residual = eq7_lhs(n) - rhs
    per_degree: Dict[int, int] = {}
    for w, c in residual.terms.items():
        per_degree[len(w)] = max(per_degree.get(len(w), 0), abs(c.numerator))
    return Eq7Residual(residual, n, per_degree)


@lru_cache(maxsize=None)
def _ad_basis(w: str) -> Dict[str, int]:
    return {k.translate(_AD): c for k, c in expand_basis(w).items()}


@lru_cache(maxsize=None)
def slot_operator(w: str, letter: str) -> Dict[str, int]:
    """Normal form ``N`` of the derivative of ``b(w)`` in the direction of generator ``letter``.

    The derivative sends a vector ``s`` to ``N(ad X, ad Y) s``: every occurrence
    of ``letter`` is replaced by ``s`` in turn, and ``[A, B(s)]`` is the operator
    ``ad(A)`` composed after ``B``; a slot in the left factor is moved right by
    antisymmetry.
    """
    if len(w) == 1:
        return {"": 1} if w == letter else {}
    u, v = standard_factorization(w)
    out: Dict[str, int] = defaultdict(int)
    # [A, B(s)] -> ad(A) N(B)
    for a, ca in _ad_basis(u).items():
        for b, cb in slot_operator(v, letter).items():
            out[a + b] += ca * cb
    # [A(s), B] = -[B, A(s)] -> -ad(B) N(A)
    for a, ca in _ad_basis(v).items():
        for b, cb in slot_operator(u, letter).items():
            out[a + b] -= ca * cb
    return {k: c for k, c in out.items() if c}


def derivative_operator(u: LieSeries, letter: str) -> AssocSeries:
    """``partial_letter u`` as an ad-letter polynomial acting on the slot vector."""
    out: Dict[str, Fraction] = defaultdict(Fraction)
    for w, c in u.terms.items():
        for k, e in slot_operator(w, letter).items():
            out[k] += c * e
    # degree of the operator is one less than the monomial's
    return AssocSeries({k: v for k, v in out.items() if v}, max(u.max_degree - 1, 0), AD_LETTERS)


def divergence(p: KVPair, maxdeg: int | None = None) -> CyclicSeries:
    """``tr(ad X o d_X F + ad Y o d_Y G)`` as a combination of necklaces."""
    n = p.max_degree if maxdeg is None else min(maxdeg, p.max_degree)
    total: Dict[str, Fraction] = defaultdict(Fraction)
    for letter, comp in (("X", p.F), ("Y", p.G)):
        op = derivative_operator(comp.truncate(n), letter)
        ad = letter.lower()
        for w, c in op.terms.items():
            total[ad + w] += c
    return cyclic_reduce({k: v for k, v in total.items() if v})


def b_of(a: AssocSeries, maxdeg: int) -> AssocSeries:
    """``B(a) = a / (e^a - 1)`` for an ad-letter polynomial without constant term."""
    coeffs = series.bernoulli_generating(maxdeg + 1)
    result = AssocSeries.one(maxdeg, a.alphabet)
    power = AssocSeries.one(maxdeg, a.alphabet)
    for k in range(1, maxdeg + 1):
        power = assoc_mul(power, a, maxdeg)
        if power.is_zero():
            break
        if coeffs[k]:
            result = result + power * coeffs[k]
    return result


@lru_cache(maxsize=None)
def trace_rhs(maxdeg: int) -> CyclicSeries:
    """``T(X, Y) = 1/2 tr(B(ad X) + B(ad Y) - B(ad Z) - 1)`` with ``B(z) = z / (e^z - 1)``."""
    x = AssocSeries.letter("x", maxdeg, AD_LETTERS)
    y = AssocSeries.letter("y", maxdeg, AD_LETTERS)
    adz = lie_to_ad(bch(maxdeg))
    inner = b_of(x, maxdeg) + b_of(y, maxdeg) - b_of(adz, maxdeg) - AssocSeries.one(maxdeg, AD_LETTERS)
    # 1 + 1 - 1 - 1: the constant cancels; tr(1) never enters the cyclic space
    assert inner.constant_term == 0, "constant terms of the trace identity failed to cancel"
    return cyclic_reduce(inner) * Fraction(1, 2)


def check_eq8(p: KVPair, maxdeg: int | None = None) -> Eq8Residual:
    n = p.max_degree if maxdeg is None else min(maxdeg, p.max_degree)
    return Eq8Residual(divergence(p, n) - trace_rhs(n).truncate(n), n)


def reverse_cyclic(c: CyclicSeries) -> CyclicSeries:
    """Reverse every necklace (``tr(A_1 ... A_n) -> tr(A_n ... A_1)``)."""
    return CyclicSeries({w[::-1]: v for w, v in c.terms.items()})


def reversal_parts(c: CyclicSeries) -> tuple:
    """``(symmetric, antisymmetric)`` halves of ``c`` under necklace reversal."""
    r = reverse_cyclic(c)
    return (c + r) * Fraction(1, 2), (c - r) * Fraction(1, 2)
