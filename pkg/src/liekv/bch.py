"""The Campbell-Hausdorff series ``Z(X, Y) = log(e^X e^Y)`` by two independent routes."""

from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Dict

from . import series
from .free_algebra import AssocSeries, assoc_exp, assoc_log
from .free_lie import (
    LieSeries,
    apply_ad_series,
    dynkin_project,
    lie_bracket,
    substitute,
)

bernoulli = series.bernoulli


def _dynkin_word_coefficients(maxdeg: int) -> Dict[str, Fraction]:
    """Sum, per word, of the Dynkin-formula weights ``(-1)^(m-1) / (m n prod p_i! q_i!)``.

    ``n`` is the total length; the word is ``X^p1 Y^q1 ... X^pm Y^qm`` with
    every block nonempty.
    """
    blocks = [(p, q) for p in range(maxdeg + 1) for q in range(maxdeg + 1 - p) if p + q > 0]
    acc: Dict[str, Fraction] = defaultdict(Fraction)

    def walk(word: str, m: int, denom: int) -> None:
        if m:
            n = len(word)
            acc[word] += Fraction((-1) ** (m - 1), m * n * denom)
        for p, q in blocks:
            if len(word) + p + q > maxdeg:
                continue
            walk(word + "X" * p + "Y" * q, m + 1, denom * factorial(p) * factorial(q))

    walk("", 0, 1)
    return {w: c for w, c in acc.items() if c}


def bch_dynkin(maxdeg: int) -> LieSeries:
    """Dynkin's explicit formula, each normalized iterated bracket rewritten on the Lyndon basis."""
    if maxdeg < 1:
        raise ValueError("maxdeg must be >= 1")
    gens = {a: LieSeries.generator(a, maxdeg) for a in "XY"}
    nested: Dict[str, LieSeries] = {}

    def left_normed(w: str) -> LieSeries:
        # [w1, [w2, ..., [w_{n-1}, w_n]]]
        if len(w) == 1:
            return gens[w]
        if w not in nested:
            nested[w] = lie_bracket(gens[w[0]], left_normed(w[1:]), maxdeg)
        return nested[w]

    out: Dict[str, Fraction] = defaultdict(Fraction)
    for w, c in sorted(_dynkin_word_coefficients(maxdeg).items()):
        if len(w) > 1 and w[-1] == w[-2]:
            continue
        for k, e in left_normed(w).terms.items():
            out[k] += c * e
    return LieSeries({k: c for k, c in out.items() if c}, maxdeg, check=False)


def bch_log(maxdeg: int) -> LieSeries:
    """``log(exp X exp Y)`` in the free associative algebra, then Dynkin-projected."""
    if maxdeg < 1:
        raise ValueError("maxdeg must be >= 1")
    ex = assoc_exp(AssocSeries.letter("X", maxdeg))
    ey = assoc_exp(AssocSeries.letter("Y", maxdeg))
    return dynkin_project(assoc_log(ex * ey))


@lru_cache(maxsize=None)
def _bch_cached(maxdeg: int) -> LieSeries:
    return bch_dynkin(maxdeg)


def bch(maxdeg: int) -> LieSeries:
    """Memoized ``Z(X, Y)`` through ``maxdeg`` (the Dynkin route)."""
    return _bch_cached(maxdeg)


def inverse_exp_differential(maxdeg: int) -> list:
    """Coefficients of ``z / (1 - e^{-z})``."""
    num = [Fraction(0), Fraction(1)] + [Fraction(0)] * maxdeg
    den = [-c for c in series.exp_series(maxdeg + 2, -1)]
    den[0] += 1
    return series.div(num, den, maxdeg + 1)


def bch_linear_in_Y(maxdeg: int) -> LieSeries:
    """``X + (ad X / (1 - e^{-ad X})) Y``: the part of ``Z`` of degree at most 1 in ``Y``."""
    x = LieSeries.generator("X", maxdeg)
    y = LieSeries.generator("Y", maxdeg)
    return x + apply_ad_series(inverse_exp_differential(maxdeg), x, y, maxdeg)


def swapped(u: LieSeries) -> LieSeries:
    """``u(Y, X)``."""
    n = u.max_degree
    return substitute(u, LieSeries.generator("Y", n), LieSeries.generator("X", n), n)
