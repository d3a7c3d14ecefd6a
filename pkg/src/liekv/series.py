"""Exact univariate power series, stored as coefficient lists of Fractions.

A series ``a`` of length ``n`` represents ``a[0] + a[1] z + ... + a[n-1] z^(n-1)``
modulo ``z^n``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import List, Sequence

Series = List[Fraction]


def exp_series(n: int, scale: Fraction | int = 1) -> Series:
    """Coefficients of ``exp(scale * z)`` through ``z^(n-1)``."""
    scale = Fraction(scale)
    return [scale**k / factorial(k) for k in range(n)]


def mul(a: Sequence[Fraction], b: Sequence[Fraction], n: int) -> Series:
    out = [Fraction(0)] * n
    for i, ai in enumerate(a[:n]):
        if ai == 0:
            continue
        for j, bj in enumerate(b[: n - i]):
            if bj:
                out[i + j] += ai * bj
    return out


def div(a: Sequence[Fraction], b: Sequence[Fraction], n: int) -> Series:
    """Quotient ``a / b`` through ``z^(n-1)``.

    Both numerator and denominator may start with zeros; the denominator's
    valuation is divided out of the numerator, which must vanish to at least
    the same order.
    """
    shift = next((k for k, c in enumerate(b) if c != 0), None)
    if shift is None:
        raise ZeroDivisionError("denominator series is zero")
    if any(c != 0 for c in a[:shift]):
        raise ValueError("numerator valuation is below the denominator's")
    num = list(a[shift:]) + [Fraction(0)] * max(0, n - len(a) + shift)
    den = list(b[shift:]) + [Fraction(0)] * max(0, n - len(b) + shift)
    lead = den[0]
    out: Series = []
    for k in range(n):
        acc = Fraction(num[k])
        for j in range(1, k + 1):
            if den[j]:
                acc -= den[j] * out[k - j]
        out.append(acc / lead)
    return out


def compose_neg(a: Sequence[Fraction]) -> Series:
    """``a(-z)``."""
    return [c if k % 2 == 0 else -c for k, c in enumerate(a)]


@lru_cache(maxsize=None)
def _bernoulli_table(n: int) -> tuple:
    # x/(e^x - 1) = 1 / ((e^x - 1)/x), inverted exactly
    shifted = [Fraction(1, factorial(k + 1)) for k in range(n + 1)]
    inv = div([Fraction(1)] + [Fraction(0)] * n, shifted, n + 1)
    return tuple(c * factorial(k) for k, c in enumerate(inv))


def bernoulli(n: int) -> Fraction:
    """Bernoulli number ``b_n`` with ``sum b_n x^n / n! = x / (e^x - 1)``, so ``b_1 = -1/2``."""
    if n < 0:
        raise ValueError("n must be >= 0")
    size = max(16, 1 << (n.bit_length()))
    return _bernoulli_table(size)[n]


def bernoulli_generating(n: int) -> Series:
    """Coefficients ``b_k / k!`` of ``z / (e^z - 1)`` through ``z^(n-1)``."""
    return [bernoulli(k) / factorial(k) for k in range(n)]
