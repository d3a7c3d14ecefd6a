"""The symmetric Kashiwara-Vergne candidate pair ``(F0, G0)``.

``F1 = (int_0^1 (1 - e^{-t ad X}) / (1 - e^{-ad X}) o psi(ad Z(tX, tY)) dt)(X + Y)``
with ``psi(z) = (e^z - 1 - z) / ((e^z - 1)(1 - e^{-z}))``, then

``F0 = 1/2 (F1(X, Y) + e^{ad X} F1(-X, -Y)) + 1/4 (Z(X, Y) - X)``,
``G0(X, Y) = F0(-Y, -X)``.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Dict, List, Mapping, Sequence, Tuple

from . import series
from .bch import bch
from .free_lie import (
    LieSeries,
    apply_ad_series,
    bracket_basis,
    negate_arguments,
    swap_negate,
)

Poly = Tuple[Fraction, ...]


def _padd(a: Poly, b: Poly) -> Poly:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def _pmul(a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return ()
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


class TLieSeries:
    """Lie series whose coefficients are polynomials in a formal parameter ``t``.

    ``terms`` maps Lyndon words to coefficient tuples ``(a_0, a_1, ...)`` meaning
    ``a_0 + a_1 t + ...``.
    """

    __slots__ = ("max_degree", "terms")

    def __init__(self, terms: Mapping[str, Sequence[Fraction]], max_degree: int):
        clean: Dict[str, Poly] = {}
        for w, p in terms.items():
            if len(w) > max_degree:
                continue
            p = _padd(tuple(Fraction(c) for c in p), ())
            if p:
                clean[w] = p
        self.max_degree = max_degree
        self.terms = clean

    @classmethod
    def constant(cls, u: LieSeries) -> "TLieSeries":
        return cls({w: (c,) for w, c in u.terms.items()}, u.max_degree)

    @classmethod
    def scaled_by_degree(cls, u: LieSeries, shift: int = 0) -> "TLieSeries":
        """Degree-``n`` part times ``t^(n + shift)``."""
        out = {}
        for w, c in u.terms.items():
            k = len(w) + shift
            if k < 0:
                raise ValueError("negative power of t")
            out[w] = (Fraction(0),) * k + (c,)
        return cls(out, u.max_degree)

    def __add__(self, other: "TLieSeries") -> "TLieSeries":
        n = min(self.max_degree, other.max_degree)
        out = {w: p for w, p in self.terms.items() if len(w) <= n}
        for w, p in other.terms.items():
            if len(w) <= n:
                out[w] = _padd(out.get(w, ()), p)
        return TLieSeries({w: p for w, p in out.items() if p}, n)

    def times_poly(self, p: Sequence[Fraction]) -> "TLieSeries":
        p = tuple(Fraction(c) for c in p)
        return TLieSeries({w: _pmul(q, p) for w, q in self.terms.items()}, self.max_degree)

    def is_zero(self) -> bool:
        return not self.terms

    def t_degree(self) -> int:
        return max((len(p) - 1 for p in self.terms.values()), default=-1)

    def integrate(self, lo: Fraction | int = 0, hi: Fraction | int = 1) -> LieSeries:
        lo, hi = Fraction(lo), Fraction(hi)
        out = {}
        for w, p in self.terms.items():
            out[w] = sum((c * (hi ** (k + 1) - lo ** (k + 1)) / (k + 1) for k, c in enumerate(p)), Fraction(0))
        return LieSeries(out, self.max_degree, check=False)

    def at(self, t: Fraction | int) -> LieSeries:
        t = Fraction(t)
        out = {w: sum((c * t**k for k, c in enumerate(p)), Fraction(0)) for w, p in self.terms.items()}
        return LieSeries(out, self.max_degree, check=False)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TLieSeries):
            return NotImplemented
        n = min(self.max_degree, other.max_degree)
        return {w: p for w, p in self.terms.items() if len(w) <= n} == {
            w: p for w, p in other.terms.items() if len(w) <= n
        }

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"TLieSeries({len(self.terms)} terms, max_degree={self.max_degree})"


def t_bracket(u: TLieSeries, v: TLieSeries, maxdeg: int | None = None) -> TLieSeries:
    n = min(u.max_degree, v.max_degree) if maxdeg is None else maxdeg
    out: Dict[str, Poly] = defaultdict(tuple)
    v_items = sorted(v.terms.items(), key=lambda kv: len(kv[0]))
    for a, pa in u.terms.items():
        room = n - len(a)
        for b, pb in v_items:
            if len(b) > room:
                break
            prod = _pmul(pa, pb)
            for k, e in bracket_basis(a, b).items():
                out[k] = _padd(out[k], tuple(c * e for c in prod))
    return TLieSeries({k: p for k, p in out.items() if p}, n)


def apply_t_ad_series(phi: Sequence[Sequence[Fraction]], a: TLieSeries, v: TLieSeries, maxdeg: int) -> TLieSeries:
    """``sum_k phi_k(t) ad(a)^k v`` with polynomial-in-``t`` coefficients ``phi_k``."""
    result = TLieSeries({}, maxdeg)
    term = TLieSeries(v.terms, maxdeg)
    for k, coeff in enumerate(phi):
        if term.is_zero():
            break
        result = result + term.times_poly(coeff)
        if k + 1 < len(phi):
            term = t_bracket(a, term, maxdeg)
    return result


def psi_series(maxdeg: int) -> List[Fraction]:
    """Taylor coefficients of ``psi(z) = (e^z - 1 - z) / ((e^z - 1)(1 - e^{-z}))`` through ``z^maxdeg``."""
    n = maxdeg + 3
    num = series.exp_series(n)
    num[0] -= 1
    num[1] -= 1
    # (e^z - 1)(1 - e^{-z}) = e^z + e^{-z} - 2
    den = [a + b for a, b in zip(series.exp_series(n), series.exp_series(n, -1))]
    den[0] -= 2
    return series.div(num, den, maxdeg + 1)


def prefactor_series(maxdeg: int) -> List[Poly]:
    """Coefficients ``r_j(t)`` of ``(1 - e^{-t z}) / (1 - e^{-z}) = sum_j r_j(t) z^j``.

    Both numerator and denominator are divided by ``z`` first; ``r_j`` is a
    polynomial in ``t`` of degree ``j + 1``.
    """
    n = maxdeg + 1
    # numerator / z: sum_i (-1)^i t^(i+1) z^i / (i+1)!
    num = [(Fraction(0),) * (i + 1) + (Fraction((-1) ** i, factorial(i + 1)),) for i in range(n)]
    den = [Fraction((-1) ** i, factorial(i + 1)) for i in range(n)]
    inv = series.div([Fraction(1)] + [Fraction(0)] * (n - 1), den, n)
    out = []
    for j in range(n):
        acc: Poly = ()
        for i in range(j + 1):
            acc = _padd(acc, tuple(c * inv[j - i] for c in num[i]))
        out.append(acc)
    return out


def dilate(u: LieSeries) -> TLieSeries:
    """``(1/t) u(tX, tY)``: degree-``n`` part times ``t^(n-1)``."""
    if any(len(w) == 0 for w in u.terms):
        raise ValueError("dilation requires zero constant term")
    return TLieSeries.scaled_by_degree(u, shift=-1)


def f1_integrand(maxdeg: int) -> TLieSeries:
    """``(1 - e^{-t ad X}) / (1 - e^{-ad X}) o psi(ad Z(t)) (X + Y)`` as a t-polynomial Lie series."""
    z_t = TLieSeries.scaled_by_degree(bch(maxdeg))
    x_plus_y = TLieSeries({"X": (1,), "Y": (1,)}, maxdeg)
    psi = [(c,) for c in psi_series(maxdeg)]
    inner = apply_t_ad_series(psi, z_t, x_plus_y, maxdeg)
    x = TLieSeries({"X": (1,)}, maxdeg)
    return apply_t_ad_series(prefactor_series(maxdeg), x, inner, maxdeg)


@lru_cache(maxsize=None)
def f1_series(maxdeg: int) -> LieSeries:
    return f1_integrand(maxdeg).integrate(0, 1)


@dataclass(frozen=True)
class KVPair:
    F: LieSeries
    G: LieSeries

    def __post_init__(self):
        for s in (self.F, self.G):
            if any(len(w) == 0 for w in s.terms):
                raise ValueError("KV pair components must have no constant term")

    @property
    def max_degree(self) -> int:
        return min(self.F.max_degree, self.G.max_degree)

    def __add__(self, other: "KVPair") -> "KVPair":
        return KVPair(self.F + other.F, self.G + other.G)

    def flipped(self) -> "KVPair":
        """``(G(-Y, -X), F(-Y, -X))``, again a solution when ``self`` is one."""
        return KVPair(swap_negate(self.G), swap_negate(self.F))

    @classmethod
    def zero(cls, maxdeg: int) -> "KVPair":
        return cls(LieSeries.zero(maxdeg), LieSeries.zero(maxdeg))


@lru_cache(maxsize=None)
def f0_g0(maxdeg: int) -> KVPair:
    f1 = f1_series(maxdeg)
    x = LieSeries.generator("X", maxdeg)
    exp_coeffs = series.exp_series(maxdeg + 1)
    twisted = apply_ad_series(exp_coeffs, x, negate_arguments(f1), maxdeg)
    f0 = (f1 + twisted) * Fraction(1, 2) + (bch(maxdeg) - x) * Fraction(1, 4)
    return KVPair(f0, swap_negate(f0))
