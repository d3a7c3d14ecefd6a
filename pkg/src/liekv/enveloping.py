"""Symmetric and enveloping algebras of a concrete Lie algebra, exactly.

Monomials are sorted tuples of basis indices: in ``S[g]`` a tuple is a
multiset, in ``U(g)`` it is the PBW monomial ``e_{i1} e_{i2} ...`` with
``i1 <= i2 <= ...`` in the declared basis order.
"""

from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from itertools import permutations
from math import factorial
from typing import Dict, Iterable, Mapping, Tuple

from . import series
from .concrete_lie import LieAlgebraData

Key = Tuple[int, ...]


class _Element:
    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Key, Fraction | int] | None = None):
        clean: Dict[Key, Fraction] = {}
        for k, c in (terms or {}).items():
            k = tuple(sorted(k))
            v = clean.get(k, 0) + Fraction(c)
            if v:
                clean[k] = v
            else:
                clean.pop(k, None)
        self.terms = clean

    @classmethod
    def _raw(cls, terms: Dict[Key, Fraction]):
        obj = cls.__new__(cls)
        obj.terms = terms
        return obj

    def _combine(self, other, sign):
        if type(other) is not type(self):
            raise TypeError(f"cannot combine {type(self).__name__} with {type(other).__name__}")
        out = dict(self.terms)
        for k, c in other.terms.items():
            v = out.get(k, 0) + sign * c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return self._raw(out)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return self._raw({k: -c for k, c in self.terms.items()})

    def scale(self, s):
        s = Fraction(s)
        return self._raw({k: c * s for k, c in self.terms.items()} if s else {})

    def __rmul__(self, s):
        return self.scale(s)

    def degree(self) -> int:
        return max((len(k) for k in self.terms), default=-1)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        return type(other) is type(self) and self.terms == other.terms

    __hash__ = None  # type: ignore[assignment]

    def __iter__(self):
        return iter(sorted(self.terms.items(), key=lambda kv: (len(kv[0]), kv[0])))

    def __repr__(self) -> str:
        if not self.terms:
            return f"{type(self).__name__}(0)"
        body = " + ".join(f"{c}*{'e' + '.e'.join(map(str, k)) if k else '1'}" for k, c in self)
        return f"{type(self).__name__}({body})"


class SymElement(_Element):
    """Polynomial in the basis of ``g`` (commutative)."""

    __slots__ = ()

    def __mul__(self, other):
        if not isinstance(other, SymElement):
            return self.scale(other)
        out: Dict[Key, Fraction] = defaultdict(Fraction)
        for a, ca in self.terms.items():
            for b, cb in other.terms.items():
                out[tuple(sorted(a + b))] += ca * cb
        return SymElement._raw({k: c for k, c in out.items() if c})

    def __pow__(self, n: int):
        result = SymElement({(): 1})
        for _ in range(n):
            result = result * self
        return result

    def truncate(self, n: int) -> "SymElement":
        return SymElement._raw({k: c for k, c in self.terms.items() if len(k) <= n})


class UEAElement(_Element):
    """Element of ``U(g)`` in PBW normal form; multiply with :func:`uea_mul`."""

    __slots__ = ()


def _cache(alg: LieAlgebraData) -> Dict[Key, Dict[Key, Fraction]]:
    return alg.__dict__.setdefault("_pbw_cache", {})


def _normal_form(word: Key, alg: LieAlgebraData) -> Dict[Key, Fraction]:
    cache = _cache(alg)
    if word in cache:
        return cache[word]
    for pos in range(len(word) - 1):
        j, i = word[pos], word[pos + 1]
        if j > i:
            break
    else:
        cache[word] = {word: Fraction(1)}
        return cache[word]
    head, tail = word[:pos], word[pos + 2 :]
    # e_j e_i = e_i e_j + [e_j, e_i]
    out: Dict[Key, Fraction] = defaultdict(Fraction)
    for k, c in _normal_form(head + (i, j) + tail, alg).items():
        out[k] += c
    for m, cm in alg.bracket_exact(j, i).items():
        for k, c in _normal_form(head + (m,) + tail, alg).items():
            out[k] += cm * c
    cache[word] = {k: c for k, c in out.items() if c}
    return cache[word]


def pbw_normal_form(word: Iterable[int], alg: LieAlgebraData) -> UEAElement:
    return UEAElement._raw(dict(_normal_form(tuple(word), alg)))


def uea_mul(u: UEAElement, v: UEAElement, alg: LieAlgebraData) -> UEAElement:
    out: Dict[Key, Fraction] = defaultdict(Fraction)
    for a, ca in u.terms.items():
        for b, cb in v.terms.items():
            for k, c in _normal_form(a + b, alg).items():
                out[k] += ca * cb * c
    return UEAElement._raw({k: c for k, c in out.items() if c})


def uea_commutator(u: UEAElement, v: UEAElement, alg: LieAlgebraData) -> UEAElement:
    return uea_mul(u, v, alg) - uea_mul(v, u, alg)


def basis_element(i: int) -> SymElement:
    return SymElement({(i,): 1})


def symmetrize(p: SymElement, alg: LieAlgebraData) -> UEAElement:
    """``beta``: average over all orderings of each monomial, then PBW-normalize."""
    out: Dict[Key, Fraction] = defaultdict(Fraction)
    for mono, c in p.terms.items():
        orders = set(permutations(mono))
        w = c / len(orders)
        for order in orders:
            for k, e in _normal_form(order, alg).items():
                out[k] += w * e
    return UEAElement._raw({k: c for k, c in out.items() if c})


def unsymmetrize(u: UEAElement, alg: LieAlgebraData) -> SymElement:
    """Inverse of :func:`symmetrize`, peeling off the top PBW degree repeatedly."""
    rest = u
    result = SymElement()
    while not rest.is_zero():
        top = rest.degree()
        leading = SymElement._raw({k: c for k, c in rest.terms.items() if len(k) == top})
        result = result + leading
        rest = rest - symmetrize(leading, alg)
    return result


def gutt_star(w: SymElement, v: SymElement, alg: LieAlgebraData) -> SymElement:
    return unsymmetrize(uea_mul(symmetrize(w, alg), symmetrize(v, alg), alg), alg)


def ad_derivation(i: int, p: SymElement, alg: LieAlgebraData) -> SymElement:
    """``ad(e_i)`` extended to ``S[g]`` as a derivation."""
    out: Dict[Key, Fraction] = defaultdict(Fraction)
    for mono, c in p.terms.items():
        for r, j in enumerate(mono):
            rest = mono[:r] + mono[r + 1 :]
            for m, cm in alg.bracket_exact(i, j).items():
                out[tuple(sorted(rest + (m,)))] += c * cm
    return SymElement._raw({k: c for k, c in out.items() if c})


def is_invariant(p: SymElement, alg: LieAlgebraData) -> bool:
    return all(ad_derivation(i, p, alg).is_zero() for i in range(alg.dim))


# --- Duflo map ------------------------------------------------------------------

PolyMatrix = list  # d x d nested lists of SymElement


def _ad_poly_matrix(alg: LieAlgebraData) -> PolyMatrix:
    # (ad X)_{kj} = sum_i x_i c_ij^k, entries as linear polynomials in the x_i
    d = alg.dim
    return [
        [SymElement({(i,): alg.c(i, j, k) for i in range(d) if alg.c(i, j, k)}) for j in range(d)]
        for k in range(d)
    ]


def _pm_mul(a: PolyMatrix, b: PolyMatrix, n: int) -> PolyMatrix:
    d = len(a)
    out = []
    for r in range(d):
        row = []
        for c in range(d):
            acc = SymElement()
            for k in range(d):
                if a[r][k].terms and b[k][c].terms:
                    acc = acc + (a[r][k] * b[k][c]).truncate(n)
            row.append(acc)
        out.append(row)
    return out


def ad_power_traces(alg: LieAlgebraData, n: int) -> Dict[int, SymElement]:
    """``tr((ad X)^k)`` as exact polynomials in the coordinates of ``X``, ``1 <= k <= n``."""
    m = _ad_poly_matrix(alg)
    power = m
    out = {}
    for k in range(1, n + 1):
        out[k] = sum((power[i][i] for i in range(alg.dim)), SymElement())
        if k < n:
            power = _pm_mul(power, m, n)
    return out


def _poly_exp(p: SymElement, n: int) -> SymElement:
    if () in p.terms:
        raise ValueError("exp of a polynomial with constant term")
    result = SymElement({(): 1})
    term = SymElement({(): 1})
    for k in range(1, n + 1):
        term = (term * p).truncate(n).scale(Fraction(1, k))
        if term.is_zero():
            break
        result = result + term
    return result


def sqrt_j_polynomial(alg: LieAlgebraData, n: int) -> SymElement:
    """Taylor polynomial of ``j^{1/2}`` through degree ``n``, from

    ``ln j = -tr(ad X)/2 + sum_{k>=1} b_{2k} tr((ad X)^{2k}) / ((2k)! 2k)``.
    """
    if n <= 0:
        return SymElement({(): 1})
    traces = ad_power_traces(alg, n)
    log_j = traces[1].scale(Fraction(-1, 2))
    for k in range(1, n // 2 + 1):
        coeff = series.bernoulli(2 * k) / (factorial(2 * k) * 2 * k)
        log_j = log_j + traces[2 * k].scale(coeff)
    return _poly_exp(log_j.scale(Fraction(1, 2)), n)


def apply_constant_coefficient(op: SymElement, p: SymElement) -> SymElement:
    """``op(d) P``: each coordinate ``x_i`` of ``op`` acts as ``d/de_i`` on ``P``."""
    out: Dict[Key, Fraction] = defaultdict(Fraction)
    for m, cm in op.terms.items():
        need = defaultdict(int)
        for i in m:
            need[i] += 1
        for mono, c in p.terms.items():
            have = defaultdict(int)
            for i in mono:
                have[i] += 1
            if any(have[i] < k for i, k in need.items()):
                continue
            factor = 1
            for i, k in need.items():
                factor *= factorial(have[i]) // factorial(have[i] - k)
                have[i] -= k
            rest = tuple(sorted(i for i, k in have.items() for _ in range(k)))
            out[rest] += cm * c * factor
    return SymElement._raw({k: c for k, c in out.items() if c})


def duflo_map(p: SymElement, alg: LieAlgebraData, maxorder: int | None = None) -> UEAElement:
    """``gamma(P) = beta(j^{1/2}(d) P)``; only terms up to the degree of ``P`` act."""
    n = p.degree() if maxorder is None else maxorder
    return symmetrize(apply_constant_coefficient(sqrt_j_polynomial(alg, max(n, 0)), p), alg)


def check_duflo_multiplicative(p: SymElement, q: SymElement, alg: LieAlgebraData, use_duflo: bool = True):
    """``(ok, residual)`` with ``residual = gamma(PQ) - gamma(P) gamma(Q)``.

    ``use_duflo=False`` runs the same comparison for plain symmetrization.
    """
    for name, f in (("P", p), ("Q", q)):
        if not is_invariant(f, alg):
            raise ValueError(f"{name} is not ad-invariant")
    if use_duflo:
        lhs = duflo_map(p * q, alg)
        rhs = uea_mul(duflo_map(p, alg), duflo_map(q, alg), alg)
    else:
        lhs = symmetrize(p * q, alg)
        rhs = uea_mul(symmetrize(p, alg), symmetrize(q, alg), alg)
    residual = lhs - rhs
    return residual.is_zero(), residual


def casimir(alg: LieAlgebraData) -> SymElement:
    """Quadratic invariant from the Killing form, when it is nondegenerate."""
    d = alg.dim
    ads = [[[alg.c(i, j, k) for j in range(d)] for k in range(d)] for i in range(d)]
    kill = [
        [sum(ads[a][r][s] * ads[b][s][r] for r in range(d) for s in range(d)) for b in range(d)] for a in range(d)
    ]
    inv = _exact_inverse(kill)
    return SymElement({(a, b): inv[a][b] for a in range(d) for b in range(d) if inv[a][b]})


def _exact_inverse(m):
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise ValueError("Killing form is degenerate")
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        a[col] = [x / p for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]
