"""The free Lie algebra on two generators, in the Lyndon basis.

A Lyndon word ``w`` stands for its standard bracketing ``b(w)``: letters are
themselves, and ``b(w) = [b(u), b(v)]`` where ``v`` is the longest proper
Lyndon suffix of ``w``. Brackets of basis elements are rewritten back onto the
basis by the classical Jacobi recursion (memoized, integer coefficients); the
associative embedding plus a triangular extraction gives an independent route
to the same coordinates.
"""

from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Dict, Iterator, List, Mapping, Sequence, Tuple, Union

from .free_algebra import AD_LETTERS, GENERATORS, AssocSeries

Coefficients = Union[Sequence[Fraction], Callable[[int], Fraction]]


# --- Lyndon words -----------------------------------------------------------


def is_lyndon(w: str) -> bool:
    return bool(w) and all(w < w[i:] + w[:i] for i in range(1, len(w)))


@lru_cache(maxsize=None)
def _lyndon_upto(n: int, alphabet: str) -> Tuple[str, ...]:
    # Duval's generation, lexicographic order
    out = []
    w = [alphabet[0]]
    last = alphabet[-1]
    while w:
        out.append("".join(w))
        m = len(w)
        while len(w) < n:
            w.append(w[len(w) - m])
        while w and w[-1] == last:
            w.pop()
        if w:
            w[-1] = alphabet[alphabet.index(w[-1]) + 1]
    return tuple(out)


def lyndon_basis(n: int, alphabet: str = GENERATORS) -> List[str]:
    """Lyndon words of length exactly ``n``, lexicographically ordered."""
    if n < 1:
        raise ValueError("degree must be >= 1")
    return [w for w in _lyndon_upto(n, alphabet) if len(w) == n]


def _mobius(n: int) -> int:
    result, p = 1, 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1
    return -result if n > 1 else result


def witt_dimension(n: int, k: int = 2) -> int:
    total = sum(_mobius(d) * k ** (n // d) for d in range(1, n + 1) if n % d == 0)
    return total // n


@lru_cache(maxsize=None)
def standard_factorization(w: str) -> Tuple[str, str]:
    if len(w) < 2:
        raise ValueError(f"{w!r} has no standard factorization")
    for i in range(1, len(w)):
        if is_lyndon(w[i:]):
            return w[:i], w[i:]
    raise AssertionError("unreachable: a final letter is always Lyndon")


@lru_cache(maxsize=None)
def bracketing(w: str) -> str:
    """Human-readable standard bracketing, e.g. ``XXY -> [X,[X,Y]]``."""
    if len(w) == 1:
        return w
    u, v = standard_factorization(w)
    return f"[{bracketing(u)},{bracketing(v)}]"


@lru_cache(maxsize=None)
def expand_basis(w: str) -> Dict[str, int]:
    """Associative expansion of ``b(w)`` (brackets become commutators)."""
    if len(w) == 1:
        return {w: 1}
    u, v = standard_factorization(w)
    eu, ev = expand_basis(u), expand_basis(v)
    out: Dict[str, int] = defaultdict(int)
    for a, ca in eu.items():
        for b, cb in ev.items():
            out[a + b] += ca * cb
            out[b + a] -= ca * cb
    return {k: c for k, c in out.items() if c}


@lru_cache(maxsize=None)
def bracket_basis(u: str, v: str) -> Dict[str, int]:
    """``[b(u), b(v)]`` on the Lyndon basis, by Jacobi rewriting."""
    if u == v:
        return {}
    if u > v:
        return {k: -c for k, c in bracket_basis(v, u).items()}
    if len(u) == 1 or standard_factorization(u)[1] >= v:
        return {u + v: 1}
    u1, u2 = standard_factorization(u)
    # [[u1,u2],v] = [u1,[u2,v]] - [u2,[u1,v]]
    out: Dict[str, int] = defaultdict(int)
    for w, c in bracket_basis(u2, v).items():
        for k, d in bracket_basis(u1, w).items():
            out[k] += c * d
    for w, c in bracket_basis(u1, v).items():
        for k, d in bracket_basis(u2, w).items():
            out[k] -= c * d
    return {k: c for k, c in out.items() if c}


def lyndon_coordinates(poly: Mapping[str, Fraction]) -> Dict[str, Fraction]:
    """Coordinates of a Lie polynomial (given associatively) on the Lyndon basis.

    Uses triangularity: ``b(l) = l + (lexicographically larger words)``, so the
    smallest word in the support of a Lie element is Lyndon and carries its
    coordinate.
    """
    by_len: Dict[int, Dict[str, Fraction]] = defaultdict(dict)
    for w, c in poly.items():
        if c:
            by_len[len(w)][w] = Fraction(c)
    if 0 in by_len:
        raise ValueError("a Lie element has no constant term")
    coords: Dict[str, Fraction] = {}
    for n, part in by_len.items():
        while part:
            w = min(part)
            c = part[w]
            if not is_lyndon(w):
                raise ValueError(f"not a Lie element: leading word {w!r} is not Lyndon")
            coords[w] = c
            for k, e in expand_basis(w).items():
                v = part.get(k, 0) - c * e
                if v:
                    part[k] = v
                else:
                    part.pop(k, None)
    return coords


# --- Lie series -------------------------------------------------------------


class LieSeries:
    """Element of the completed free Lie algebra, truncated at ``max_degree``.

    ``terms`` maps Lyndon words to the coefficient of their standard bracketing.
    Treated as immutable; equality compares through the smaller truncation.
    """

    __slots__ = ("max_degree", "terms")

    def __init__(self, terms: Mapping[str, Fraction | int], max_degree: int, check: bool = True):
        clean: Dict[str, Fraction] = {}
        for w, c in terms.items():
            if c == 0 or len(w) > max_degree:
                continue
            if check and not (set(w) <= set(GENERATORS) and is_lyndon(w)):
                raise ValueError(f"{w!r} is not a Lyndon word over {GENERATORS}")
            clean[w] = Fraction(c)
        self.max_degree = max_degree
        self.terms = clean

    @classmethod
    def _raw(cls, terms: Dict[str, Fraction], max_degree: int) -> "LieSeries":
        obj = cls.__new__(cls)
        obj.max_degree = max_degree
        obj.terms = terms
        return obj

    @classmethod
    def generator(cls, letter: str, max_degree: int) -> "LieSeries":
        return cls({letter: 1}, max_degree)

    @classmethod
    def zero(cls, max_degree: int) -> "LieSeries":
        return cls._raw({}, max_degree)

    def coefficient(self, w: str) -> Fraction:
        return self.terms.get(w, Fraction(0))

    def degree_part(self, n: int) -> "LieSeries":
        return LieSeries._raw({w: c for w, c in self.terms.items() if len(w) == n}, self.max_degree)

    def truncate(self, n: int) -> "LieSeries":
        n = min(n, self.max_degree)
        return LieSeries._raw({w: c for w, c in self.terms.items() if len(w) <= n}, n)

    def y_degree_at_most(self, k: int) -> "LieSeries":
        return LieSeries._raw({w: c for w, c in self.terms.items() if w.count("Y") <= k}, self.max_degree)

    def is_zero(self) -> bool:
        return not self.terms

    def min_degree(self) -> int | None:
        return min((len(w) for w in self.terms), default=None)

    def _combine(self, other: "LieSeries", sign: int) -> "LieSeries":
        n = min(self.max_degree, other.max_degree)
        out = {w: c for w, c in self.terms.items() if len(w) <= n}
        for w, c in other.terms.items():
            if len(w) > n:
                continue
            v = out.get(w, 0) + sign * c
            if v:
                out[w] = v
            else:
                out.pop(w, None)
        return LieSeries._raw(out, n)

    def __add__(self, other: "LieSeries") -> "LieSeries":
        return self._combine(other, 1)

    def __sub__(self, other: "LieSeries") -> "LieSeries":
        return self._combine(other, -1)

    def __neg__(self) -> "LieSeries":
        return LieSeries._raw({w: -c for w, c in self.terms.items()}, self.max_degree)

    def __mul__(self, scalar) -> "LieSeries":
        scalar = Fraction(scalar)
        if scalar == 0:
            return LieSeries.zero(self.max_degree)
        return LieSeries._raw({w: c * scalar for w, c in self.terms.items()}, self.max_degree)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, LieSeries):
            return NotImplemented
        n = min(self.max_degree, other.max_degree)
        return {w: c for w, c in self.terms.items() if len(w) <= n} == {
            w: c for w, c in other.terms.items() if len(w) <= n
        }

    __hash__ = None  # type: ignore[assignment]

    def __iter__(self) -> Iterator[Tuple[str, Fraction]]:
        return iter(sorted(self.terms.items(), key=lambda kv: (len(kv[0]), kv[0])))

    def __repr__(self) -> str:
        if not self.terms:
            return f"LieSeries(0, max_degree={self.max_degree})"
        return "LieSeries(" + " + ".join(f"{c}*{bracketing(w)}" for w, c in self) + f", max_degree={self.max_degree})"


def lie_bracket(u: LieSeries, v: LieSeries, maxdeg: int | None = None) -> LieSeries:
    n = min(u.max_degree, v.max_degree) if maxdeg is None else maxdeg
    out: Dict[str, Fraction] = defaultdict(Fraction)
    v_items = sorted(v.terms.items(), key=lambda kv: len(kv[0]))
    for a, ca in u.terms.items():
        room = n - len(a)
        for b, cb in v_items:
            if len(b) > room:
                break
            for k, e in bracket_basis(a, b).items():
                out[k] += ca * cb * e
    return LieSeries._raw({k: c for k, c in out.items() if c}, n)


def lie_bracket_via_assoc(u: LieSeries, v: LieSeries, maxdeg: int | None = None) -> LieSeries:
    """Bracket computed as a commutator in the associative algebra; cross-check route."""
    n = min(u.max_degree, v.max_degree) if maxdeg is None else maxdeg
    a, b = lie_to_assoc(u, n), lie_to_assoc(v, n)
    comm = a * b - b * a
    return LieSeries._raw(lyndon_coordinates(comm.terms), n)


def lie_to_assoc(u: LieSeries, maxdeg: int | None = None) -> AssocSeries:
    n = u.max_degree if maxdeg is None else maxdeg
    out: Dict[str, Fraction] = defaultdict(Fraction)
    for w, c in u.terms.items():
        if len(w) > n:
            continue
        for k, e in expand_basis(w).items():
            out[k] += c * e
    return AssocSeries._raw({k: c for k, c in out.items() if c}, n, GENERATORS)


def _left_normed(poly: Dict[str, Fraction]) -> Dict[str, Fraction]:
    # r(a1 a2 ... an) = [a1, [a2, ... [a_{n-1}, a_n]]], applied to a homogeneous polynomial
    n = len(next(iter(poly)))
    if n == 1:
        return dict(poly)
    tails: Dict[str, Dict[str, Fraction]] = defaultdict(dict)
    for w, c in poly.items():
        tails[w[0]][w[1:]] = c
    out: Dict[str, Fraction] = defaultdict(Fraction)
    for a, tail in tails.items():
        for w, c in _left_normed(tail).items():
            out[a + w] += c
            out[w + a] -= c
    return {k: c for k, c in out.items() if c}


def dynkin_project(a: AssocSeries) -> LieSeries:
    """Apply ``w -> (1/|w|) [w_1, [w_2, ..., w_n]]`` wordwise; the identity on Lie elements."""
    if a.alphabet != GENERATORS:
        raise ValueError(f"dynkin_project expects alphabet {GENERATORS!r}")
    if a.constant_term != 0:
        raise ValueError("dynkin_project requires zero constant term")
    by_len: Dict[int, Dict[str, Fraction]] = defaultdict(dict)
    for w, c in a.terms.items():
        by_len[len(w)][w] = c
    coords: Dict[str, Fraction] = {}
    for n, part in sorted(by_len.items()):
        projected = _left_normed(part)
        for k, c in lyndon_coordinates(projected).items():
            coords[k] = c / n
    return LieSeries._raw({k: c for k, c in coords.items() if c}, a.max_degree)


_AD = str.maketrans(GENERATORS, AD_LETTERS)


def lie_to_ad(u: LieSeries, maxdeg: int | None = None) -> AssocSeries:
    """Image under ``X -> x = ad X``, ``Y -> y = ad Y`` as an ad-letter polynomial."""
    a = lie_to_assoc(u, maxdeg)
    return AssocSeries._raw({w.translate(_AD): c for w, c in a.terms.items()}, a.max_degree, AD_LETTERS)


def substitute(u: LieSeries, image_x: LieSeries, image_y: LieSeries, maxdeg: int | None = None) -> LieSeries:
    """Apply the Lie morphism determined by ``X -> image_x``, ``Y -> image_y``."""
    n = u.max_degree if maxdeg is None else maxdeg
    for img in (image_x, image_y):
        if any(len(w) == 0 for w in img.terms):
            raise ValueError("substitution images must have no constant term")
    cache: Dict[str, LieSeries] = {"X": image_x.truncate(n), "Y": image_y.truncate(n)}

    def image(w: str) -> LieSeries:
        if w not in cache:
            p, q = standard_factorization(w)
            cache[w] = lie_bracket(image(p), image(q), n)
        return cache[w]

    result = LieSeries.zero(n)
    for w, c in sorted(u.terms.items(), key=lambda kv: len(kv[0])):
        if len(w) <= n:
            result = result + image(w) * c
    return result


def swap_negate(u: LieSeries, maxdeg: int | None = None) -> LieSeries:
    """``u(-Y, -X)``."""
    n = u.max_degree if maxdeg is None else maxdeg
    return substitute(u, -LieSeries.generator("Y", n), -LieSeries.generator("X", n), n)


def negate_arguments(u: LieSeries) -> LieSeries:
    """``u(-X, -Y)``: degree-``k`` part picks up ``(-1)^k``."""
    return LieSeries._raw({w: (-c if len(w) % 2 else c) for w, c in u.terms.items()}, u.max_degree)


def apply_ad_series(phi: Coefficients, a: LieSeries, v: LieSeries, maxdeg: int | None = None) -> LieSeries:
    """``sum_k phi_k ad(a)^k (v)`` exact through ``maxdeg``.

    ``phi`` is a coefficient sequence (missing entries are zero) or a callable
    ``k -> phi_k``. Since ``a`` has no degree-0 part, each application of
    ``ad(a)`` raises the degree, so the sum is finite after truncation.
    """
    n = min(a.max_degree, v.max_degree) if maxdeg is None else maxdeg
    coef = phi if callable(phi) else (lambda k: phi[k] if k < len(phi) else 0)
    result = LieSeries.zero(n)
    term = v.truncate(n)
    k = 0
    while not term.is_zero():
        c = coef(k)
        if c:
            result = result + term * c
        if not callable(phi) and k + 1 >= len(phi):
            break
        term = lie_bracket(a, term, n)
        k += 1
    return result


def ad_word(ops: str, target: str, max_degree: int | None = None) -> LieSeries:
    """Ad-monomial notation: ``ad_word("yx", "Y") = [Y, [X, Y]]``."""
    n = len(ops) + 1 if max_degree is None else max_degree
    result = LieSeries.generator(target, n)
    for op in reversed(ops):
        result = lie_bracket(LieSeries.generator(op.upper(), n), result, n)
    return result
