"""Graded arithmetic in the free associative algebra and its cyclic quotient.

Words are plain strings over a declared alphabet of single-character letters:
``"XY"`` for the generators, ``"xy"`` for ad-letters (``x = ad X``,
``y = ad Y``). The empty string is the unit word. Coefficients are exact
``Fraction`` values; nothing in this module touches floating point.
"""

from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from typing import Dict, Iterable, Iterator, Mapping, Tuple

GENERATORS = "XY"
AD_LETTERS = "xy"
SLOT = "s"


class AlphabetError(ValueError):
    pass


class AssocSeries:
    """Truncated noncommutative power series ``sum c_w w`` with ``len(w) <= max_degree``.

    Instances are treated as immutable. Equality compares coefficients through
    the smaller of the two truncation orders.
    """

    __slots__ = ("alphabet", "max_degree", "terms")

    def __init__(self, terms: Mapping[str, Fraction | int], max_degree: int, alphabet: str = GENERATORS):
        allowed = set(alphabet)
        clean: Dict[str, Fraction] = {}
        for w, c in terms.items():
            if len(w) > max_degree or c == 0:
                continue
            if not allowed.issuperset(w):
                raise AlphabetError(f"word {w!r} not over alphabet {alphabet!r}")
            clean[w] = Fraction(c)
        self.alphabet = alphabet
        self.max_degree = max_degree
        self.terms = clean

    @classmethod
    def _raw(cls, terms: Dict[str, Fraction], max_degree: int, alphabet: str) -> "AssocSeries":
        # trusted constructor: terms already clean
        obj = cls.__new__(cls)
        obj.alphabet = alphabet
        obj.max_degree = max_degree
        obj.terms = terms
        return obj

    @classmethod
    def letter(cls, a: str, max_degree: int, alphabet: str = GENERATORS) -> "AssocSeries":
        return cls({a: 1}, max_degree, alphabet)

    @classmethod
    def one(cls, max_degree: int, alphabet: str = GENERATORS) -> "AssocSeries":
        return cls({"": 1}, max_degree, alphabet)

    @classmethod
    def zero(cls, max_degree: int, alphabet: str = GENERATORS) -> "AssocSeries":
        return cls._raw({}, max_degree, alphabet)

    def coefficient(self, word: str) -> Fraction:
        return self.terms.get(word, Fraction(0))

    @property
    def constant_term(self) -> Fraction:
        return self.coefficient("")

    def degree_part(self, n: int) -> "AssocSeries":
        return AssocSeries._raw({w: c for w, c in self.terms.items() if len(w) == n}, self.max_degree, self.alphabet)

    def truncate(self, n: int) -> "AssocSeries":
        n = min(n, self.max_degree)
        return AssocSeries._raw({w: c for w, c in self.terms.items() if len(w) <= n}, n, self.alphabet)

    def is_zero(self) -> bool:
        return not self.terms

    def _check(self, other: "AssocSeries") -> None:
        if self.alphabet != other.alphabet:
            raise AlphabetError(f"alphabet mismatch: {self.alphabet!r} vs {other.alphabet!r}")

    def __add__(self, other: "AssocSeries") -> "AssocSeries":
        self._check(other)
        n = min(self.max_degree, other.max_degree)
        out = {w: c for w, c in self.terms.items() if len(w) <= n}
        _accumulate(out, other.terms, 1, n)
        return AssocSeries._raw(out, n, self.alphabet)

    def __neg__(self) -> "AssocSeries":
        return AssocSeries._raw({w: -c for w, c in self.terms.items()}, self.max_degree, self.alphabet)

    def __sub__(self, other: "AssocSeries") -> "AssocSeries":
        self._check(other)
        n = min(self.max_degree, other.max_degree)
        out = {w: c for w, c in self.terms.items() if len(w) <= n}
        _accumulate(out, other.terms, -1, n)
        return AssocSeries._raw(out, n, self.alphabet)

    def __mul__(self, other):
        if isinstance(other, AssocSeries):
            return assoc_mul(self, other)
        other = Fraction(other)
        if other == 0:
            return AssocSeries.zero(self.max_degree, self.alphabet)
        return AssocSeries._raw({w: c * other for w, c in self.terms.items()}, self.max_degree, self.alphabet)

    def __rmul__(self, scalar):
        return self.__mul__(scalar)

    def __eq__(self, other) -> bool:
        if not isinstance(other, AssocSeries):
            return NotImplemented
        if self.alphabet != other.alphabet:
            return False
        n = min(self.max_degree, other.max_degree)
        a = {w: c for w, c in self.terms.items() if len(w) <= n}
        b = {w: c for w, c in other.terms.items() if len(w) <= n}
        return a == b

    __hash__ = None  # type: ignore[assignment]

    def __iter__(self) -> Iterator[Tuple[str, Fraction]]:
        return iter(sorted(self.terms.items(), key=lambda kv: (len(kv[0]), kv[0])))

    def __repr__(self) -> str:
        if not self.terms:
            return f"AssocSeries(0, max_degree={self.max_degree})"
        body = " + ".join(f"{c}*{w or '1'}" for w, c in self)
        return f"AssocSeries({body}, max_degree={self.max_degree})"


def _accumulate(out: Dict[str, Fraction], terms: Mapping[str, Fraction], scale, n: int) -> None:
    for w, c in terms.items():
        if len(w) > n:
            continue
        v = out.get(w, 0) + scale * c
        if v:
            out[w] = v
        else:
            out.pop(w, None)


def assoc_mul(a: AssocSeries, b: AssocSeries, maxdeg: int | None = None) -> AssocSeries:
    """Concatenation product, exact through ``maxdeg`` (default: the smaller truncation)."""
    a._check(b)
    n = min(a.max_degree, b.max_degree) if maxdeg is None else min(maxdeg, a.max_degree, b.max_degree)
    out: Dict[str, Fraction] = defaultdict(Fraction)
    by_len: Dict[int, list] = defaultdict(list)
    for w, c in b.terms.items():
        by_len[len(w)].append((w, c))
    for u, cu in a.terms.items():
        room = n - len(u)
        if room < 0:
            continue
        for k, items in by_len.items():
            if k > room:
                continue
            for v, cv in items:
                out[u + v] += cu * cv
    return AssocSeries._raw({w: c for w, c in out.items() if c}, n, a.alphabet)


def assoc_exp(a: AssocSeries, maxdeg: int | None = None) -> AssocSeries:
    if a.constant_term != 0:
        raise ValueError("exp requires a series without constant term")
    n = a.max_degree if maxdeg is None else min(maxdeg, a.max_degree)
    a = a.truncate(n)
    result = AssocSeries.one(n, a.alphabet)
    power = AssocSeries.one(n, a.alphabet)
    k = 1
    while True:
        power = assoc_mul(power, a, n) * Fraction(1, k)
        if power.is_zero():
            break
        result = result + power
        k += 1
    return result


def assoc_log(u: AssocSeries, maxdeg: int | None = None) -> AssocSeries:
    if u.constant_term != 1:
        raise ValueError("log requires constant term 1")
    n = u.max_degree if maxdeg is None else min(maxdeg, u.max_degree)
    z = u.truncate(n) - AssocSeries.one(n, u.alphabet)
    result = AssocSeries.zero(n, u.alphabet)
    power = AssocSeries.one(n, u.alphabet)
    m = 1
    while True:
        power = assoc_mul(power, z, n)
        if power.is_zero():
            break
        result = result + power * Fraction((-1) ** (m - 1), m)
        m += 1
    return result


def least_rotation(word: str) -> str:
    return min(word[i:] + word[:i] for i in range(len(word)))


class CyclicSeries:
    """Rational combination of necklaces (cyclic words) in the ad-letters.

    Keys are canonical: each is the lexicographically least rotation of itself.
    The empty necklace is never stored.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[str, Fraction | int] | None = None):
        clean: Dict[str, Fraction] = {}
        for w, c in (terms or {}).items():
            if not w:
                raise ValueError("constant terms cannot enter a cyclic series")
            key = least_rotation(w)
            v = clean.get(key, 0) + Fraction(c)
            if v:
                clean[key] = v
            else:
                clean.pop(key, None)
        self.terms = clean

    def coefficient(self, necklace: str) -> Fraction:
        return self.terms.get(least_rotation(necklace), Fraction(0))

    def degree_part(self, n: int) -> "CyclicSeries":
        return CyclicSeries({w: c for w, c in self.terms.items() if len(w) == n})

    def truncate(self, n: int) -> "CyclicSeries":
        return CyclicSeries({w: c for w, c in self.terms.items() if len(w) <= n})

    def degrees(self) -> list:
        return sorted({len(w) for w in self.terms})

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "CyclicSeries") -> "CyclicSeries":
        out = dict(self.terms)
        _accumulate(out, other.terms, 1, 1 << 30)
        return CyclicSeries._raw(out)

    def __sub__(self, other: "CyclicSeries") -> "CyclicSeries":
        out = dict(self.terms)
        _accumulate(out, other.terms, -1, 1 << 30)
        return CyclicSeries._raw(out)

    def __neg__(self) -> "CyclicSeries":
        return CyclicSeries._raw({w: -c for w, c in self.terms.items()})

    def __mul__(self, scalar) -> "CyclicSeries":
        scalar = Fraction(scalar)
        if scalar == 0:
            return CyclicSeries()
        return CyclicSeries._raw({w: c * scalar for w, c in self.terms.items()})

    __rmul__ = __mul__

    @classmethod
    def _raw(cls, terms: Dict[str, Fraction]) -> "CyclicSeries":
        obj = cls.__new__(cls)
        obj.terms = terms
        return obj

    def __eq__(self, other) -> bool:
        if not isinstance(other, CyclicSeries):
            return NotImplemented
        return self.terms == other.terms

    __hash__ = None  # type: ignore[assignment]

    def __iter__(self) -> Iterator[Tuple[str, Fraction]]:
        return iter(sorted(self.terms.items(), key=lambda kv: (len(kv[0]), kv[0])))

    def __repr__(self) -> str:
        if not self.terms:
            return "CyclicSeries(0)"
        return "CyclicSeries(" + " + ".join(f"{c}*({w})" for w, c in self) + ")"


def cyclic_reduce(a: AssocSeries | Mapping[str, Fraction]) -> CyclicSeries:
    """Map every word to its necklace and sum rotation-equivalent coefficients.

    The constant term must be zero; callers cancel it before reducing.
    """
    if isinstance(a, AssocSeries):
        if a.alphabet != AD_LETTERS:
            raise AlphabetError(f"cyclic reduction is defined on {AD_LETTERS!r}, got {a.alphabet!r}")
        terms = a.terms
    else:
        terms = a
    if terms.get("", 0) != 0:
        raise ValueError("nonzero constant term: tr(1) is not universal")
    return CyclicSeries({w: c for w, c in terms.items() if w})


def words(n: int, alphabet: str = GENERATORS) -> Iterable[str]:
    """All words of length ``n`` in lexicographic order."""
    if n == 0:
        yield ""
        return
    for w in words(n - 1, alphabet):
        for a in alphabet:
            yield w + a
