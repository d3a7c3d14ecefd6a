from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given

from liekv.free_algebra import (
    AlphabetError,
    AssocSeries,
    CyclicSeries,
    assoc_exp,
    assoc_log,
    assoc_mul,
    cyclic_reduce,
    least_rotation,
    words,
)

from conftest import assoc_series


def A(terms, n=4, alphabet="XY"):
    return AssocSeries(terms, n, alphabet)


def test_unit_degree_concatenation():
    assert assoc_mul(A({"X": 1}), A({"Y": 1})) == A({"XY": 1})


def test_distributivity():
    assert assoc_mul(A({"": 1, "X": 1}), A({"": 1, "Y": 1})) == A({"": 1, "X": 1, "Y": 1, "XY": 1})


def test_commutator_times_letter():
    assert assoc_mul(A({"XY": 1, "YX": -1}), A({"X": 1})) == A({"XYX": 1, "YXX": -1})


def test_truncation_drops_high_words():
    prod = assoc_mul(A({"XY": 1}), A({"XY": 1}), 3)
    assert prod.is_zero() and prod.max_degree == 3


def test_alphabet_mismatch_rejected():
    with pytest.raises(AlphabetError):
        assoc_mul(A({"X": 1}), A({"x": 1}, alphabet="xy"))
    with pytest.raises(AlphabetError):
        A({"Xs": 1})


def test_exp_and_log_values():
    x = AssocSeries.letter("X", 5)
    assert assoc_log(assoc_exp(x)) == x
    prod = assoc_exp(x) * assoc_exp(AssocSeries.letter("Y", 5))
    assert prod.coefficient("XY") == 1
    assert prod.coefficient("XXY") == Fraction(1, 2)
    assert prod.coefficient("YX") == 0


def test_exp_log_constant_term_guards():
    with pytest.raises(ValueError):
        assoc_exp(A({"": 1}))
    with pytest.raises(ValueError):
        assoc_log(A({"X": 1}))


@given(assoc_series(4), assoc_series(4), assoc_series(4))
def test_associativity(a, b, c):
    assert assoc_mul(assoc_mul(a, b), c) == assoc_mul(a, assoc_mul(b, c))


@given(assoc_series(5, constant=False))
def test_exp_of_negative_is_inverse(a):
    assert assoc_exp(a) * assoc_exp(-a) == AssocSeries.one(5)


@given(assoc_series(5, constant=False))
def test_log_exp_roundtrip(a):
    assert assoc_log(assoc_exp(a)) == a


def test_cyclic_reduce_examples():
    assert cyclic_reduce(A({"xy": 1, "yx": -1}, alphabet="xy")).is_zero()
    assert cyclic_reduce(A({"xxy": 1, "yxx": 1}, alphabet="xy")) == CyclicSeries({"xxy": 2})
    assert cyclic_reduce(A({"xyxy": 1}, alphabet="xy")).terms == {"xyxy": 1}


def test_cyclic_reduce_guards():
    with pytest.raises(ValueError):
        cyclic_reduce(A({"": 1}, alphabet="xy"))
    with pytest.raises(AlphabetError):
        cyclic_reduce(A({"X": 1}))


@given(assoc_series(3, "xy", constant=False), assoc_series(3, "xy", constant=False))
def test_cyclic_reduce_kills_commutators(a, b):
    assert cyclic_reduce(assoc_mul(a, b, 6) - assoc_mul(b, a, 6)).is_zero()


@given(assoc_series(4, "xy", constant=False), assoc_series(4, "xy", constant=False))
def test_cyclic_reduce_is_linear(a, b):
    assert cyclic_reduce(a + b * 3) == cyclic_reduce(a) + cyclic_reduce(b) * 3


def test_necklace_keys_are_least_rotations():
    c = CyclicSeries({w: 1 for w in words(5, "xy")})
    assert all(least_rotation(k) == k for k in c.terms)
    # 2^5 words, 8 necklaces of length 5 over two letters
    assert len(c.terms) == 8
    assert sum(c.terms.values()) == 32
    with pytest.raises(ValueError):
        CyclicSeries({"": 1})
