from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from liekv.concrete_lie import get_algebra
from liekv.enveloping import (
    SymElement,
    UEAElement,
    ad_derivation,
    apply_constant_coefficient,
    basis_element,
    casimir,
    check_duflo_multiplicative,
    duflo_map,
    gutt_star,
    is_invariant,
    pbw_normal_form,
    sqrt_j_polynomial,
    symmetrize,
    uea_commutator,
    uea_mul,
    unsymmetrize,
)

SL2 = get_algebra("sl2")
HEIS = get_algebra("heisenberg")
ONE = SymElement({(): 1})


def sym_elements(dim: int, maxdeg: int = 3, max_terms: int = 3):
    key = st.integers(0, maxdeg).flatmap(lambda n: st.lists(st.integers(0, dim - 1), min_size=n, max_size=n))
    return st.dictionaries(key.map(lambda k: tuple(sorted(k))), st.integers(-3, 3), max_size=max_terms).map(SymElement)


def U(terms):
    return UEAElement(terms)


def test_pbw_examples():
    assert pbw_normal_form((0, 1, 1, 2), SL2) == U({(0, 1, 1, 2): 1})
    # f e = e f - z
    assert pbw_normal_form((1, 0), HEIS) == U({(0, 1): 1, (2,): -1})
    # e h = h e - 2e
    assert pbw_normal_form((1, 0), SL2) == U({(0, 1): 1, (1,): -2})
    # f e = e f - h
    assert pbw_normal_form((2, 1), SL2) == U({(1, 2): 1, (0,): -1})


def test_uea_associative_on_words():
    a, b, c = pbw_normal_form((2,), SL2), pbw_normal_form((1, 0), SL2), pbw_normal_form((2, 2), SL2)
    assert uea_mul(uea_mul(a, b, SL2), c, SL2) == uea_mul(a, uea_mul(b, c, SL2), SL2)


def test_symmetrize_examples():
    for i in range(3):
        assert symmetrize(basis_element(i) ** 3, SL2) == U({(i, i, i): 1})
    ef = basis_element(0) * basis_element(1)
    assert symmetrize(ef, HEIS) == U({(0, 1): 1, (2,): Fraction(-1, 2)})


@given(sym_elements(3))
def test_unsymmetrize_inverts(p):
    assert unsymmetrize(symmetrize(p, SL2), SL2) == p


@given(sym_elements(3), sym_elements(3), sym_elements(3))
def test_star_associative_sl2(u, v, w):
    assert gutt_star(gutt_star(u, v, SL2), w, SL2) == gutt_star(u, gutt_star(v, w, SL2), SL2)


@given(sym_elements(3), sym_elements(3), sym_elements(3))
def test_star_associative_heisenberg(u, v, w):
    assert gutt_star(gutt_star(u, v, HEIS), w, HEIS) == gutt_star(u, gutt_star(v, w, HEIS), HEIS)


def test_star_examples():
    e, f = basis_element(1), basis_element(2)
    # e * f = ef + 1/2 [e, f] = ef + h/2
    assert gutt_star(e, f, SL2) == e * f + basis_element(0).scale(Fraction(1, 2))
    assert gutt_star(ONE, e * f, SL2) == e * f
    assert gutt_star(e, e, SL2) == e * e


@given(sym_elements(2))
def test_star_commutative_for_abelian(p):
    ab = get_algebra("abelian")
    q = SymElement({(0, 1): 2, (1,): 1})
    assert gutt_star(p, q, ab) == p * q


@pytest.mark.parametrize("i", range(3))
@pytest.mark.parametrize("j", range(3))
def test_star_antisymmetric_part_is_half_bracket(i, j):
    a, b = basis_element(i), basis_element(j)
    anti = gutt_star(a, b, SL2) - gutt_star(b, a, SL2)
    bracket = SymElement({(k,): c for k, c in SL2.bracket_exact(i, j).items()})
    assert anti == bracket


@given(sym_elements(3))
def test_symmetrize_intertwines_ad(p):
    for i in range(3):
        lhs = symmetrize(ad_derivation(i, p, SL2), SL2)
        rhs = uea_commutator(pbw_normal_form((i,), SL2), symmetrize(p, SL2), SL2)
        assert lhs == rhs


def test_invariance_checker():
    c = casimir(SL2)
    assert c == SymElement({(0, 0): Fraction(1, 8), (1, 2): Fraction(1, 2)})
    assert is_invariant(c, SL2)
    assert is_invariant(basis_element(2) ** 3, HEIS)
    assert not is_invariant(basis_element(1) * basis_element(0), SL2)


def test_sqrt_j_on_sl2():
    # on the h-line j^(1/2) = sinh s / s = 1 + s^2/6 + s^4/120
    p = sqrt_j_polynomial(SL2, 4)
    assert p.terms[()] == 1
    assert p.terms[(0, 0)] == Fraction(1, 6)
    assert p.terms[(0, 0, 0, 0)] == Fraction(1, 120)
    rng = np.random.default_rng(0)
    from liekv.concrete_lie import j_value

    for _ in range(5):
        x = rng.uniform(-0.05, 0.05, 3)
        approx = sum(float(c) * np.prod([x[i] for i in k]) for k, c in p.terms.items())
        assert abs(approx - np.sqrt(j_value(SL2, x))) <= 1e-9


def test_sqrt_j_non_unimodular_has_linear_term():
    aff = get_algebra("aff1")
    # tr(ad X) = x_a, so j^(1/2) = 1 - x_a/4 + ...
    assert sqrt_j_polynomial(aff, 2).terms[(0,)] == Fraction(-1, 4)


def test_constant_coefficient_operator():
    # d/de0 d/de0 applied to e0^3 e1 = 6 e0 e1
    op = SymElement({(0, 0): 1})
    assert apply_constant_coefficient(op, SymElement({(0, 0, 0, 1): 1})) == SymElement({(0, 1): 6})
    assert apply_constant_coefficient(op, SymElement({(1,): 1})).is_zero()


def test_duflo_low_degree_is_symmetrization():
    p = SymElement({(): 3, (0,): 1, (2,): -2})
    assert duflo_map(p, SL2) == symmetrize(p, SL2)
    ab = get_algebra("abelian")
    q = SymElement({(0, 0, 1): 1})
    assert duflo_map(q, ab) == symmetrize(q, ab)


def test_duflo_casimir_shift_snapshot():
    c = casimir(SL2)
    shift = duflo_map(c, SL2) - symmetrize(c, SL2)
    assert shift == U({(): Fraction(1, 8)})


@pytest.mark.parametrize("a,b", [(1, 1), (1, 2), (2, 1)])
def test_duflo_multiplicative_on_casimir_powers(a, b):
    c = casimir(SL2)
    ok, res = check_duflo_multiplicative(c**a, c**b, SL2)
    assert ok and res.is_zero()


def test_symmetrization_alone_not_multiplicative():
    c = casimir(SL2)
    ok, res = check_duflo_multiplicative(c, c, SL2, use_duflo=False)
    assert not ok and not res.is_zero()


@pytest.mark.parametrize("a,b", [(1, 1), (2, 3)])
def test_heisenberg_center(a, b):
    z = basis_element(2)
    ok, _ = check_duflo_multiplicative(z**a, z**b, HEIS)
    assert ok


def test_non_invariant_rejected():
    with pytest.raises(ValueError):
        check_duflo_multiplicative(basis_element(1), casimir(SL2), SL2)


def test_so3_casimir():
    so3 = get_algebra("so3")
    c = casimir(so3)
    assert is_invariant(c, so3)
    assert check_duflo_multiplicative(c, c, so3)[0]


def test_degenerate_killing_form():
    with pytest.raises(ValueError):
        casimir(HEIS)
