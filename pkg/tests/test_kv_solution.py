from __future__ import annotations

from fractions import Fraction

import pytest

from liekv.free_lie import LieSeries, ad_word, swap_negate
from liekv.kv_solution import (
    KVPair,
    TLieSeries,
    dilate,
    f0_g0,
    f1_integrand,
    prefactor_series,
    psi_series,
)

# Low-order expansion of F0 in ad-monomials x = ad X, y = ad Y
F0_AD_MONOMIALS = [
    ("", Fraction(1, 4)),
    ("x", Fraction(1, 24)),
    ("xx", Fraction(-1, 48)),
    ("yx", Fraction(-1, 48)),
    ("xxx", Fraction(-1, 180)),
    ("yxx", Fraction(-1, 480)),
    ("yyx", Fraction(1, 360)),
]


def from_ad_monomials(items, n):
    total = LieSeries.zero(n)
    for ops, c in items:
        total = total + ad_word(ops, "Y", n) * c
    return total


def test_f0_matches_low_order_expansion():
    f0 = f0_g0(4).F
    expected = from_ad_monomials(F0_AD_MONOMIALS, 4)
    assert f0 == expected
    # nothing computed beyond the listed monomials through degree 4
    assert (f0 - expected).is_zero()


def test_f0_lyndon_coordinates_frozen():
    assert f0_g0(4).F.terms == {
        "Y": Fraction(1, 4),
        "XY": Fraction(1, 24),
        "XXY": Fraction(-1, 48),
        "XYY": Fraction(1, 48),
        "XXXY": Fraction(-1, 180),
        "XXYY": Fraction(1, 480),
        "XYYY": Fraction(1, 360),
    }


def test_g0_is_symmetric_partner():
    p = f0_g0(6)
    assert p.G == swap_negate(p.F)
    assert p.flipped() == p


def test_psi_coefficients():
    assert psi_series(6) == [
        Fraction(1, 2),
        Fraction(1, 6),
        0,
        Fraction(-1, 180),
        0,
        Fraction(1, 5040),
        0,
    ]


def test_prefactor_polynomials():
    r = prefactor_series(3)
    # (1 - e^{-tz})/(1 - e^{-z}) = t + (t - t^2)/2 z + ...
    assert r[0] == (0, 1)
    assert r[1] == (0, Fraction(1, 2), Fraction(-1, 2))
    for j, poly in enumerate(r):
        assert len(poly) <= j + 2
        # at t = 1 the quotient is 1
        assert sum(poly) == (1 if j == 0 else 0)


def test_integrand_at_endpoints():
    n = 5
    integrand = f1_integrand(n)
    # t = 0: the prefactor vanishes
    assert integrand.at(0).is_zero()


def test_dilate_weights_by_degree():
    u = LieSeries({"X": 2, "XY": 3, "XXY": 5}, 3)
    d = dilate(u)
    assert d.terms == {"X": (2,), "XY": (0, 3), "XXY": (0, 0, 5)}
    assert d.at(1) == u
    with pytest.raises(ValueError):
        TLieSeries.scaled_by_degree(u, shift=-2)


def test_tlie_integrate():
    s = TLieSeries({"X": (0, 0, 3)}, 2)
    assert s.integrate(0, 1) == LieSeries({"X": 1}, 2)
    assert s.t_degree() == 2


def test_kv_pair_rejects_constant_and_adds():
    z = KVPair.zero(3)
    assert (z + z).F.is_zero()
    assert z.max_degree == 3
