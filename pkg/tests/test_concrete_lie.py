from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.linalg import expm

from liekv.bch import bch
from liekv.concrete_lie import (
    BUNDLED,
    GuardError,
    ad_matrix,
    b_trace,
    check_density,
    check_eq10,
    check_eq11,
    check_eq19,
    check_jq,
    check_trace_bridge,
    complex_step_jacobian,
    density_value,
    divergence_numeric,
    evaluate_cyclic,
    evaluate_lie_series,
    get_algebra,
    j_value,
    matrix_exp,
    matrix_function,
    parse_algebra,
    q_value,
    sample_points,
    tail_estimate,
    trace_rhs_numeric,
)
from liekv.free_algebra import CyclicSeries
from liekv.free_lie import LieSeries
from liekv.kv_equations import trace_rhs
from liekv.kv_solution import KVPair

NONTRIVIAL = ["heisenberg", "aff1", "sl2", "so3"]
coords = st.lists(st.floats(-0.05, 0.05), min_size=3, max_size=3).map(np.array)


def test_parse_and_jacobi_check():
    alg = parse_algebra("3\n# heisenberg\n1 2 3 1\n2 1 3 -1\n")
    assert alg.dim == 3 and alg.c(0, 1, 2) == 1
    with pytest.raises(ValueError, match="antisymmetric"):
        parse_algebra("2\n1 2 2 1\n")
    # antisymmetric but not Lie: [e1,e2]=e3, [e2,e3]=e2, [e1,e3]=0
    with pytest.raises(ValueError, match="Jacobi"):
        parse_algebra("3\n1 2 3 1\n2 1 3 -1\n2 3 2 1\n3 2 2 -1\n")
    with pytest.raises(ValueError):
        parse_algebra("2\n1 2 5 1\n2 1 5 -1\n")


def test_load_algebra_file(tmp_path):
    from liekv.concrete_lie import load_algebra

    path = tmp_path / "aff.txt"
    path.write_text("2\n1 2 2 1/1\n2 1 2 -1\n")
    alg = load_algebra(path)
    assert alg.name == "aff" and alg.constants == get_algebra("aff1").constants


def test_ad_matrix_examples():
    assert not ad_matrix(get_algebra("abelian"), np.array([1.0, 2.0])).any()
    a = ad_matrix(get_algebra("heisenberg"), np.array([1.0, 0, 0]))
    expected = np.zeros((3, 3))
    expected[2, 1] = 1.0  # f -> z
    assert np.array_equal(a, expected)
    h = ad_matrix(get_algebra("sl2"), np.array([1.0, 0, 0]))
    assert np.array_equal(h, np.diag([0.0, 2.0, -2.0]))


def test_j_values():
    assert j_value(get_algebra("abelian"), np.array([0.3, -0.2])) == 1.0
    rng = np.random.default_rng(1)
    for _ in range(10):
        assert abs(j_value(get_algebra("heisenberg"), rng.uniform(-1, 1, 3)) - 1) <= 1e-12
    for s in (0.01, 0.05, 0.1, 0.5):
        assert abs(j_value(get_algebra("sl2"), np.array([s, 0, 0])) - (np.sinh(s) / s) ** 2) <= 1e-10


@pytest.mark.parametrize("name", list(BUNDLED))
def test_j_equals_q_times_exponential(name):
    alg = get_algebra(name)
    rep = check_jq(alg, sample_points(alg, 20, 3), seed=3)
    assert rep.passed, rep.max_rel_error


def test_matrix_function_against_scipy_expm():
    rng = np.random.default_rng(0)
    a = rng.uniform(-1, 1, (4, 4))
    assert np.allclose(matrix_exp(a), expm(a), rtol=1e-12, atol=1e-13)


def test_matrix_function_guard():
    with pytest.raises(GuardError):
        matrix_function(lambda k: 1.0, np.eye(2) * 3.0, radius=1.0)


def test_evaluate_generator_and_nilpotent_bch():
    alg = get_algebra("heisenberg")
    x, y = np.array([0.02, 0.03, -0.01]), np.array([-0.04, 0.01, 0.05])
    assert np.array_equal(evaluate_lie_series(LieSeries.generator("X", 3), alg, x, y), x)
    z = evaluate_lie_series(bch(8), alg, x, y)
    assert np.allclose(z, x + y + 0.5 * alg.bracket(x, y), rtol=0, atol=1e-16)
    with pytest.raises(GuardError):
        evaluate_lie_series(bch(3), alg, 10 * x, y, guard=0.1)


@pytest.mark.parametrize("name", ["sl2", "so3", "aff1"])
def test_exp_ad_z_is_product(name):
    alg = get_algebra(name)
    for x, y in sample_points(alg, 10, 11, radius=0.05):
        z = evaluate_lie_series(bch(10), alg, x, y)
        lhs = expm(ad_matrix(alg, z))
        rhs = expm(ad_matrix(alg, x)) @ expm(ad_matrix(alg, y))
        assert np.max(np.abs(lhs - rhs)) <= 1e-8


def test_tail_estimate_small():
    alg = get_algebra("sl2")
    x, y = sample_points(alg, 1, 2)[0]
    assert tail_estimate(bch(10), alg, x, y) < 1e-10


def test_density_examples():
    alg = get_algebra("sl2")
    x = np.array([0.03, -0.02, 0.01])
    assert abs(density_value(alg, x, np.zeros(3)) - 1) <= 1e-14
    h = get_algebra("heisenberg")
    for x, y in sample_points(h, 5, 4):
        assert abs(density_value(h, x, y) - 1) <= 1e-10


@pytest.mark.parametrize("name", list(BUNDLED))
def test_density_symmetric(name):
    alg = get_algebra(name)
    assert check_density(alg, sample_points(alg, 10, 5), seed=5).passed


def test_sample_points_are_seeded_and_bounded():
    alg = get_algebra("so3")
    a, b = sample_points(alg, 5, 9), sample_points(alg, 5, 9)
    assert all(np.array_equal(p[0], q[0]) and np.array_equal(p[1], q[1]) for p, q in zip(a, b))
    assert all(np.linalg.norm(v) <= 0.1 for pair in a for v in pair)


def test_flow_equation_abelian_exact(kv_pair):
    alg = get_algebra("abelian")
    rep = check_eq10(alg, kv_pair, sample_points(alg, 5, 1))
    assert rep.passed and rep.max_abs_error == 0.0


@pytest.mark.parametrize("name", NONTRIVIAL)
def test_flow_equation(kv_pair, name):
    alg = get_algebra(name)
    rep = check_eq10(alg, kv_pair, sample_points(alg, 5, 2))
    assert rep.passed, rep.max_rel_error


def test_flow_equation_fails_for_wrong_pair():
    # the zero pair does not solve the Lie-series equation, so the flow equation must fail
    alg = get_algebra("sl2")
    rep = check_eq10(alg, KVPair.zero(10), sample_points(alg, 3, 2))
    assert not rep.passed


def test_jacobian_flow_closed_form_on_sl2_h_line():
    from liekv.concrete_lie import eq11_sides

    alg = get_algebra("sl2")
    s = 0.08
    lhs, rhs = eq11_sides(alg, np.array([s, 0, 0]))
    # d/dt log(sinh(ts)/(ts)) at t = 1/2
    t = 0.5
    closed = s / np.tanh(t * s) - 1 / t
    assert abs(lhs - closed) <= 1e-8 * abs(closed)
    assert abs(rhs - closed) <= 1e-12


@pytest.mark.parametrize("name", ["abelian", "heisenberg"])
def test_jacobian_flow_trivial_algebras(name):
    alg = get_algebra(name)
    for x, _ in sample_points(alg, 3, 1):
        assert abs(b_trace(alg, x, 0.5)) <= 1e-15


@pytest.mark.parametrize("name", NONTRIVIAL)
def test_jacobian_flow(name):
    alg = get_algebra(name)
    assert check_eq11(alg, sample_points(alg, 5, 2)).passed


@pytest.mark.parametrize("name", NONTRIVIAL)
def test_density_flow(kv_pair, name):
    alg = get_algebra(name)
    rep = check_eq19(alg, kv_pair, sample_points(alg, 5, 2))
    assert rep.passed, rep.max_rel_error


def test_heisenberg_trace_term_vanishes(kv_pair):
    alg = get_algebra("heisenberg")
    for x, y in sample_points(alg, 5, 8):
        assert abs(divergence_numeric(alg, kv_pair, x, y, 0.5)) <= 1e-12


def test_complex_step_jacobian_is_exact_for_polynomials():
    f = lambda v: np.array([v[0] ** 3 * v[1], v[1] ** 2])
    x = np.array([0.3, -0.7])
    assert np.allclose(complex_step_jacobian(f, x), [[3 * 0.09 * -0.7, 0.027], [0, -1.4]], rtol=1e-15)


def test_evaluate_cyclic_matches_trace_function():
    alg = get_algebra("so3")
    for x, y in sample_points(alg, 5, 6):
        universal = evaluate_cyclic(trace_rhs(10), alg, x, y)
        assert abs(universal - trace_rhs_numeric(alg, x, y, 10)) <= 1e-8 * abs(universal)
    assert evaluate_cyclic(CyclicSeries({"xy": 1}), alg, x, y) == pytest.approx(
        np.trace(ad_matrix(alg, x) @ ad_matrix(alg, y)), rel=1e-15
    )


@pytest.mark.parametrize("name", list(BUNDLED))
def test_trace_bridge(kv_pair, name):
    alg = get_algebra(name)
    rep = check_trace_bridge(alg, kv_pair, sample_points(alg, 4, 1), range(1, 8))
    assert rep.passed, rep.max_rel_error


@given(coords, coords)
def test_evaluation_is_bilinear_in_bracket(x, y):
    alg = get_algebra("sl2")
    xy = LieSeries({"XY": 1}, 2)
    assert np.allclose(evaluate_lie_series(xy, alg, x, y), alg.bracket(x, y), atol=1e-18)
    assert np.allclose(evaluate_lie_series(xy * Fraction(2), alg, x, y), 2 * alg.bracket(x, y), atol=1e-18)


def test_from_matrices_reproduces_sl2_and_rejects_bad_spans():
    from liekv.concrete_lie import from_matrices

    alg = from_matrices("m", [[[1, 0], [0, -1]], [[0, 1], [0, 0]], [[0, 0], [1, 0]]])
    assert alg.constants == get_algebra("sl2").constants
    with pytest.raises(ValueError, match="closed"):
        from_matrices("m", [[[0, 1], [0, 0]], [[0, 0], [1, 0]]])
    with pytest.raises(ValueError, match="dependent"):
        from_matrices("m", [[[0, 1], [0, 0]], [[0, 2], [0, 0]]])
