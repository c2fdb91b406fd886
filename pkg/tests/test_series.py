import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hardyops.errors import DegreeExceedsWeights, SpaceMismatch
from hardyops.series import (AffineMap, TruncatedEntireFunction, compose_affine, differentiate,
                             evaluate, inner_product, kernel, log_norm, monomial, multiply, norm,
                             polynomial, powers)
from hardyops.weights import fock_weights, scale_weights, table_weights

XI = fock_weights(64)
seeds = st.integers(min_value=0, max_value=2 ** 32 - 1)


def random_function(rng, degree, xi=XI):
    return TruncatedEntireFunction(rng.standard_normal(degree + 1) + 1j * rng.standard_normal(degree + 1), xi)


def random_affine(rng, rmax=1.0):
    a = rmax * math.sqrt(rng.random()) * np.exp(2j * np.pi * rng.random())
    b = rmax * rng.random() * np.exp(2j * np.pi * rng.random())
    return AffineMap(a, b)


def test_construction_checks_degree():
    with pytest.raises(DegreeExceedsWeights):
        TruncatedEntireFunction(np.ones(6), fock_weights(4))
    f = polynomial([], XI)
    assert f.degree_bound == 0 and f.coeffs[0] == 0


def test_inner_product_examples():
    z = monomial(1, XI)
    one = polynomial([1], XI)
    assert inner_product(z, z, XI) == 1
    assert inner_product(one, z, XI) == 0
    assert inner_product(polynomial([1, 2], XI), polynomial([0, 3], XI), XI) == 2 * 3 * 1


def test_norm_examples():
    assert norm(polynomial([0], XI)) == 0
    assert norm(monomial(2, XI)) == pytest.approx(math.sqrt(2), rel=1e-15)
    assert norm(polynomial([1, 1], XI)) == pytest.approx(math.sqrt(2), rel=1e-15)
    assert log_norm(polynomial([0], XI)) == -math.inf
    assert log_norm(monomial(2, XI)) == pytest.approx(0.5 * math.log(2))


def test_log_norm_survives_large_degrees():
    xi = fock_weights(300)
    f = monomial(300, xi)
    assert log_norm(f) == pytest.approx(0.5 * math.lgamma(301), rel=1e-14)


def test_evaluate_examples():
    assert evaluate(monomial(2, XI), 3) == 9
    assert evaluate(polynomial([1, 1, 1], XI), 0) == 1


def test_kernel_examples():
    assert kernel(0, XI, 3).coeffs.tolist() == [1, 0, 0, 0]
    np.testing.assert_allclose(kernel(1, XI, 2).coeffs, [1, 1, 0.5])
    np.testing.assert_allclose(kernel(2j, XI, 2).coeffs, [1, -2j, -2])


def test_kernel_matches_termwise_formula():
    p = 1.3 - 0.4j
    expected = [np.conj(p) ** n / math.factorial(n) for n in range(20)]
    np.testing.assert_allclose(kernel(p, XI, 19).coeffs, expected, rtol=1e-13)


def test_differentiate_examples():
    np.testing.assert_array_equal(differentiate(monomial(3, XI), 1).coeffs, [0, 0, 3])
    for n in range(8):
        d = differentiate(monomial(n, XI), n)
        assert d.coeffs.tolist() == [math.factorial(n)]
    np.testing.assert_array_equal(differentiate(polynomial([1, 1, 1, 1], XI), 2).coeffs, [2, 6])
    assert differentiate(monomial(1, XI), 2).coeffs.tolist() == [0]
    with pytest.raises(ValueError):
        differentiate(monomial(1, XI), -1)


def test_compose_affine_examples():
    np.testing.assert_allclose(compose_affine(monomial(2, XI), AffineMap(1, 1)).coeffs, [1, 2, 1])
    mu = 0.3 + 0.8j
    for n in range(10):
        got = compose_affine(monomial(n, XI), AffineMap(mu)).coeffs
        expected = np.zeros(n + 1, complex)
        expected[n] = mu ** n
        np.testing.assert_allclose(got, expected, rtol=1e-14, atol=0)


def _abs_expansion(b, N):
    # |binomial expansion matrix| of f -> f(z + b)
    return np.array([[math.comb(n, k) * abs(b) ** (n - k) if k <= n else 0.0
                      for n in range(N + 1)] for k in range(N + 1)])


@pytest.mark.parametrize("b", [1, 1 + 1j, -3])
def test_translation_round_trip(b):
    N = 12
    f = random_function(np.random.default_rng(3), N)
    back = compose_affine(compose_affine(f, AffineMap(1, -b)), AffineMap(1, b))
    # exact in exact arithmetic; in floating point the error is bounded by the
    # usual matrix-vector rounding bound through both expansions
    eps = np.finfo(float).eps
    bound = 4 * (N + 1) * eps * (_abs_expansion(b, N) @ _abs_expansion(b, N) @ np.abs(f.coeffs))
    assert np.all(np.abs(back.coeffs - f.coeffs) <= bound)
    if abs(b) <= 1:
        np.testing.assert_allclose(back.coeffs, f.coeffs, rtol=0, atol=1e-10 * np.abs(f.coeffs).max())


def test_compose_affine_exact_binomials():
    # integer symbol: every coefficient of (2z + 3)^n expansion is an exact integer
    n = 20
    got = compose_affine(monomial(n, XI), AffineMap(2, 3)).coeffs
    expected = [math.comb(n, k) * 2 ** k * 3 ** (n - k) for k in range(n + 1)]
    np.testing.assert_allclose(got.real, expected, rtol=1e-13)


def test_compose_affine_degenerate_symbol_gives_constant():
    f = polynomial([1, 2, 3], XI)
    got = compose_affine(f, AffineMap(0, 2))
    assert got.coeffs[0] == pytest.approx(evaluate(f, 2))
    assert np.all(got.coeffs[1:] == 0)


def test_multiply_examples():
    g = polynomial([1, 2j, 3], XI)
    prod, dropped = multiply(polynomial([1], XI), g, 2)
    np.testing.assert_array_equal(prod.coeffs, g.coeffs)
    assert dropped == 0
    z = monomial(1, XI)
    prod, dropped = multiply(z, z, 2)
    np.testing.assert_array_equal(prod.coeffs, [0, 0, 1])
    assert dropped == 0
    prod, dropped = multiply(monomial(2, XI), monomial(2, XI), 3)
    assert not np.any(prod.coeffs)
    assert dropped == pytest.approx(math.sqrt(24), rel=1e-14)


def test_multiply_refuses_unweighable_tail():
    xi = fock_weights(4)
    with pytest.raises(DegreeExceedsWeights):
        multiply(monomial(3, xi), monomial(3, xi), 4)


def test_mixed_spaces_rejected():
    other = scale_weights(XI, 0.5)
    with pytest.raises(SpaceMismatch):
        multiply(monomial(1, XI), monomial(1, other), 2)
    with pytest.raises(SpaceMismatch):
        monomial(1, XI) + monomial(1, other)


def test_arithmetic():
    f, g = polynomial([1, 2], XI), polynomial([0, 0, 3], XI)
    np.testing.assert_array_equal((f + g).coeffs, [1, 2, 3])
    np.testing.assert_array_equal((f - g).coeffs, [1, 2, -3])
    np.testing.assert_array_equal((-f).coeffs, [-1, -2])
    np.testing.assert_array_equal((2 * f).coeffs, [2, 4])
    assert f(2) == 5
    assert g.degree == 2 and polynomial([0, 0], XI).degree == 0
    assert f.to_dict() == {"degree": 1, "coefficients": [[1.0, 0.0], [2.0, 0.0]]}


def test_powers():
    pw = powers(polynomial([1, 1], XI), 4)
    np.testing.assert_array_equal(pw[4].coeffs, [1, 4, 6, 4, 1])
    with pytest.raises(DegreeExceedsWeights):
        powers(polynomial([0, 0, 1], fock_weights(5)), 3)


@settings(max_examples=50, deadline=None)
@given(seed=seeds)
def test_conjugate_symmetry(seed):
    rng = np.random.default_rng(seed)
    f = random_function(rng, int(rng.integers(0, 40)))
    g = random_function(rng, int(rng.integers(0, 40)))
    lhs, rhs = inner_product(f, g), np.conj(inner_product(g, f))
    assert abs(lhs - rhs) <= 1e-12 * max(abs(lhs), 1e-300) + 1e-300


@settings(max_examples=50, deadline=None)
@given(seed=seeds)
def test_parseval(seed):
    rng = np.random.default_rng(seed)
    f = random_function(rng, int(rng.integers(0, 65)))
    # e_n = z^n / xi_n
    total = 0.0
    for n in range(f.degree_bound + 1):
        e_n = monomial(n, XI) * math.exp(-XI.log_values[n])
        total += abs(inner_product(f, e_n)) ** 2
    assert total == pytest.approx(norm(f) ** 2, rel=1e-10)


@settings(max_examples=80, deadline=None)
@given(seed=seeds, r=st.floats(min_value=0, max_value=4), t=st.floats(min_value=0, max_value=2 * math.pi))
def test_reproducing_property(seed, r, t):
    rng = np.random.default_rng(seed)
    f = random_function(rng, int(rng.integers(0, 65)))
    p = r * np.exp(1j * t)
    value = evaluate(f, p)
    via_kernel = inner_product(f, kernel(p, XI, f.degree_bound))
    assert abs(value - via_kernel) <= 1e-10 * (1 + abs(value))


@settings(max_examples=30, deadline=None)
@given(seed=seeds)
def test_identity_symbol(seed):
    f = random_function(np.random.default_rng(seed), 30)
    np.testing.assert_array_equal(compose_affine(f, AffineMap(1, 0)).coeffs, f.coeffs)


@settings(max_examples=50, deadline=None)
@given(seed=seeds, p=st.integers(min_value=0, max_value=12))
def test_derivative_linearity(seed, p):
    rng = np.random.default_rng(seed)
    f, g = random_function(rng, 10), random_function(rng, 10)
    alpha, beta = complex(*rng.standard_normal(2)), complex(*rng.standard_normal(2))
    lhs = differentiate(alpha * f + beta * g, p).coeffs
    rhs = (alpha * differentiate(f, p) + beta * differentiate(g, p)).coeffs
    np.testing.assert_allclose(lhs, rhs, rtol=1e-13, atol=1e-13 * max(1, np.abs(lhs).max(initial=0)))


@settings(max_examples=50, deadline=None)
@given(seed=seeds)
def test_composition_associativity(seed):
    rng = np.random.default_rng(seed)
    f = random_function(rng, int(rng.integers(0, 21)))
    phi1, phi2 = random_affine(rng), random_affine(rng)
    nested = compose_affine(compose_affine(f, phi2), phi1).coeffs
    # (f o phi2) o phi1 = f o (phi2 o phi1), and phi2 o phi1 = (a1 a2, a2 b1 + b2)
    merged_map = AffineMap(phi1.a * phi2.a, phi2.a * phi1.b + phi2.b)
    assert phi2.after(phi1) == merged_map
    merged = compose_affine(f, merged_map).coeffs
    scale = np.abs(merged).max()
    np.testing.assert_allclose(nested, merged, rtol=0, atol=1e-10 * max(scale, 1e-300))


@settings(max_examples=30, deadline=None)
@given(seed=seeds)
def test_evaluate_agrees_with_composition(seed):
    rng = np.random.default_rng(seed)
    f = random_function(rng, 15)
    phi = random_affine(rng)
    z = complex(*rng.standard_normal(2))
    assert evaluate(compose_affine(f, phi), z) == pytest.approx(evaluate(f, phi(z)), rel=1e-10, abs=1e-10)


def test_table_space_inner_product():
    xi = table_weights([1, 2, 3])
    f, g = polynomial([1, 1, 1], xi), polynomial([1, 1j, 2], xi)
    assert inner_product(f, g) == pytest.approx(1 + 4 * (-1j) + 9 * 2)
