import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hardyops import operators as op
from hardyops.errors import DegreeExceedsWeights, InsufficientHeadroom, SpaceMismatch
from hardyops.series import (AffineMap, TruncatedEntireFunction, compose_affine, differentiate,
                             inner_product, kernel, monomial, multiply, norm, polynomial)
from hardyops.suites import BUILDERS, oracle_case
from hardyops.weights import fock_weights, scale_weights, table_weights

XI = fock_weights(64)
seeds = st.integers(min_value=0, max_value=2 ** 32 - 1)


def unit(t):
    return complex(np.exp(1j * t))


def random_function(rng, degree, xi=XI):
    return TruncatedEntireFunction(rng.standard_normal(degree + 1) + 1j * rng.standard_normal(degree + 1), xi)


def random_affine(rng):
    a = math.sqrt(rng.random()) * np.exp(2j * np.pi * rng.random())
    b = rng.random() * np.exp(2j * np.pi * rng.random())
    return AffineMap(a, b)


def test_dilation_is_diagonal_powers():
    mu = 0.6 - 0.3j
    m = op.composition_matrix(AffineMap(mu), XI, XI, 10).as_complex()
    np.testing.assert_allclose(m, np.diag(mu ** np.arange(11)), rtol=1e-15, atol=0)


def test_translation_column_fock():
    m = op.composition_matrix(AffineMap(1, 1), XI, XI, 2).as_complex()
    np.testing.assert_allclose(m[:, 2], [1 / math.sqrt(2), 2 / math.sqrt(2), 1], rtol=1e-15)
    # same column through the series module: z^2 -> (z + 1)^2, then to orthonormal coordinates
    c = compose_affine(monomial(2, XI), AffineMap(1, 1)).coeffs
    np.testing.assert_allclose(m[:, 2], c * XI.values[:3] / XI.values[2], rtol=1e-15)


def test_cross_space_dilation_unimodular_diagonal():
    mu = 0.3 - 0.4j
    target = scale_weights(XI, mu)
    d = np.diag(op.composition_matrix(AffineMap(mu), XI, target, 20).as_complex())
    np.testing.assert_allclose(d, (mu / abs(mu)) ** np.arange(21), rtol=1e-13)
    np.testing.assert_allclose(np.abs(d), 1, rtol=1e-13)


def test_pure_composition_upper_triangular():
    rng = np.random.default_rng(0)
    for _ in range(20):
        m = op.composition_matrix(random_affine(rng), XI, XI, 30).entries
        assert np.all(np.tril(m, -1) == 0)


def test_expanding_symbol_warns():
    t = op.composition_matrix(AffineMap(1.5), XI, XI, 5)
    assert t.warnings and "|a|" in t.warnings[0]
    assert not op.composition_matrix(AffineMap(0.5), XI, XI, 5).warnings


def test_multiplier_examples():
    np.testing.assert_array_equal(op.multiplier_matrix(1, XI, 6).as_complex(), np.eye(7))
    m = op.multiplier_matrix([0, 1], XI, 2)
    assert m.entries.shape == (4, 3) and m.headroom_used == 1
    np.testing.assert_allclose(np.diag(m.as_complex(), -1), [1, math.sqrt(2), math.sqrt(3)], rtol=1e-15)
    b = 0.2 + 0.9j
    np.testing.assert_allclose(op.multiplier_matrix(b, XI, 5).as_complex(), b * np.eye(6))


def test_multiplier_needs_headroom():
    with pytest.raises(InsufficientHeadroom):
        op.multiplier_matrix([0, 0, 1], fock_weights(10), 9)


def test_differentiation_examples():
    np.testing.assert_array_equal(op.differentiation_matrix(0, XI, 5).as_complex(), np.eye(6))
    d = op.differentiation_matrix(1, XI, 3).as_complex()
    assert d.shape == (3, 4)
    np.testing.assert_allclose(np.diag(d, 1), np.sqrt([1, 2, 3]), rtol=1e-15)
    e1 = monomial(1, XI)
    assert not np.any(op.apply(op.differentiation_matrix(2, XI, 3), e1).coeffs)
    with pytest.raises(ValueError):
        op.differentiation_matrix(4, XI, 3)


def test_weighted_examples():
    phi = AffineMap(0.3 + 0.2j, 0.5)
    np.testing.assert_array_equal(op.weighted_composition_matrix(1, phi, XI, 8).as_complex(),
                                  op.composition_matrix(phi, XI, XI, 8).as_complex())
    b, mu = unit(0.4), unit(1.1)
    w = op.weighted_composition_matrix(b, AffineMap(mu), XI, 10).as_complex()
    np.testing.assert_allclose(w, b * np.diag(mu ** np.arange(11)), rtol=1e-15, atol=1e-17)
    z = op.weighted_composition_matrix([0, 1], AffineMap(1), XI, 1).as_complex()
    np.testing.assert_allclose(z, [[0, 0], [1, 0], [0, math.sqrt(2)]], atol=1e-16)


def test_generalized_examples():
    phi = AffineMap(0.7j, 0.2)
    np.testing.assert_array_equal(op.generalized_matrix(0, phi, 1, XI, 8).as_complex(),
                                  op.composition_matrix(phi, XI, XI, 8).as_complex())
    chain = op.compose(op.differentiation_matrix(1, XI, 8), op.composition_matrix(phi, XI, XI, 8))
    gen = op.generalized_matrix(1, phi, phi.derivative, XI, 8)
    np.testing.assert_allclose(gen.as_complex(), chain.as_complex(), rtol=0, atol=1e-12)
    g = op.generalized_matrix(1, AffineMap(1), 1, XI, 6).as_complex()
    np.testing.assert_allclose(g[:, 2], op.differentiation_matrix(1, XI, 6).as_complex()[:, 2])
    d2 = op.generalized_matrix(2, AffineMap(1), 1, XI, 4).as_complex()
    np.testing.assert_allclose(d2, op.differentiation_matrix(2, XI, 4).as_complex(), rtol=1e-15)
    np.testing.assert_allclose(np.diag(d2, 2), [math.sqrt(2), math.sqrt(6), math.sqrt(12)], rtol=1e-15)


def test_generalized_headroom():
    with pytest.raises(InsufficientHeadroom):
        op.generalized_matrix(1, AffineMap(1), [0, 0, 0, 1], fock_weights(10), 10)


def test_adjoint_examples():
    mu = 0.4 + 0.7j
    t = op.composition_matrix(AffineMap(mu), XI, XI, 12)
    a = op.adjoint(t)
    np.testing.assert_allclose(a.as_complex(), np.diag(np.conj(mu) ** np.arange(13)), rtol=1e-15)
    assert a.symbol.phi == AffineMap(np.conj(mu))
    t2 = op.composition_matrix(random_affine(np.random.default_rng(1)), XI, XI, 12)
    np.testing.assert_array_equal(op.adjoint(op.adjoint(t2)).entries, t2.entries)
    assert op.adjoint(t2).symbol is None


def test_apply_examples():
    rng = np.random.default_rng(2)
    f = random_function(rng, 9)
    np.testing.assert_allclose(op.apply(op.identity_matrix(XI, 9), f).coeffs, f.coeffs, rtol=1e-15)
    mu = 0.5 - 0.5j
    img = op.apply(op.composition_matrix(AffineMap(mu), XI, XI, 4), monomial(2, XI))
    np.testing.assert_allclose(img.coeffs, [0, 0, mu ** 2, 0, 0], atol=1e-16)
    img = op.apply(op.generalized_matrix(1, AffineMap(1, 1), 1, XI, 2), monomial(2, XI))
    np.testing.assert_allclose(img.coeffs, [2, 2], rtol=1e-15)
    with pytest.raises(DegreeExceedsWeights):
        op.apply(op.identity_matrix(XI, 3), f)


def test_compose_reverses_order():
    rng = np.random.default_rng(4)
    phi1, phi2 = random_affine(rng), random_affine(rng)
    c1 = op.composition_matrix(phi1, XI, XI, 20)
    c2 = op.composition_matrix(phi2, XI, XI, 20)
    prod = op.compose(c1, c2)
    # C_phi1 C_phi2 f = f o phi2 o phi1
    direct = op.composition_matrix(phi2.after(phi1), XI, XI, 20)
    np.testing.assert_allclose(prod.as_complex(), direct.as_complex(), rtol=0, atol=1e-13)
    assert prod.symbol.phi.a == pytest.approx(direct.symbol.phi.a)
    assert prod.symbol.phi.b == pytest.approx(direct.symbol.phi.b)


def test_sum_of_reflections_kills_z():
    s = op.add(op.composition_matrix(AffineMap(1), XI, XI, 8),
               op.composition_matrix(AffineMap(-1), XI, XI, 8))
    assert not np.any(op.apply(s, monomial(1, XI)).coeffs)
    assert s.symbol is None


def test_scalar_mul_symbol():
    b, mu = unit(2.0), unit(-0.3)
    t = op.scalar_mul(b, op.composition_matrix(AffineMap(mu), XI, XI, 10))
    np.testing.assert_allclose(t.as_complex(), b * np.diag(mu ** np.arange(11)), rtol=1e-15)
    assert t.symbol.multiplier == (b,)


def test_compose_checks_shapes_and_spaces():
    a = op.composition_matrix(AffineMap(0.5), XI, XI, 5)
    m = op.multiplier_matrix([0, 1], XI, 5)
    with pytest.raises(SpaceMismatch):
        op.compose(a, m)
    other = scale_weights(XI, 0.5)
    with pytest.raises(SpaceMismatch):
        op.compose(op.identity_matrix(other, 5), a)
    with pytest.raises(SpaceMismatch):
        op.add(a, op.identity_matrix(XI, 4))


def test_power():
    mu = 0.9j
    t = op.composition_matrix(AffineMap(mu), XI, XI, 6)
    np.testing.assert_allclose(op.power(t, 3).as_complex(), np.diag((mu ** 3) ** np.arange(7)), rtol=1e-14)


def test_dump_document():
    d = op.composition_matrix(AffineMap(1j), XI, XI, 4).to_dict()
    assert d["n"] == 4 and d["headroom_used"] == 0 and d["warnings"] == []
    assert d["domain_space"] == {"kind": "fock", "n_max": 64}
    diag = [d["entries"][k][k] for k in range(5)]
    assert diag == [[1, 0], [0, 1], [-1, 0], [0, -1], [1, 0]]


def test_matrix_dimensions_checked():
    with pytest.raises(DegreeExceedsWeights):
        op.OperatorMatrix(np.eye(6), fock_weights(4), fock_weights(4))


@pytest.mark.parametrize("kind", BUILDERS)
def test_oracle_equivalence(kind):
    rng = np.random.default_rng([11, BUILDERS.index(kind)])
    for _ in range(200):
        got, want = oracle_case(kind, rng, XI)
        n = max(got.degree_bound, want.degree_bound)
        scale = max(np.abs(want.coeffs).max(), 1e-300)
        assert np.max(np.abs(got.padded(n) - want.padded(n))) <= 1e-10 * scale


def test_oracle_equivalence_table_weights():
    xi = table_weights(np.exp(np.random.default_rng(5).random(20).cumsum()))
    rng = np.random.default_rng(6)
    for kind in BUILDERS:
        for _ in range(20):
            got, want = oracle_case(kind, rng, xi)
            n = max(got.degree_bound, want.degree_bound)
            scale = max(np.abs(want.coeffs).max(), 1e-300)
            assert np.max(np.abs(got.padded(n) - want.padded(n))) <= 1e-10 * scale


def _operator_zoo(rng, N=10):
    phi = random_affine(rng)
    ups = rng.standard_normal(3) + 1j * rng.standard_normal(3)
    mu = (0.2 + 0.8 * rng.random()) * np.exp(2j * np.pi * rng.random())
    return {
        "composition": op.composition_matrix(phi, XI, XI, N),
        "cross-space": op.composition_matrix(AffineMap(mu), XI, scale_weights(XI, mu), N),
        "multiplier": op.multiplier_matrix(ups, XI, N),
        "differentiation": op.differentiation_matrix(int(rng.integers(0, 4)), XI, N),
        "weighted": op.weighted_composition_matrix(ups, phi, XI, N),
        "generalized": op.generalized_matrix(int(rng.integers(0, 4)), phi, ups, XI, N),
    }


def test_adjoint_identity_per_class():
    rng = np.random.default_rng(7)
    for _ in range(100):
        for name, t in _operator_zoo(rng).items():
            f = random_function(rng, t.working_degree, t.domain_weights)
            g = random_function(rng, t.codomain_degree, t.codomain_weights)
            tf, tsg = op.apply(t, f), op.apply(op.adjoint(t), g)
            lhs = inner_product(tf, g, t.codomain_weights)
            rhs = inner_product(f, tsg, t.domain_weights)
            scale = norm(tf) * norm(g) + norm(f) * norm(tsg)
            assert abs(lhs - rhs) <= 1e-10 * scale, name


@settings(max_examples=100, deadline=None)
@given(seed=seeds)
def test_kernel_identity_dilation(seed):
    rng = np.random.default_rng(seed)
    mu = math.sqrt(rng.random()) * np.exp(2j * np.pi * rng.random())
    p = 2 * math.sqrt(rng.random()) * np.exp(2j * np.pi * rng.random())
    N = 48
    img = op.apply(op.adjoint(op.composition_matrix(AffineMap(mu), XI, XI, N)), kernel(p, XI, N))
    want = kernel(mu * p, XI, N).coeffs
    assert np.max(np.abs(img.coeffs - want)) <= 1e-9 * np.abs(want).max()


@settings(max_examples=30, deadline=None)
@given(seed=seeds)
def test_kernel_identity_affine_with_tail_excluded(seed):
    rng = np.random.default_rng(seed)
    phi = random_affine(rng)
    p = 2 * math.sqrt(rng.random()) * np.exp(2j * np.pi * rng.random())
    N = 48
    cut = N - math.ceil(4 * abs(phi.b))
    img = op.apply(op.adjoint(op.composition_matrix(phi, XI, XI, N)), kernel(p, XI, N))
    want = kernel(phi(p), XI, N).coeffs
    assert np.max(np.abs(img.coeffs[: cut + 1] - want[: cut + 1])) <= 1e-9 * np.abs(want).max()


@settings(max_examples=40, deadline=None)
@given(seed=seeds)
def test_gram_is_positive_semidefinite(seed):
    rng = np.random.default_rng(seed)
    for t in _operator_zoo(rng, N=12).values():
        g = op.compose(op.adjoint(t), t).as_complex()
        np.testing.assert_allclose(g, np.conj(g).T, rtol=0, atol=1e-12 * max(1, np.abs(g).max()))
        w = np.linalg.eigvalsh((g + np.conj(g).T) / 2)
        assert w.min() >= -1e-10 * max(1.0, w.max())
