import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from trigsurf import (FrequencySet, InvalidArgumentError, TrigPolynomial, dirichlet_kernel, evaluate, feature_map,
                      feature_matrix, multiply, random_polynomial, random_real_polynomial, rect, sample_zero_set)
from trigsurf.trigpoly import constant, kernel_matrix


def summation_oracle(p, x):
    total = 0j
    for k, c in zip(p.support.indices.tolist(), p.coeffs.tolist()):
        total += c * cmath.exp(2j * math.pi * sum(ki * xi for ki, xi in zip(k, x)))
    return total


def dirichlet_1d(e, u):
    h = (e - 1) // 2
    return sum(cmath.exp(2j * math.pi * m * u) for m in range(-h, h + 1))


def test_constant_polynomial():
    p = constant(2, 3.0)
    assert p([0.3, 0.9]) == pytest.approx(3.0)


def test_cosine_1d():
    p = TrigPolynomial(rect(1, [3]), [0.5, 0, 0.5], real_valued=True)
    assert p([0.0]) == pytest.approx(1.0)
    assert abs(p([0.25])) < 1e-15
    x = np.linspace(0, 0.99, 17).reshape(-1, 1)
    np.testing.assert_allclose(p(x).real, np.cos(2 * np.pi * x[:, 0]), atol=1e-15)


def test_eval_matches_summation_oracle(rng):
    for dim, ext in [(1, [7]), (2, [5, 3]), (3, [3, 3, 5])]:
        p = random_polynomial(rect(dim, ext), seed=dim)
        for x in rng.random((10, dim)):
            expected = summation_oracle(p, x)
            assert abs(evaluate(p, x) - expected) <= 1e-12 * abs(expected) + 1e-13


def test_feature_map_basics(rng):
    lam = rect(2, [5, 5])
    np.testing.assert_array_equal(feature_map(lam, [0, 0]), np.ones(25))
    x = rng.random(2)
    phi = feature_map(lam, x)
    np.testing.assert_allclose(np.abs(phi), 1.0, atol=1e-12)
    perm = lam.negation_permutation
    np.testing.assert_allclose(phi.conj(), phi[perm], atol=1e-14)
    p = random_polynomial(lam, seed=3)
    assert abs(p.coeffs @ phi - p(x)) <= 1e-12 * p.l1_norm()


def test_feature_map_dim_mismatch():
    with pytest.raises(InvalidArgumentError):
        feature_map(rect(2, [3, 3]), [0.1, 0.2, 0.3])


def test_feature_matrix_shape_and_columns(rng):
    lam = rect(3, [3, 3, 3])
    X = rng.random((4, 3))
    F = feature_matrix(lam, X)
    assert F.shape == (27, 4)
    for j in range(4):
        np.testing.assert_allclose(F[:, j], feature_map(lam, X[j]))
    np.testing.assert_array_equal(feature_matrix(lam, np.zeros((1, 3))), np.ones((27, 1)))
    with pytest.raises(InvalidArgumentError):
        feature_matrix(lam, np.zeros((0, 3)))


def test_annihilation_on_zero_set(curve):
    X = sample_zero_set(curve, 20, seed=1)
    assert np.max(np.abs(curve.coeffs @ feature_matrix(curve.support, X))) <= 1e-8


def test_off_surface_not_annihilated():
    lam = rect(2, [3, 3])
    rng = np.random.default_rng(0)
    for trial in range(100):
        p = random_real_polynomial(lam, seed=trial)
        X = rng.random((8, 2))
        assert np.max(np.abs(p.coeffs @ feature_matrix(lam, X))) > 1e-3


def test_multiply_identity_and_support(curve):
    one = constant(2, 1.0)
    prod = multiply(curve, one)
    assert prod.support == curve.support
    np.testing.assert_allclose(prod.coeffs, curve.coeffs)
    q = random_real_polynomial(rect(2, [3, 3]), seed=8)
    pq = multiply(curve, q)
    assert pq.support == rect(2, [5, 5])
    assert pq.real_valued


def test_multiply_evaluation_homomorphism(rng):
    a = random_polynomial(rect(2, [3, 5]), seed=1)
    b = random_polynomial(FrequencySet([[0, 0], [2, -1], [-1, 3]]), seed=2)
    ab = multiply(a, b)
    X = rng.random((100, 2))
    np.testing.assert_allclose(ab(X), a(X) * b(X), rtol=1e-10)


def test_multiply_dim_mismatch():
    with pytest.raises(InvalidArgumentError):
        multiply(constant(2), constant(3))


def test_dirichlet_kernel(rng):
    gamma = rect(2, [5, 7])
    x, y = rng.random(2), rng.random(2)
    assert dirichlet_kernel(gamma, x, x) == pytest.approx(len(gamma), abs=1e-12)
    assert dirichlet_kernel(gamma, x, y) == pytest.approx(dirichlet_kernel(gamma, y, x).conjugate(), abs=1e-12)
    expected = dirichlet_1d(5, y[0] - x[0]) * dirichlet_1d(7, y[1] - x[1])
    assert abs(dirichlet_kernel(gamma, x, y) - expected) <= 1e-10
    K = kernel_matrix(gamma, rng.random((6, 2)))
    np.testing.assert_allclose(K, K.conj().T, atol=1e-12)


def test_dirichlet_reproduces_bandlimited_values(rng):
    # f(y) = sum_k a_k phi_k(y) = <conj(a), phi(y)>, and integrating k(x, y) f(x) dx over a
    # fine grid returns f(y)
    gamma = rect(2, [3, 3])
    f = random_polynomial(gamma, seed=4)
    y = rng.random(2)
    g = np.arange(16) / 16
    grid = np.stack(np.meshgrid(g, g, indexing="ij"), axis=-1).reshape(-1, 2)
    kern = kernel_matrix(gamma, grid, y.reshape(1, 2))[:, 0]
    assert abs(np.mean(kern * f(grid)) - f(y)) < 1e-12


def test_random_real_polynomial_invariants():
    lam = rect(2, [5, 5])
    rng = np.random.default_rng(1)
    for model in ("centered", "anchored"):
        p = random_real_polynomial(lam, seed=11, model=model)
        assert p.real_valued
        perm = lam.negation_permutation
        np.testing.assert_array_equal(p.coeffs[perm], p.coeffs.conj())
        vals = p(rng.random((100, 2)))
        assert np.max(np.abs(vals.imag)) <= 1e-12 * p.l1_norm()
        assert np.min(vals.real) < 0 < np.max(vals.real)
    anchored = random_real_polynomial(lam, seed=11, model="anchored")
    assert abs(anchored(anchored.anchor)) < 1e-12
    assert random_real_polynomial(lam, seed=11).coefficient((0, 0)) == 0


def test_random_real_polynomial_deterministic():
    lam = rect(3, [3, 3, 3])
    a = random_real_polynomial(lam, seed=5)
    b = random_real_polynomial(lam, seed=5)
    assert a.coeffs.tobytes() == b.coeffs.tobytes()
    assert a.coeffs.tobytes() != random_real_polynomial(lam, seed=6).coeffs.tobytes()


def test_random_real_polynomial_rejects_asymmetric():
    with pytest.raises(InvalidArgumentError):
        random_real_polynomial(FrequencySet([[0, 0], [1, 0]]), seed=0)
    with pytest.raises(InvalidArgumentError):
        random_real_polynomial(rect(2, [3, 3]), seed=0, model="bogus")


def test_real_valued_requires_conjugate_symmetry():
    with pytest.raises(InvalidArgumentError):
        TrigPolynomial(rect(1, [3]), [1, 0, 2], real_valued=True)
    with pytest.raises(InvalidArgumentError):
        TrigPolynomial(rect(1, [3]), [0, 0, 0])


def test_translation_covariance(rng):
    p = random_real_polynomial(rect(2, [5, 3]), seed=2)
    t = rng.random(2)
    shifted = p.translate(t)
    X = rng.random((50, 2))
    np.testing.assert_allclose(shifted(np.mod(X + t, 1.0)), p(X), atol=1e-10 * p.l1_norm())


@pytest.mark.parametrize("dim,ext", [(1, [9]), (2, [5, 5]), (2, [3, 7])])
def test_parseval(dim, ext):
    p = random_polynomial(rect(dim, ext), seed=9)
    g = np.arange(64) / 64
    grid = np.stack(np.meshgrid(*([g] * dim), indexing="ij"), axis=-1).reshape(-1, dim)
    power = np.mean(np.abs(p(grid)) ** 2)
    assert power == pytest.approx(np.sum(np.abs(p.coeffs) ** 2), rel=1e-3)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10_000), st.lists(st.floats(0, 0.999), min_size=2, max_size=2))
def test_eval_feature_inner_product(seed, x):
    p = random_real_polynomial(rect(2, [3, 5]), seed=seed)
    assert abs(p.coeffs @ feature_map(p.support, x) - p(x)) <= 1e-12 * p.l1_norm()
    assert abs(p(x).imag) <= 1e-12 * p.l1_norm()
