import numpy as np
import pytest

from trigsurf import (AnchorSelectionError, IllConditionedKernelError, InvalidArgumentError, TrigPolynomial,
                      anchor_count, build_interpolant, eval_interpolant, kernel_matrix, random_polynomial,
                      random_real_polynomial, rect, sample_zero_set, select_anchors)
from trigsurf.recovery import numerical_rank
from trigsurf.trigpoly import feature_matrix

L33 = rect(2, [3, 3])
G13 = rect(2, [13, 13])
G5 = rect(2, [5, 5])


def test_anchor_counts():
    assert anchor_count(G13, L33) == 169 - 121 == 48
    assert anchor_count(L33, L33) == 8
    assert anchor_count(G5, L33) == 16


def test_selected_anchors_are_certified(curve):
    anchors = select_anchors(curve, G13, seed=0, rel_tol=1e-5)
    assert len(anchors) == 48
    assert numerical_rank(feature_matrix(G13, anchors), 1e-5) == 48
    assert np.max(np.abs(curve(anchors))) < 1e-10


def test_anchor_selection_is_seeded(curve):
    a = select_anchors(curve, G5, seed=4)
    b = select_anchors(curve, G5, seed=4)
    assert np.array_equal(a.points, b.points)


def test_anchor_selection_failure_reports_rank(curve):
    with pytest.raises(AnchorSelectionError) as info:
        select_anchors(curve, G13, seed=0, max_retries=2, rel_tol=0.5)
    assert info.value.required_rank == 48
    assert info.value.achieved_rank < 48


def test_kernel_matrix_hermitian_psd(curve):
    anchors = select_anchors(curve, G13, seed=1, rel_tol=1e-5)
    K = kernel_matrix(G13, anchors)
    assert np.allclose(K, K.conj().T, atol=1e-12)
    eig = np.linalg.eigvalsh(0.5 * (K + K.conj().T))
    assert eig.min() >= -1e-8 * eig.max()
    assert np.allclose(np.diag(K), len(G13))


@pytest.fixture(scope="module")
def setup():
    surface = random_real_polynomial(L33, 11)
    anchors = select_anchors(surface, G13, seed=11, rel_tol=1e-5)
    test = sample_zero_set(surface, 100, seed=99)
    return surface, anchors, test


def test_zero_function_gives_zero_weights(setup):
    _, anchors, _ = setup
    itp = build_interpolant(np.zeros(len(anchors)), anchors, G13)
    assert np.all(itp.weights == 0)


def test_interpolates_at_anchors(setup):
    _, anchors, _ = setup
    f = random_polynomial(G13, 3)
    fa = f(anchors)
    itp = build_interpolant(fa, anchors, G13)
    assert np.max(np.abs(itp(anchors) - fa)) <= 1e-6 * np.linalg.norm(f.coeffs)
    K = kernel_matrix(G13, anchors)
    assert np.allclose(itp.weights @ K, fa, atol=1e-6 * np.linalg.norm(f.coeffs))


def test_reproduces_kernel_section(setup):
    surface, anchors, test = setup
    x1 = anchors.points[0]
    f = TrigPolynomial(G13, np.exp(-2j * np.pi * (G13.indices @ x1)))  # k(x1, .)
    itp = build_interpolant(f(anchors), anchors, G13)
    assert np.max(np.abs(itp(test) - f(test))) <= 1e-8 * len(G13)


def test_reproduces_bandlimited_function_on_surface(setup):
    _, anchors, test = setup
    for seed in range(5):
        f = random_polynomial(G13, seed)
        itp = build_interpolant(f(anchors), anchors, G13)
        err = np.max(np.abs(itp(test) - f(test))) / np.linalg.norm(f.coeffs)
        assert err <= 1e-6


def test_differs_off_surface(setup, rng):
    _, anchors, _ = setup
    f = random_polynomial(G13, 0)
    itp = build_interpolant(f(anchors), anchors, G13)
    off = rng.random((50, 2))
    dev = np.abs(itp(off) - f(off)) / np.linalg.norm(f.coeffs)
    assert np.median(dev) > 1e-2


def test_linearity(setup):
    _, anchors, test = setup
    f, g = random_polynomial(G13, 1), random_polynomial(G13, 2)
    a, b = 0.7 - 0.2j, -1.3
    fi = build_interpolant(f(anchors), anchors, G13)
    gi = build_interpolant(g(anchors), anchors, G13)
    hi = build_interpolant(a * f(anchors) + b * g(anchors), anchors, G13)
    assert np.allclose(hi.weights, a * fi.weights + b * gi.weights, atol=1e-10 * np.abs(hi.weights).max())
    assert np.allclose(hi(test), a * fi(test) + b * gi(test), atol=1e-8)


def test_parameter_count(setup):
    _, anchors, _ = setup
    itp = build_interpolant(np.ones(len(anchors)), anchors, G13)
    assert itp.num_parameters == 48 < len(G13) == 169
    assert itp.kernel_matrix_rank == 48


def test_single_point_evaluation(setup):
    _, anchors, test = setup
    f = random_polynomial(G13, 5)
    itp = build_interpolant(f(anchors), anchors, G13)
    assert isinstance(eval_interpolant(itp, test.points[0]), complex)
    assert eval_interpolant(itp, test.points[0]) == pytest.approx(itp(test)[0], abs=1e-12)
    with pytest.raises(InvalidArgumentError):
        eval_interpolant(itp, [0.1, 0.2, 0.3])


def test_build_errors(setup):
    surface, anchors, _ = setup
    with pytest.raises(InvalidArgumentError):
        build_interpolant(np.ones(len(anchors) - 1), anchors, G13)
    # more points on the surface than its feature rank: K is singular
    crowded = sample_zero_set(surface, 60, seed=0)
    with pytest.raises(IllConditionedKernelError) as info:
        build_interpolant(np.ones(60), crowded, G13)
    assert info.value.rank <= 48
    assert info.value.size == 60
