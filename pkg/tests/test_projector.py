import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from mixer import _kernels_numpy, kernels
from mixer.errors import DimensionError, TooFewColumnsError
from mixer.lcg import projection_weights
from mixer.patches import extract_patch_matrix
from mixer.projector import EPS, add_bias, encode, standardize_rows


def test_standardize_simple_row():
    np.testing.assert_allclose(standardize_rows([[1.0, 2.0, 3.0]]), [[-1.0, 0.0, 1.0]], atol=1e-9)


def test_standardize_constant_row_is_zero():
    np.testing.assert_array_equal(standardize_rows(np.full((2, 7), 0.3)), 0.0)


@pytest.mark.parametrize("c", [0.5, 2.0, 255.0, 1e-3])
def test_standardize_scale_invariant(rng, c):
    X = rng.random((9, 50))
    np.testing.assert_allclose(standardize_rows(c * X), standardize_rows(X), atol=1e-6)


def test_standardize_uses_sample_std(rng):
    X = rng.random((4, 30))
    expected = (X - X.mean(1, keepdims=True)) / (X.std(1, ddof=1, keepdims=True) + EPS)
    np.testing.assert_allclose(standardize_rows(X), expected, rtol=1e-12)


def test_standardize_needs_two_columns():
    with pytest.raises(TooFewColumnsError):
        standardize_rows(np.ones((9, 1)))


def test_add_bias():
    np.testing.assert_array_equal(add_bias([[1, 2], [3, 4]]), [[-1, -1], [1, 2], [3, 4]])
    np.testing.assert_array_equal(add_bias(np.zeros((0, 3))), [[-1, -1, -1]])
    twice = add_bias(add_bias([[5.0]]))
    np.testing.assert_array_equal(twice, [[-1], [-1], [5]])


def test_encode_zero_weights(rng):
    omega = 7
    X = rng.random((9, 20))
    Z = encode(X, np.zeros((omega, 10)))
    assert Z.shape == (omega + 1, 20)
    np.testing.assert_array_equal(Z[0], -1.0)
    np.testing.assert_allclose(Z[1:], 0.5 / (0.5 * np.sqrt(omega)), rtol=1e-14)
    np.testing.assert_allclose(np.linalg.norm(Z[1:], axis=0), 1.0, atol=1e-12)


def test_column_normalisation_direction():
    # pre-activations chosen so the sigmoid outputs are (0.6c, 0.8c) with c = 0.5
    logit = lambda p: np.log(p / (1 - p))
    P = np.array([[logit(0.3)], [logit(0.4)]])
    out = kernels.sigmoid_unit_columns(P, EPS)
    np.testing.assert_allclose(out[:, 0], [0.6, 0.8], atol=1e-12)


def test_encode_shape_mismatch(rng):
    with pytest.raises(DimensionError, match=r"\(omega, 10\)"):
        encode(rng.random((9, 20)), np.zeros((5, 9)))


def test_encode_hypersphere_on_random_patches(rng):
    psi = projection_weights(1, 32, 3)[0]
    for _ in range(20):
        X = extract_patch_matrix(rng.random((12, 15)), 3)
        Z = encode(X, psi)
        np.testing.assert_array_equal(Z[0], -1.0)
        norms = np.linalg.norm(Z[1:], axis=0)
        assert np.all(np.abs(norms - 1) < 1e-9)


@settings(max_examples=25, deadline=None)
@given(st.integers(2, 40), st.integers(1, 30), st.sampled_from([0.5, 2.0, 255.0]))
def test_encode_input_scale_invariant(n, omega, c):
    X = np.random.default_rng(n * 1000 + omega).random((9, n))
    psi = projection_weights(1, omega, 3)[0]
    np.testing.assert_allclose(encode(c * X, psi), encode(X, psi), atol=1e-6)


def test_encode_deterministic(rng):
    X = rng.random((9, 64))
    psi = projection_weights(2, 19, 3)[1]
    assert encode(X, psi).tobytes() == encode(X, psi).tobytes()


def test_numpy_backend_agrees(rng):
    X = rng.random((25, 300))
    P = rng.normal(size=(40, 300)) * 5
    np.testing.assert_allclose(kernels.standardize_rows(X, EPS),
                               _kernels_numpy.standardize_rows(X, EPS), rtol=1e-12, atol=1e-13)
    np.testing.assert_allclose(kernels.sigmoid_unit_columns(P, EPS),
                               _kernels_numpy.sigmoid_unit_columns(P, EPS), rtol=1e-12)
