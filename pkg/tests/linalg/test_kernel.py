import numpy as np
import pytest
import scipy.linalg
import scipy.optimize

from satsync.errors import DimensionError, ValidationError
from satsync.linalg import (
    as_matrix,
    as_square,
    eigvals,
    is_positive_definite,
    is_schur,
    is_symmetric,
    kron,
    spectral_norm,
    spectral_radius,
)


def test_as_matrix():
    assert as_matrix(2.0).shape == (1, 1)
    assert as_matrix([[1, 2, 3]]).dtype == np.float64
    with pytest.raises(DimensionError):
        as_matrix(np.zeros((2, 2, 2)))
    with pytest.raises(DimensionError):
        as_matrix(np.zeros((0, 3)))
    with pytest.raises(ValidationError):
        as_matrix([[1.0, np.nan]])
    with pytest.raises(DimensionError):
        as_square(np.zeros((2, 3)))


def test_kron():
    a = np.array([[1.0, 2.0], [3.0, 4.0]])
    b = np.array([[0.0, 1.0], [1.0, 0.0]])
    expected = np.array(
        [
            [0.0, 1.0, 0.0, 2.0],
            [1.0, 0.0, 2.0, 0.0],
            [0.0, 3.0, 0.0, 4.0],
            [3.0, 0.0, 4.0, 0.0],
        ]
    )
    assert np.array_equal(kron(a, b), expected)
    assert kron(np.eye(3), np.ones((2, 1))).shape == (6, 3)


@pytest.mark.parametrize("size", [1, 2, 5, 12])
def test_eigvals(size):
    rng = np.random.default_rng(size)
    m = rng.normal(size=(size, size))
    assert np.allclose(np.sort_complex(eigvals(m)), np.sort_complex(scipy.linalg.eigvals(m)))
    assert np.isclose(spectral_norm(m), scipy.linalg.svdvals(m).max())


def test_spectral_radius():
    # A - FC for F = (1.5, 0.5): eigenvalues {0, 0.5}.
    a_fc = np.array([[-0.5, 1.0], [-0.5, 1.0]])
    assert np.isclose(spectral_radius(a_fc), 0.5, atol=1e-12)
    assert np.isclose(spectral_radius(np.array([[0.0, -2.0], [2.0, 0.0]])), 2.0)

    # Triangular input with a repeated eigenvalue is resolved exactly.
    d = np.array([[0.5, 0.0, 0.0], [0.5, 0.5, 0.0], [0.0, 0.5, 0.5]])
    assert abs(spectral_radius(kron(d, np.array([[1.0, 1.0], [0.0, 1.0]]))) - 0.5) < 1e-10


def test_is_schur():
    assert is_schur(np.array([[0.5, 1.0], [0.0, -0.9]]))
    assert not is_schur(np.array([[1.0, 1.0], [0.0, 1.0]]))
    assert not is_schur(np.array([[1.0 - 1e-14]]))


def test_definiteness():
    assert is_symmetric(np.array([[1.0, 2.0], [2.0, 1.0]]))
    assert not is_symmetric(np.array([[1.0, 2.0], [2.1, 1.0]]))
    assert is_positive_definite(np.array([[2.0, 1.0], [1.0, 2.0]]))
    assert not is_positive_definite(np.array([[1.0, 2.0], [2.0, 1.0]]))
    assert not is_positive_definite(np.zeros((2, 2)))
    with pytest.raises(ValidationError):
        is_positive_definite(np.array([[1.0, 0.0], [1.0, 1.0]]))


def random_matrix(rng, max_size=3):
    size = int(rng.integers(1, max_size + 1))
    return rng.normal(size=(size, int(rng.integers(1, max_size + 1))))


@pytest.mark.parametrize("seed", range(20))
def test_kron_associative(seed):
    rng = np.random.default_rng(seed)
    a, b, c = (random_matrix(rng) for _ in range(3))
    assert np.allclose(kron(kron(a, b), c), kron(a, kron(b, c)), rtol=0.0, atol=1e-12)


@pytest.mark.parametrize("seed", range(50))
def test_kron_eigenvalue_products(seed):
    rng = np.random.default_rng(seed)
    size_a, size_b = int(rng.integers(1, 4)), int(rng.integers(1, 3))
    a, b = rng.normal(size=(size_a, size_a)), rng.normal(size=(size_b, size_b))

    expected = np.outer(eigvals(a), eigvals(b)).ravel()
    actual = eigvals(kron(a, b))
    rows, cols = scipy.optimize.linear_sum_assignment(np.abs(expected[:, None] - actual[None, :]))
    assert np.max(np.abs(expected[rows] - actual[cols])) < 1e-8


@pytest.mark.parametrize("seed", range(50))
def test_norm_bounds_radius(seed):
    rng = np.random.default_rng(seed)
    size = int(rng.integers(1, 9))
    m = rng.normal(size=(size, size))
    assert spectral_norm(m) >= spectral_radius(m) - 1e-10
