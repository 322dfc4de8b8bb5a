import numpy as np

from satsync.errors import DimensionError, ValidationError


def as_matrix(m) -> np.ndarray:
    """
    Convert to a finite, two-dimensional float64 array.
    """
    m = np.array(m, dtype=np.float64)
    if m.ndim == 0:
        m = m.reshape(1, 1)
    if m.ndim != 2 or m.shape[0] < 1 or m.shape[1] < 1:
        raise DimensionError(f"expected a non-empty matrix, got shape {m.shape}")
    if not np.isfinite(m).all():
        raise ValidationError("matrix has non-finite entries")
    return m


def as_square(m) -> np.ndarray:
    m = as_matrix(m)
    if m.shape[0] != m.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {m.shape}")
    return m


def kron(a, b) -> np.ndarray:
    """
    Kronecker product; block (i, j) of the result is a[i, j] * b.
    """
    return np.kron(as_matrix(a), as_matrix(b))


def eigvals(m) -> np.ndarray:
    return np.linalg.eigvals(as_square(m))


def spectral_radius(m) -> float:
    return float(np.max(np.abs(eigvals(m))))


def spectral_norm(m) -> float:
    """
    Induced 2-norm (largest singular value).
    """
    return float(np.linalg.norm(as_matrix(m), 2))


def is_schur(m, margin: float = 1e-12) -> bool:
    """
    Strict Schur stability: every eigenvalue inside the open unit disk.
    """
    return spectral_radius(m) < 1.0 - margin


def is_symmetric(m, tol: float = 1e-12) -> bool:
    m = as_square(m)
    scale = max(1.0, float(np.max(np.abs(m))))
    return bool(np.max(np.abs(m - m.T)) <= tol * scale)


def is_positive_definite(m, tol: float = 1e-12) -> bool:
    m = as_square(m)
    if not is_symmetric(m, tol):
        raise ValidationError("positive definiteness is only defined here for symmetric matrices")
    return bool(np.linalg.eigvalsh(0.5 * (m + m.T)).min() > tol)
