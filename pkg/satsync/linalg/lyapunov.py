import numpy as np

from satsync.errors import ConsistencyError, DimensionError, UnstableMatrixError, ValidationError
from satsync.linalg.kernel import as_square, is_symmetric, spectral_radius


def solve_discrete_lyapunov(m, q, maxiter=64, rtol=1e-12):
    """
    Solve m^T P m - P + q = 0 with the squared Smith iteration.

    P is accumulated as sum_k (m^T)^k q m^k, doubling the number of summed terms at every
    step (P <- P + M^T P M, M <- M @ M) until the increment is below rtol * ||P||_F.
    """
    m = as_square(m)
    q = as_square(q)
    if m.shape != q.shape:
        raise DimensionError(f"shapes of m {m.shape} and q {q.shape} differ")
    if not is_symmetric(q):
        raise ValidationError("q must be symmetric")
    rho = spectral_radius(m)
    if rho >= 1.0:
        raise UnstableMatrixError(f"spectral radius {rho!r} >= 1, the Lyapunov series does not converge")

    p = q.copy()
    power = m.copy()
    for _ in range(maxiter):
        increment = power.T @ p @ power
        p = p + increment
        power = power @ power
        norm_increment = np.linalg.norm(increment)
        if norm_increment == 0.0 or norm_increment <= rtol * np.linalg.norm(p):
            return 0.5 * (p + p.T)

    raise ConsistencyError(f"Smith iteration did not converge in {maxiter} steps (spectral radius {rho!r})")


def lyapunov_residual(m, p, q) -> float:
    """
    Frobenius norm of m^T p m - p + q.
    """
    m = as_square(m)
    return float(np.linalg.norm(m.T @ p @ m - p + q))
