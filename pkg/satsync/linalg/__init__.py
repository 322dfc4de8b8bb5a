from .kernel import (
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
from .lyapunov import lyapunov_residual, solve_discrete_lyapunov
