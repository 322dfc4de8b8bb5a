import numpy as np

from satsync.errors import BoundViolationError, ConsistencyError, InvalidRootError, NoSpanningTreeError, ValidationError
from satsync.graph.digraph import GraphAnalysis
from satsync.linalg import eigvals, spectral_radius


def check_root(analysis: GraphAnalysis, theta: int):
    if not analysis.root_set:
        raise NoSpanningTreeError()
    if theta not in analysis.root_set:
        raise InvalidRootError(theta, analysis.root_set)


def reduced_laplacian(analysis: GraphAnalysis, theta: int) -> np.ndarray:
    """
    L with the theta-th row and column deleted. Every eigenvalue has positive real part.
    """
    check_root(analysis, theta)
    n = analysis.laplacian.shape[0]
    if n < 2:
        raise ValidationError("the reduced Laplacian needs at least two nodes")
    keep = [i for i in range(n) if i != theta - 1]
    lap_hat = analysis.laplacian[np.ix_(keep, keep)]

    min_real = float(np.min(eigvals(lap_hat).real))
    if min_real <= 1e-10:
        raise ConsistencyError(f"reduced Laplacian for root {theta} has an eigenvalue with real part {min_real!r}")
    return lap_hat


def resolve_bounds(analysis: GraphAnalysis, din_bounds=None) -> np.ndarray:
    """
    Per-node in-degree bounds; the exact weighted in-degrees when none are given.
    """
    if din_bounds is None:
        return np.array(analysis.in_degrees, dtype=np.float64)
    din_bounds = np.array(din_bounds, dtype=np.float64)
    if din_bounds.shape != analysis.in_degrees.shape:
        raise ValidationError(f"expected {analysis.in_degrees.shape[0]} in-degree bounds, got {din_bounds.shape}")
    if not np.isfinite(din_bounds).all():
        raise ValidationError("in-degree bounds must be finite")
    return din_bounds


def check_bounds(analysis: GraphAnalysis, theta: int, din_bounds):
    for i, (bound, d_in) in enumerate(zip(din_bounds, analysis.in_degrees)):
        if i != theta - 1 and bound < d_in:
            raise BoundViolationError(i + 1, float(bound), float(d_in))


def dbar(analysis: GraphAnalysis, theta: int, din_bounds=None) -> np.ndarray:
    """
    Contraction matrix I - (I + D_d,in)^-1 L_hat governing the estimation error e.
    """
    din_bounds = resolve_bounds(analysis, din_bounds)
    lap_hat = reduced_laplacian(analysis, theta)
    check_bounds(analysis, theta, din_bounds)

    scale = 1.0 / (1.0 + np.delete(din_bounds, theta - 1))
    d = np.eye(lap_hat.shape[0]) - scale[:, None] * lap_hat

    rho = spectral_radius(d)
    if not rho < 1.0:
        raise ConsistencyError(f"spectral radius of D_bar is {rho!r} for root {theta}")
    return d
