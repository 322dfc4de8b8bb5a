import jax
import jax.numpy as jnp

from satsync.errors import DimensionError


@jax.jit
def diffusive_coupling(weights: jnp.ndarray, signals: jnp.ndarray) -> jnp.ndarray:
    """
    sum_j a_ij (s_i - s_j) for every node i, evaluated on pairwise differences so that
    identical signals give exactly zero.
    """
    return jnp.einsum("ij,ijd->id", weights, signals[:, None, :] - signals[None, :, :])


@jax.jit
def laplacian_coupling(laplacian: jnp.ndarray, signals: jnp.ndarray) -> jnp.ndarray:
    """
    sum_j l_ij s_j for every node i.
    """
    return laplacian @ signals


def _check_signals(signals, n):
    signals = jnp.asarray(signals)
    if signals.ndim == 1:
        signals = signals[:, None]
    if signals.ndim != 2 or signals.shape[0] != n:
        raise DimensionError(f"expected one signal per node ({n}), got shape {signals.shape}")
    return signals


def network_zeta(outputs, g, i):
    """
    zeta_i = sum_j a_ij (y_i - y_j) for the 1-based node i.
    """
    outputs = _check_signals(outputs, g.n)
    return diffusive_coupling(jnp.asarray(g.weights), outputs)[i - 1]


def network_zeta_hat(xi, g, i):
    """
    zeta_hat_i = sum_j a_ij (xi_i - xi_j) over the exchanged controller variables.
    """
    return network_zeta(xi, g, i)


def split_exchange(zeta_hat: jnp.ndarray, n: int):
    """
    Split the exchange over xi = (chi; sat(u)) into its chi part (2n) and its input part (n).
    """
    if zeta_hat.shape[-1] != 3 * n:
        raise DimensionError(f"expected exchange of length {3 * n}, got {zeta_hat.shape[-1]}")
    return zeta_hat[..., : 2 * n], zeta_hat[..., 2 * n :]
