from typing import NamedTuple

import jax
import jax.numpy as jnp
import numpy as np

from satsync.errors import DimensionError


def system_matrices(n=1):
    """
    A, B, C of the double integrator with n-dimensional position and velocity blocks.
    """
    eye = np.eye(n)
    a = np.kron(np.array([[1.0, 1.0], [0.0, 1.0]]), eye)
    b = np.kron(np.array([[0.0], [1.0]]), eye)
    c = np.kron(np.array([[1.0, 0.0]]), eye)
    return a, b, c


class AgentState(NamedTuple):
    x1: jnp.ndarray
    x2: jnp.ndarray

    @classmethod
    def from_vector(cls, x):
        x = jnp.asarray(x)
        if x.shape[-1] % 2:
            raise DimensionError(f"agent state must have even length, got {x.shape[-1]}")
        n = x.shape[-1] // 2
        return cls(x1=x[..., :n], x2=x[..., n:])

    @property
    def vector(self):
        return jnp.concatenate([self.x1, self.x2], axis=-1)


@jax.jit
def saturate(v: jnp.ndarray) -> jnp.ndarray:
    """
    Componentwise sgn(v) min(1, |v|).
    """
    return jnp.clip(v, -1.0, 1.0)


@jax.jit
def apply_a(x: jnp.ndarray) -> jnp.ndarray:
    n = x.shape[-1] // 2
    return jnp.concatenate([x[..., :n] + x[..., n:], x[..., n:]], axis=-1)


@jax.jit
def apply_b(u: jnp.ndarray) -> jnp.ndarray:
    return jnp.concatenate([jnp.zeros_like(u), u], axis=-1)


@jax.jit
def agent_step(x: AgentState, u: jnp.ndarray) -> AgentState:
    """
    x(k+1) = A x(k) + B sat(u(k)).
    """
    if u.shape != x.x2.shape:
        raise DimensionError(f"input of shape {u.shape} does not match agent blocks of shape {x.x2.shape}")
    return AgentState(x1=x.x1 + x.x2, x2=x.x2 + saturate(u))


@jax.jit
def saturation_gap(u: jnp.ndarray, v: jnp.ndarray) -> jnp.ndarray:
    """
    (sat(v) - sat(u))^T (u - sat(u)), never positive.
    """
    sat_u = saturate(u)
    return jnp.sum((saturate(v) - sat_u) * (u - sat_u), axis=-1)
