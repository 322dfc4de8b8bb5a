from functools import partial
from typing import NamedTuple

import jax
import jax.numpy as jnp
import numpy as np

from satsync.analysis.zone import gain_zone_check
from satsync.dynamics.agent import apply_a, apply_b, saturate, system_matrices
from satsync.errors import DimensionError, GainError, ValidationError
from satsync.linalg import is_schur, spectral_radius

CHI_FEEDS = ("saturated", "raw")


class GainParams:
    """
    Protocol parameters: feedback gains K = -(k1 I, k2 I), observer gain F = (f1 I; f2 I),
    root theta (1-based) and optional per-node in-degree bounds.
    """

    def __init__(
        self,
        k1,
        k2,
        f1=None,
        f2=None,
        theta=1,
        din_bounds=None,
        allow_boundary=False,
    ):
        if not gain_zone_check(k1, k2, allow_boundary):
            raise GainError(f"gains (k1, k2) = ({k1!r}, {k2!r}) are outside the solvable zone")
        if (f1 is None) != (f2 is None):
            raise ValidationError("observer scalars f1 and f2 must be given together")
        if int(theta) != theta or theta < 1:
            raise ValidationError(f"root index must be a positive integer, got {theta!r}")

        self.k1 = float(k1)
        self.k2 = float(k2)
        self.f1 = None if f1 is None else float(f1)
        self.f2 = None if f2 is None else float(f2)
        self.theta = int(theta)
        self.din_bounds = None if din_bounds is None else tuple(float(d) for d in din_bounds)
        self.allow_boundary = bool(allow_boundary)

    @property
    def has_observer(self):
        return self.f1 is not None

    def feedback_gain(self, n=1):
        return -np.kron(np.array([[self.k1, self.k2]]), np.eye(n))

    def observer_gain(self, n=1):
        if not self.has_observer:
            raise ValidationError("no observer gain configured")
        return np.kron(np.array([[self.f1], [self.f2]]), np.eye(n))

    def observer_matrix(self, n=1):
        """
        A - FC.
        """
        a, _, c = system_matrices(n)
        return a - self.observer_gain(n) @ c

    def check_observer(self, n=1):
        a_fc = self.observer_matrix(n)
        if not is_schur(a_fc):
            raise GainError(f"A - FC is not Schur (spectral radius {spectral_radius(a_fc)!r})")

    def gain_dict(self):
        gains = {"k1": self.k1, "k2": self.k2}
        if self.has_observer:
            gains.update(f1=self.f1, f2=self.f2)
        return gains

    def __repr__(self):
        return f"GainParams({self.gain_dict()}, theta={self.theta})"


class Protocol1State(NamedTuple):
    chi: jnp.ndarray


class Protocol2State(NamedTuple):
    xhat: jnp.ndarray
    chi: jnp.ndarray


@jax.jit
def control_input(chi: jnp.ndarray, k1: float, k2: float) -> jnp.ndarray:
    """
    u = K chi = -(k1 chi_1 + k2 chi_2).
    """
    n = chi.shape[-1] // 2
    return -(k1 * chi[..., :n] + k2 * chi[..., n:])


def _check_shapes(chi, u, *signals):
    n = u.shape[-1]
    if chi.shape[-1] != 2 * n:
        raise DimensionError(f"controller state of length {chi.shape[-1]} does not match input of length {n}")
    for signal, length in signals:
        if signal.shape[-1] != length:
            raise DimensionError(f"exchange signal of length {signal.shape[-1]}, expected {length}")


@jax.jit
def protocol1_step(
    s: Protocol1State,
    zeta: jnp.ndarray,
    zeta_hat: jnp.ndarray,
    u_applied: jnp.ndarray,
    din_bound: float,
) -> Protocol1State:
    """
    chi(k+1) = A chi + B sat(u) + A (zeta - zeta_hat) / (1 + D_in(i)).
    """
    n = u_applied.shape[-1]
    _check_shapes(s.chi, u_applied, (zeta, 2 * n), (zeta_hat, 2 * n))
    chi = apply_a(s.chi) + apply_b(saturate(u_applied)) + apply_a(zeta - zeta_hat) / (1.0 + din_bound)
    return Protocol1State(chi=chi)


@partial(jax.jit, static_argnames="chi_feed")
def _protocol2_step(s, zeta, zeta_hat1, zeta_hat2, u_applied, din_bound, f1, f2, chi_feed="saturated"):
    n = u_applied.shape[-1]
    _check_shapes(s.chi, u_applied, (zeta, n), (zeta_hat1, 2 * n), (zeta_hat2, n))
    xhat1, xhat2 = s.xhat[..., :n], s.xhat[..., n:]
    scale = 1.0 / (1.0 + din_bound)

    # (A - FC) xhat + (B zeta_hat2 + F zeta) / (1 + D_in)
    xhat = jnp.concatenate(
        [
            xhat1 + xhat2 - f1 * xhat1 + scale * f1 * zeta,
            xhat2 - f2 * xhat1 + scale * (zeta_hat2 + f2 * zeta),
        ],
        axis=-1,
    )
    fed = saturate(u_applied) if chi_feed == "saturated" else u_applied
    chi = apply_a(s.chi) + apply_b(fed) + apply_a(s.xhat) - scale * apply_a(zeta_hat1)
    return Protocol2State(xhat=xhat, chi=chi)


def protocol2_step(
    s: Protocol2State,
    zeta: jnp.ndarray,
    zeta_hat1: jnp.ndarray,
    zeta_hat2: jnp.ndarray,
    u_applied: jnp.ndarray,
    din_bound: float,
    gains: GainParams,
    chi_feed="saturated",
) -> Protocol2State:
    """
    xhat(k+1) = (A - FC) xhat + (B zeta_hat2 + F zeta) / (1 + D_in(i))
    chi(k+1)  = A chi + B sat(u) + A xhat - A zeta_hat1 / (1 + D_in(i))

    With chi_feed="raw" the chi update is fed B u instead of B sat(u).
    """
    if chi_feed not in CHI_FEEDS:
        raise ValidationError(f"chi_feed must be one of {CHI_FEEDS}, got {chi_feed!r}")
    return _protocol2_step(s, zeta, zeta_hat1, zeta_hat2, u_applied, din_bound, gains.f1, gains.f2, chi_feed=chi_feed)
