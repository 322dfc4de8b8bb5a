from datetime import timedelta
from functools import partial
from time import time

import jax
import jax.numpy as jnp
import numpy as np
from tqdm import tqdm

from satsync.dynamics import (
    AgentState,
    Protocol1State,
    Protocol2State,
    agent_step,
    control_input,
    diffusive_coupling,
    protocol1_step,
    protocol2_step,
    saturate,
    split_exchange,
)
from satsync.errors import DimensionError, DivergenceError
from satsync.graph import analyze, dbar
from satsync.sim.buffer import TrajectoryBuffer
from satsync.sim.initial import sample_initials

DIVERGENCE_BOUND = 1e12


class Simulator:
    """
    Closed-loop simulator of N saturated double integrators driven by Protocol 1 (full-state
    coupling) or Protocol 2 (partial-state coupling with an observer).
    """

    def __init__(
        self,
        cfg,
        progress=False,
        writer=None,
    ):
        # Graph.
        self.dbar = dbar(analyze(cfg.graph), cfg.gains.theta, cfg.din_bounds)
        self.weights = jnp.asarray(cfg.graph.weights)
        self.din = jnp.asarray(cfg.din_bounds)
        self.is_root = (np.arange(cfg.num_agents) == cfg.gains.theta - 1)[:, None]

        # Protocol.
        self.cfg = cfg
        self.n = cfg.n
        self.k1 = cfg.gains.k1
        self.k2 = cfg.gains.k2

        # Log setting.
        self.progress = progress
        self.writer = writer

    @partial(jax.jit, static_argnums=0)
    def _input(self, chi):
        u = control_input(chi, self.k1, self.k2)
        return jnp.where(self.is_root, 0.0, u)

    @partial(jax.jit, static_argnums=0)
    def _step_full(self, x, chi):
        u = self._input(chi)
        zeta = diffusive_coupling(self.weights, x)
        zeta_hat = diffusive_coupling(self.weights, chi)
        chi = jax.vmap(protocol1_step)(Protocol1State(chi), zeta, zeta_hat, u, self.din).chi
        x = jax.vmap(agent_step)(AgentState.from_vector(x), u).vector
        return x, jnp.where(self.is_root, 0.0, chi)

    @partial(jax.jit, static_argnums=0)
    def _step_partial(self, x, xhat, chi):
        u = self._input(chi)
        zeta = diffusive_coupling(self.weights, x[:, : self.n])
        zeta_hat = diffusive_coupling(self.weights, jnp.concatenate([chi, saturate(u)], axis=-1))
        zeta_hat1, zeta_hat2 = split_exchange(zeta_hat, self.n)

        def step(s, zeta, zeta_hat1, zeta_hat2, u, din):
            return protocol2_step(s, zeta, zeta_hat1, zeta_hat2, u, din, self.cfg.gains, self.cfg.chi_feed)

        s = jax.vmap(step)(Protocol2State(xhat, chi), zeta, zeta_hat1, zeta_hat2, u, self.din)
        x = jax.vmap(agent_step)(AgentState.from_vector(x), u).vector
        return x, jnp.where(self.is_root, 0.0, s.xhat), jnp.where(self.is_root, 0.0, s.chi)

    def _check(self, step, *states):
        peak = np.max([np.abs(s) for s in states if s is not None], axis=(0, 2))
        bad = np.flatnonzero(~(peak <= DIVERGENCE_BOUND))
        if len(bad):
            agent = int(bad[0])
            raise DivergenceError(step, agent + 1, float(peak[agent]))

    def _check_initials(self, initials):
        shape = (self.cfg.num_agents, 2 * self.n)
        for name, value in initials._asdict().items():
            if value is not None and np.shape(value) != shape:
                raise DimensionError(f"initial {name} has shape {np.shape(value)}, expected {shape}")
        if self.cfg.coupling == "partial" and initials.xhat is None:
            raise DimensionError("partial-state coupling needs an initial observer state")

    def run(self, initials=None):
        """
        Run the configured horizon and return the recorded Trajectory.
        """
        cfg = self.cfg
        if initials is None:
            initials = sample_initials(cfg)
        self._check_initials(initials)
        partial_coupling = cfg.coupling == "partial"

        x = jnp.asarray(initials.x, dtype=jnp.float64)
        chi = jnp.where(self.is_root, 0.0, jnp.asarray(initials.chi, dtype=jnp.float64))
        xhat = jnp.where(self.is_root, 0.0, jnp.asarray(initials.xhat, dtype=jnp.float64)) if partial_coupling else None
        buffer = TrajectoryBuffer(cfg, self.dbar)

        # Time to start simulating.
        self.start_time = time()
        steps = range(cfg.horizon + 1)
        if self.progress:
            steps = tqdm(steps, leave=False)

        for k in steps:
            u = self._input(chi)
            buffer.append(
                np.asarray(x),
                np.asarray(chi),
                None if xhat is None else np.asarray(xhat),
                np.asarray(u),
                np.asarray(saturate(u)),
            )
            if self.writer is not None:
                self._log(k, buffer)
            if k == cfg.horizon:
                break

            if partial_coupling:
                x, xhat, chi = self._step_partial(x, xhat, chi)
            else:
                x, chi = self._step_full(x, chi)
            self._check(k + 1, np.asarray(x), np.asarray(chi), None if xhat is None else np.asarray(xhat))

        return buffer.trajectory()

    def _log(self, k, buffer):
        self.writer.add_scalar("sync/disagreement", buffer.arrays["disagreement"][k], k)
        self.writer.add_scalar("sync/e_norm", buffer.arrays["e_norm"][k], k)
        if "ebar_norm" in buffer.arrays:
            self.writer.add_scalar("sync/ebar_norm", buffer.arrays["ebar_norm"][k], k)

    @property
    def time(self):
        return str(timedelta(seconds=int(time() - self.start_time)))


def run(cfg, initials=None, progress=False, writer=None):
    """
    Simulate cfg from initials (sampled from cfg.seed when omitted).
    """
    return Simulator(cfg, progress=progress, writer=writer).run(initials)
