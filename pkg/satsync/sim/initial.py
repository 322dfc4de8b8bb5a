from typing import NamedTuple, Optional

import numpy as np


class Initials(NamedTuple):
    x: np.ndarray
    chi: np.ndarray
    xhat: Optional[np.ndarray] = None


def make_rng(seed):
    """
    PCG64 generator seeded through numpy's SeedSequence.
    """
    return np.random.Generator(np.random.PCG64(seed))


def uniform_draws(rng, shape, bound):
    return rng.uniform(-bound, bound, size=shape) if bound > 0.0 else np.zeros(shape)


def sample_initials(cfg):
    """
    Agent states uniform on [-init_range, init_range], drawn first; controller states are zero
    unless cfg.randomize_controllers, in which case chi (then xhat) are drawn next. The root's
    controller states are always zero.
    """
    rng = make_rng(cfg.seed)
    shape = (cfg.num_agents, 2 * cfg.n)
    x = uniform_draws(rng, shape, cfg.init_range)

    if cfg.randomize_controllers:
        chi = uniform_draws(rng, shape, cfg.init_range)
        xhat = uniform_draws(rng, shape, cfg.init_range) if cfg.coupling == "partial" else None
    else:
        chi = np.zeros(shape)
        xhat = np.zeros(shape) if cfg.coupling == "partial" else None

    root = cfg.gains.theta - 1
    chi[root] = 0.0
    if xhat is not None:
        xhat[root] = 0.0
    return Initials(x=x, chi=chi, xhat=xhat)
