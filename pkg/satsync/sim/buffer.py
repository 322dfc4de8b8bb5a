import numpy as np

from satsync.errors import ValidationError


class Trajectory:
    """
    Recorded closed-loop run over k = 0..horizon. Arrays are indexed [k, agent, component];
    the error arrays only cover the followers (every agent except the root).
    """

    def __init__(self, theta, followers, coupling, n, arrays):
        self.theta = theta
        self.followers = followers
        self.coupling = coupling
        self.n = n
        self._arrays = arrays
        for value in arrays.values():
            value.setflags(write=False)

    def __getattr__(self, name):
        arrays = self.__dict__.get("_arrays", {})
        if name in arrays:
            return arrays[name]
        raise AttributeError(name)

    def has(self, name):
        return name in self._arrays

    def require(self, *names):
        missing = [name for name in names if name not in self._arrays]
        if missing:
            raise ValidationError(f"trajectory was not recorded with {missing}")

    @property
    def num_steps(self):
        return self._arrays["disagreement"].shape[0]

    @property
    def steps(self):
        return np.arange(self.num_steps)


class TrajectoryBuffer:
    """
    Preallocated per-step storage for a run, filled through append().
    """

    def __init__(self, cfg, dbar):
        size = cfg.horizon + 1
        num_agents, dim, n = cfg.num_agents, 2 * cfg.n, cfg.n
        self.theta = cfg.gains.theta - 1
        self.followers = np.array([i for i in range(num_agents) if i != self.theta])
        self.coupling = cfg.coupling
        self.n = n
        self.buffer_size = size
        self._p = 0

        # x_hat targets (I - D_bar) x_bar.
        self.coupling_matrix = np.eye(dbar.shape[0]) - dbar

        record = cfg.record
        partial = cfg.coupling == "partial"
        followers = num_agents - 1
        self.arrays = {
            "disagreement": np.empty(size),
            "state_scale": np.empty(size),
            "e_norm": np.empty(size),
        }
        if partial:
            self.arrays["ebar_norm"] = np.empty(size)
        if record.states:
            self.arrays["x"] = np.empty((size, num_agents, dim))
            self.arrays["chi"] = np.empty((size, num_agents, dim))
            if partial:
                self.arrays["xhat"] = np.empty((size, num_agents, dim))
        if record.inputs or record.lyapunov:
            self.arrays["u"] = np.empty((size, num_agents, n))
            self.arrays["sigma_u"] = np.empty((size, num_agents, n))
        if record.e or record.lyapunov:
            self.arrays["xbar"] = np.empty((size, followers, dim))
            self.arrays["e"] = np.empty((size, followers, dim))
        if record.ebar and partial:
            self.arrays["ebar"] = np.empty((size, followers, dim))

    def append(self, x, chi, xhat, u, sigma_u):
        p = self._p
        assert p < self.buffer_size

        xbar = x[self.followers] - x[self.theta]
        e = xbar - chi[self.followers]
        values = {"xbar": xbar, "e": e, "x": x, "chi": chi, "xhat": xhat, "u": u, "sigma_u": sigma_u}

        self.arrays["disagreement"][p] = np.max(x.max(axis=0) - x.min(axis=0))
        self.arrays["state_scale"][p] = np.max(np.abs(x))
        self.arrays["e_norm"][p] = np.linalg.norm(e)
        if "ebar_norm" in self.arrays:
            ebar = self.coupling_matrix @ xbar - xhat[self.followers]
            values["ebar"] = ebar
            self.arrays["ebar_norm"][p] = np.linalg.norm(ebar)

        for name, value in values.items():
            if name in self.arrays and self.arrays[name].ndim == 3:
                self.arrays[name][p] = value
        self._p += 1

    def trajectory(self):
        assert self._p == self.buffer_size
        return Trajectory(
            theta=self.theta + 1,
            followers=self.followers + 1,
            coupling=self.coupling,
            n=self.n,
            arrays=self.arrays,
        )
