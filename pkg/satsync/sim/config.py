import copy
import json
import os
from typing import NamedTuple

import yaml

from satsync.dynamics import CHI_FEEDS, GainParams
from satsync.errors import ValidationError
from satsync.graph import WeightedDigraph, analyze, check_bounds, resolve_bounds
from satsync.util import load_json, load_yaml

COUPLINGS = ("full", "partial")


class RecordFlags(NamedTuple):
    states: bool = True
    inputs: bool = True
    e: bool = True
    ebar: bool = True
    lyapunov: bool = False

    @classmethod
    def from_dict(cls, data):
        unknown = set(data) - set(cls._fields)
        if unknown:
            raise ValidationError(f"unknown record flags {sorted(unknown)}")
        return cls(**{k: bool(v) for k, v in data.items()})


class SimConfig:
    """
    Fully resolved description of one closed-loop run.
    """

    def __init__(
        self,
        graph,
        gains,
        coupling="partial",
        n=1,
        horizon=2000,
        seed=0,
        init_range=10.0,
        chi_feed="saturated",
        record=RecordFlags(),
        randomize_controllers=False,
        threshold=1e-6,
        dwell=50,
    ):
        if coupling not in COUPLINGS:
            raise ValidationError(f"coupling must be one of {COUPLINGS}, got {coupling!r}")
        if chi_feed not in CHI_FEEDS:
            raise ValidationError(f"chi_feed must be one of {CHI_FEEDS}, got {chi_feed!r}")
        if int(n) != n or n < 1:
            raise ValidationError(f"agent dimension must be a positive integer, got {n!r}")
        if int(horizon) != horizon or horizon < 1:
            raise ValidationError(f"horizon must be a positive integer, got {horizon!r}")
        if int(seed) != seed or not 0 <= seed < 2 ** 64:
            raise ValidationError(f"seed must be an unsigned 64-bit integer, got {seed!r}")
        if not init_range > 0.0:
            raise ValidationError(f"init_range must be positive, got {init_range!r}")
        if not (threshold > 0.0 and int(dwell) == dwell and dwell >= 1):
            raise ValidationError(f"invalid convergence criterion (threshold={threshold!r}, dwell={dwell!r})")
        if graph.n < 2:
            raise ValidationError("a network needs at least two agents")
        if gains.theta > graph.n:
            raise ValidationError(f"root {gains.theta} is not a node of a {graph.n}-node graph")
        if coupling == "partial":
            if not gains.has_observer:
                raise ValidationError("partial-state coupling needs observer scalars f1 and f2")
            gains.check_observer(int(n))

        analysis = analyze(graph)
        din_bounds = resolve_bounds(analysis, gains.din_bounds)
        check_bounds(analysis, gains.theta, din_bounds)

        self.graph = graph
        self.gains = gains
        self.coupling = coupling
        self.n = int(n)
        self.horizon = int(horizon)
        self.seed = int(seed)
        self.init_range = float(init_range)
        self.chi_feed = chi_feed
        self.record = record
        self.randomize_controllers = bool(randomize_controllers)
        self.threshold = float(threshold)
        self.dwell = int(dwell)
        self.din_bounds = din_bounds
        self.din_bounds.setflags(write=False)

    @property
    def num_agents(self):
        return self.graph.n

    def replace(self, **kwargs):
        """
        Copy with some fields changed, re-validated.
        """
        fields = {
            "graph": self.graph,
            "gains": self.gains,
            "coupling": self.coupling,
            "n": self.n,
            "horizon": self.horizon,
            "seed": self.seed,
            "init_range": self.init_range,
            "chi_feed": self.chi_feed,
            "record": self.record,
            "randomize_controllers": self.randomize_controllers,
            "threshold": self.threshold,
            "dwell": self.dwell,
        }
        fields.update(kwargs)
        return SimConfig(**fields)

    def to_dict(self):
        return {
            "graph": self.graph.to_dict(),
            "coupling": self.coupling,
            "gains": self.gains.gain_dict(),
            "theta": self.gains.theta,
            "din_bounds": [float(d) for d in self.din_bounds],
            "n": self.n,
            "horizon": self.horizon,
            "seed": self.seed,
            "init_range": self.init_range,
            "chi_feed": self.chi_feed,
            "record": self.record._asdict(),
            "randomize_controllers": self.randomize_controllers,
            "allow_boundary": self.gains.allow_boundary,
            "threshold": self.threshold,
            "dwell": self.dwell,
        }

    @classmethod
    def from_dict(cls, data):
        data = copy.deepcopy(data)
        try:
            graph = WeightedDigraph.from_dict(data.pop("graph"))
            gains = data.pop("gains")
            gains = GainParams(
                k1=gains["k1"],
                k2=gains["k2"],
                f1=gains.get("f1"),
                f2=gains.get("f2"),
                theta=data.pop("theta", 1),
                din_bounds=data.pop("din_bounds", None),
                allow_boundary=data.pop("allow_boundary", False),
            )
        except KeyError as e:
            raise ValidationError(f"config is missing a required field: {e}") from e
        except ValidationError:
            raise
        except (AttributeError, TypeError, ValueError) as e:
            raise ValidationError(f"malformed config: {e}") from e
        if "record" in data:
            data["record"] = RecordFlags.from_dict(data["record"])
        unknown = set(data) - {
            "coupling",
            "n",
            "horizon",
            "seed",
            "init_range",
            "chi_feed",
            "record",
            "randomize_controllers",
            "threshold",
            "dwell",
        }
        if unknown:
            raise ValidationError(f"unknown config fields {sorted(unknown)}")
        try:
            return cls(graph=graph, gains=gains, **data)
        except ValidationError:
            raise
        except (TypeError, ValueError) as e:
            raise ValidationError(f"malformed config: {e}") from e

    def __eq__(self, other):
        return isinstance(other, SimConfig) and self.to_dict() == other.to_dict()

    def __repr__(self):
        return f"SimConfig(N={self.num_agents}, coupling={self.coupling!r}, horizon={self.horizon}, seed={self.seed})"


def load_config(path):
    """
    Read a SimConfig from a .json or .yaml/.yml file.
    """
    ext = os.path.splitext(path)[1].lower()
    if ext == ".json":
        try:
            data = load_json(path)
        except json.JSONDecodeError as e:
            raise ValidationError(f"{path} is not valid JSON: {e}") from e
    elif ext in (".yaml", ".yml"):
        try:
            data = load_yaml(path)
        except yaml.YAMLError as e:
            raise ValidationError(f"{path} is not valid YAML: {e}") from e
    else:
        raise ValidationError(f"unsupported config format {ext!r}, expected .json, .yaml or .yml")
    if not isinstance(data, dict):
        raise ValidationError(f"{path} does not hold a config object")
    return SimConfig.from_dict(data)
