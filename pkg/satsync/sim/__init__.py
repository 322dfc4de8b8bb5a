from .buffer import Trajectory, TrajectoryBuffer
from .cases import CASE_HORIZONS, CASES, CASE_GAINS, build_case, case_edges, case_graph
from .config import COUPLINGS, RecordFlags, SimConfig, load_config
from .engine import DIVERGENCE_BOUND, Simulator, run
from .initial import Initials, make_rng, sample_initials, uniform_draws
