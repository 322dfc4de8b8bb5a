from satsync.dynamics import GainParams
from satsync.graph import WeightedDigraph
from satsync.sim.config import SimConfig

CASES = ("I", "II", "III")

CASE_GAINS = {"k1": 0.5, "k2": 1.0, "f1": 1.5, "f2": 0.5}
CASE_THETA = 1

CASE_HORIZONS = {"I": 2000, "II": 5000, "III": 20000}


def case_edges(which):
    """
    (from, to, weight) triples; a_ij = 1 is the edge j -> i.
    """
    if which == "I":
        pairs = [(2, 1), (3, 2), (4, 3)]
        n = 4
    elif which == "II":
        pairs = [(2, 1), (3, 2), (4, 3), (2, 4), (5, 4), (4, 7), (6, 5), (7, 6)]
        n = 7
    elif which == "III":
        pairs = [(i + 1, i) for i in range(1, 60)] + [(1, 60)]
        n = 60
    else:
        raise ValueError(f"unknown case {which!r}, expected one of {CASES}")
    return n, [(j, i, 1.0) for i, j in pairs]


def case_graph(which):
    n, edges = case_edges(which)
    return WeightedDigraph.from_edges(n, edges)


def build_case(which, coupling="partial", seed=0, **kwargs):
    """
    Config for one of the three reference networks. Every case shares the same gain block.
    """
    graph = case_graph(which)
    gains = GainParams(theta=CASE_THETA, **CASE_GAINS)
    kwargs.setdefault("horizon", CASE_HORIZONS[which])
    kwargs.setdefault("init_range", 10.0)
    return SimConfig(graph=graph, gains=gains, coupling=coupling, n=1, seed=seed, **kwargs)
