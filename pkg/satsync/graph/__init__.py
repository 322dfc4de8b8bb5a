from .digraph import GraphAnalysis, WeightedDigraph, analyze, graph_hash, laplacian, root_set
from .reduced import check_bounds, check_root, dbar, reduced_laplacian, resolve_bounds
