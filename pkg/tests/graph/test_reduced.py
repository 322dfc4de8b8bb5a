import numpy as np
import pytest

from satsync.errors import BoundViolationError, InvalidRootError, NoSpanningTreeError
from satsync.graph import WeightedDigraph, analyze, dbar, reduced_laplacian, resolve_bounds
from satsync.linalg import kron, spectral_radius
from satsync.sim import case_graph

A = np.array([[1.0, 1.0], [0.0, 1.0]])


def random_rooted_digraph(rng):
    """
    Random weighted digraph on at most 12 nodes that contains a spanning tree rooted at the
    returned node.
    """
    n = int(rng.integers(2, 13))
    weights = rng.uniform(0.1, 3.0, size=(n, n)) * (rng.random((n, n)) < rng.uniform(0.0, 0.4))
    order = rng.permutation(n)
    for position in range(1, n):
        child, parent = order[position], order[rng.integers(position)]
        weights[child, parent] = rng.uniform(0.1, 3.0)
    np.fill_diagonal(weights, 0.0)
    return WeightedDigraph(weights), int(order[0]) + 1


def test_case_one():
    analysis = analyze(case_graph("I"))
    lap_hat = reduced_laplacian(analysis, 1)
    assert np.array_equal(lap_hat, [[1.0, 0.0, 0.0], [-1.0, 1.0, 0.0], [0.0, -1.0, 1.0]])

    d = dbar(analysis, 1)
    assert np.array_equal(d, [[0.5, 0.0, 0.0], [0.5, 0.5, 0.0], [0.0, 0.5, 0.5]])
    assert abs(spectral_radius(d) - 0.5) < 1e-10
    assert abs(spectral_radius(kron(d, A)) - 0.5) < 1e-10


def test_single_edge():
    g = WeightedDigraph.from_edges(2, [(1, 2, 1.0)])
    assert np.array_equal(dbar(analyze(g), 1), [[0.5]])


@pytest.mark.parametrize("which", ["I", "II", "III"])
def test_case_contraction(which):
    d = dbar(analyze(case_graph(which)), 1)
    assert spectral_radius(d) < 1.0
    assert spectral_radius(kron(d, A)) < 1.0


def test_looser_bounds():
    analysis = analyze(case_graph("I"))
    d = dbar(analysis, 1, din_bounds=[0.0, 2.0, 2.0, 2.0])
    expected = np.eye(3) - reduced_laplacian(analysis, 1) / 3.0
    assert np.allclose(d, expected)
    assert spectral_radius(d) < 1.0

    assert np.array_equal(resolve_bounds(analysis), [0.0, 1.0, 1.0, 1.0])


def test_root_errors():
    g = case_graph("I")
    with pytest.raises(InvalidRootError, match=r"\[1\]") as e:
        dbar(analyze(g), 3)
    assert e.value.theta == 3
    assert e.value.root_set == [1]

    empty = WeightedDigraph(np.zeros((3, 3)))
    with pytest.raises(NoSpanningTreeError, match="graph contains no directed spanning tree"):
        dbar(analyze(empty), 1)


def test_bound_violation():
    with pytest.raises(BoundViolationError) as e:
        dbar(analyze(case_graph("I")), 1, din_bounds=[0.0, 1.0, 0.5, 1.0])
    assert e.value.node == 3

    # The root's bound is never used.
    dbar(analyze(case_graph("I")), 1, din_bounds=[-5.0, 1.0, 1.0, 1.0])


def test_random_rooted_digraphs():
    rng = np.random.default_rng(0)
    for _ in range(1000):
        g, theta = random_rooted_digraph(rng)
        analysis = analyze(g)
        assert theta in analysis.root_set
        d = dbar(analysis, theta)
        assert spectral_radius(d) < 1.0
        assert np.min(np.linalg.eigvals(reduced_laplacian(analysis, theta)).real) > 0.0


def random_digraph(rng):
    """
    Weights in (0, 2] on each off-diagonal entry with probability 0.3, at most 12 nodes.
    """
    n = int(rng.integers(2, 13))
    weights = (2.0 - rng.uniform(0.0, 2.0, size=(n, n))) * (rng.random((n, n)) < 0.3)
    np.fill_diagonal(weights, 0.0)
    return WeightedDigraph(weights)


def test_random_digraphs_every_root():
    rng = np.random.default_rng(1)
    rooted = 0
    while rooted < 1000:
        analysis = analyze(random_digraph(rng))
        if not analysis.root_set:
            continue
        rooted += 1
        for theta in sorted(analysis.root_set):
            assert spectral_radius(dbar(analysis, theta)) < 1.0

            loose = analysis.in_degrees + rng.uniform(0.0, 5.0, size=analysis.in_degrees.shape)
            assert spectral_radius(dbar(analysis, theta, din_bounds=loose)) < 1.0
