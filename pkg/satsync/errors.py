class SatSyncError(Exception):
    """
    Base class for errors raised by satsync.
    """


class ValidationError(SatSyncError, ValueError):
    """
    Malformed input: bad weights, bad config fields, asymmetric matrices.
    """


class DimensionError(ValidationError):
    """
    Shape mismatch or non-square input.
    """


class GainError(ValidationError):
    """
    Gains outside the solvable zone, or an observer gain with A - FC not Schur.
    """


class GraphError(SatSyncError):
    pass


class NoSpanningTreeError(GraphError):
    def __init__(self):
        super(NoSpanningTreeError, self).__init__("graph contains no directed spanning tree")


class InvalidRootError(GraphError):
    def __init__(self, theta, root_set):
        self.theta = theta
        self.root_set = sorted(root_set)
        super(InvalidRootError, self).__init__(f"node {theta} is not a root; root set is {self.root_set}")


class BoundViolationError(GraphError):
    def __init__(self, node, bound, in_degree):
        self.node = node
        self.bound = bound
        self.in_degree = in_degree
        super(BoundViolationError, self).__init__(
            f"in-degree bound {bound!r} of node {node} is below its weighted in-degree {in_degree!r}"
        )


class UnstableMatrixError(SatSyncError, ValueError):
    pass


class CertificateError(SatSyncError):
    pass


class ConsistencyError(SatSyncError):
    pass


class DivergenceError(SatSyncError):
    def __init__(self, step, agent, value):
        self.step = step
        self.agent = agent
        self.value = value
        super(DivergenceError, self).__init__(f"state diverged at step {step}, agent {agent} (|x| = {value!r})")
