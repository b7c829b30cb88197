"""Exception types shared across the package."""


class GaugeProbError(Exception):
    """Base class for all gaugeprob errors."""


class InvalidGaugeError(GaugeProbError):
    """A gauge evaluator returned a non-positive or non-finite width."""


class PartitionDepthError(GaugeProbError):
    """Bisection hit the depth cap; the gauge evaluator is pathological."""


class EvaluationError(GaugeProbError):
    """An integrand returned a non-finite value.

    Carries the offending tag (and outcome index, for random functions).
    """

    def __init__(self, message, tag=None, outcome=None):
        super().__init__(message)
        self.tag = tag
        self.outcome = outcome


class SpaceMismatchError(GaugeProbError):
    """Two random variables do not live on the same probability space."""


class NonConvergenceError(GaugeProbError):
    """A scalar quadrature failed to converge within the level budget.

    ``index`` names the offending basis term when raised from a separable
    integration.
    """

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class ScenarioError(GaugeProbError):
    """A scenario file or run configuration is malformed; names the field."""
