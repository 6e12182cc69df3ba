"""Exception types shared across the toolkit."""


class TrustkitError(Exception):
    """Base class for all toolkit errors."""


class ValidationError(TrustkitError):
    """A model, scenario, or observation violates its invariants."""


class ContradictionError(TrustkitError):
    """An observation has zero likelihood under every candidate model."""


class ContractDerivationError(TrustkitError):
    """The task model is unsolvable, so no cost bound can be anchored."""


class ResourceExhaustedError(TrustkitError):
    """The planner hit its state-space cap before resolving the problem."""


class DegenerateTestError(TrustkitError):
    """A hypothesis test was requested on samples with no usable variance."""


class UnknownSessionError(TrustkitError):
    """A session id does not resolve to a stored session."""
