"""Exception types shared across the package."""


class AbelblowError(Exception):
    """Base class for all package errors."""


class InvalidInputError(AbelblowError):
    """An operation precondition was violated (bad shape, zero vector, rank mismatch)."""


class PrecisionInsufficientError(AbelblowError):
    """A floating integer-relation candidate fell between the accept and reject
    thresholds, so the heuristic closure cannot be trusted at this precision."""


class DegenerateComplexPlaneError(AbelblowError):
    """The 4-plane is complex (its intersection with its i-image is the whole
    plane), so the generic normal form does not exist."""


class LiftUndefinedError(AbelblowError):
    """The curve meets the blow-up center inside its domain disc; no chart lift."""


class NoRootError(AbelblowError):
    """No root inside the requested search disc (argument-principle count is zero)."""


class HypothesisViolatedError(AbelblowError):
    """A transversality hypothesis of the obstruction experiment failed.

    `condition` is 1 (tangent direction lies in the center line) or
    2 (orbit-closure tangent is contained in center-plus-direction span).
    """

    def __init__(self, condition: int, message: str):
        super().__init__(message)
        self.condition = condition


class SearchBudgetError(AbelblowError):
    """A bounded enumeration (lattice translate search, w-search) exhausted its
    budget without finding a witness."""


class CapacityError(AbelblowError):
    """A growing enumeration exceeded its configured size limit."""


class ConfigError(AbelblowError):
    """Invalid experiment configuration (bad value, unknown key, missing file)."""
