class TPVerifyError(Exception):
    pass


class ShapeError(TPVerifyError, ValueError):
    """Incompatible matrix shapes or malformed index lists."""


class ParameterError(TPVerifyError, ValueError):
    """Recurrence or construction parameters outside their allowed range."""


class GuardError(TPVerifyError):
    """A cost guard refused to run a computation."""


class CapExceeded(GuardError):
    pass


class BudgetExceeded(GuardError):
    pass


class NetworkError(TPVerifyError, ValueError):
    """Malformed network, unknown vertex, or invalid gluing."""


class InvolutionError(TPVerifyError):
    """An input fell outside every case of an involution's dispatch."""
