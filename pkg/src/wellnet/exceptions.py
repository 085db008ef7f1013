class ValidationError(ValueError):
    """Raised when user-supplied parameters or documents are malformed."""


class ContractError(RuntimeError):
    """Raised when a caller breaks an internal contract, e.g. updates a frozen path."""


class KinkOverlapWarning(UserWarning):
    pass


class TuningWarning(UserWarning):
    pass
