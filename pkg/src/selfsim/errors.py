class SelfSimError(Exception):
    """Base class for every error raised by this package."""


class ValidationError(SelfSimError):
    def __init__(self, message: str, violations: list[str] | None = None):
        super().__init__(message)
        self.violations = list(violations or [])


class PreconditionError(SelfSimError):
    """An operation was called on input that does not meet its stated preconditions."""


class AddressError(SelfSimError):
    pass
