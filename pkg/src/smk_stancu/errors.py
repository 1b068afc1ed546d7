"""Exception types shared across the package."""


class SMKError(Exception):
    """Base class for package-specific errors."""


class DomainError(SMKError, ValueError):
    """An argument lies outside the mathematical domain of the operation."""


class TruncationFailure(SMKError, RuntimeError):
    """The basis series hit the term cap before reaching the mass criterion."""

    def __init__(self, message: str, mass: float, terms: int):
        super().__init__(message)
        self.mass = mass
        self.terms = terms


class UnsupportedOrder(SMKError, ValueError):
    """No closed form is implemented for the requested moment order."""


class UnknownFunction(SMKError, KeyError):
    """The requested name is not in the test-function registry."""


class MissingDerivative(SMKError, ValueError):
    """The operation needs a derivative the function spec does not provide."""


class MissingOneSided(SMKError, ValueError):
    """The operation needs one-sided derivative values at a point."""


class ConfigError(SMKError, ValueError):
    """An experiment configuration is malformed or inconsistent."""
