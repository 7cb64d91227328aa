"""Exception types shared across the package."""


class HaarcayError(Exception):
    """Base class for all errors raised by this package."""


class InvalidParameterError(HaarcayError):
    """An argument violates an operation's precondition."""


class InvalidPresentationError(InvalidParameterError):
    """Presentation parameters do not define a group of the expected order."""

    def __init__(self, message: str, axiom: str = ""):
        super().__init__(message)
        self.axiom = axiom


class InvalidConnectionSetError(InvalidParameterError):
    """Connection set contains the identity or is not inverse-closed."""


class InvalidWitnessError(InvalidParameterError):
    """A claimed (g, alpha) witness fails one of its defining conditions."""


class NotBipartiteError(HaarcayError):
    """Graph contains an odd cycle; the cycle is attached as a certificate."""

    def __init__(self, odd_cycle):
        super().__init__(f"graph is not bipartite; odd cycle {list(odd_cycle)}")
        self.odd_cycle = tuple(odd_cycle)


class ResourceLimitError(HaarcayError):
    """A configured size or budget bound was exceeded."""


class VerificationError(HaarcayError):
    """An internal self-check failed; this always signals a bug."""
