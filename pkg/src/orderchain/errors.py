"""Exception types shared across the package."""


class OrderChainError(Exception):
    pass


class CycleError(OrderChainError):
    """Cover data whose closure is not antisymmetric."""


class EmptySetError(OrderChainError, ValueError):
    pass


class NotIdealError(OrderChainError, ValueError):
    pass


class NotAntichainError(OrderChainError, ValueError):
    pass


class NotInOmegaError(OrderChainError, ValueError):
    pass


class NotInPsiError(OrderChainError, ValueError):
    pass


class NotValidError(OrderChainError, ValueError):
    """A vertex violates a candidate inequality."""


class SizeError(OrderChainError):
    """Input exceeds a configured enumeration guard."""


class PosetFormatError(OrderChainError, ValueError):
    def __init__(self, message, lineno=None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)
