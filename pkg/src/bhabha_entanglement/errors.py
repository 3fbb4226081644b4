"""Exception types raised by the library."""


class DomainError(ValueError):
    """An argument lies outside the domain of the operation."""


class PoleError(ArithmeticError):
    """Evaluation too close to the forward t-channel pole at theta = 0 (mod 2 pi)."""


class DegenerateStateError(ArithmeticError):
    """A state vector or density matrix has (numerically) zero norm."""


class NumericalDegradationError(ArithmeticError):
    """A numerical residue exceeded the level that can be safely discarded."""

    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}


class QuadratureError(ArithmeticError):
    """An angular quadrature failed to reach the requested tolerance."""

    def __init__(self, message, achieved=None):
        super().__init__(message)
        self.achieved = achieved
