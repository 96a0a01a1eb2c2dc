class TeichRandersError(Exception):
    """Base class for every error raised by the package."""


class DomainError(TeichRandersError, ValueError):
    """An input lies outside the domain of an operation."""


class DegeneratePathError(TeichRandersError, ValueError):
    """A path cannot be built (equal endpoints, too few samples)."""


class DimensionMismatchError(TeichRandersError, ValueError):
    """Objects from different model spaces were combined."""


class KernelUnavailableError(TeichRandersError):
    """The grid is too small to carry a nonzero kernel element."""


class CometricUndefinedError(DomainError):
    """The Randers form is too long for the cometric to be a norm."""

    def __init__(self, psi_norm: float):
        self.psi_norm = psi_norm
        super().__init__(f"cometric undefined: ‖ψ‖₁ ≥ 1 (got {psi_norm:.12g})")


class AssertionFailure(TeichRandersError):
    """A numerical postcondition was violated beyond tolerance."""


class UsageError(TeichRandersError, ValueError):
    """Malformed literal, unknown suite or unusable sample count."""
