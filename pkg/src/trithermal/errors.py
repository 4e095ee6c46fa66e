"""Exception types shared across the package."""


class NonHermitianError(ValueError):
    """Input matrix fails its Hermiticity check."""


class DimensionMismatchError(ValueError):
    """Operands have incompatible or unsupported dimensions."""


class NotNormalizedError(ValueError):
    """State-vector amplitudes are not normalized."""


class InvalidStateError(ValueError):
    """Matrix violates the density-matrix invariants beyond tolerance."""


class UnequalRatesError(ValueError):
    """Closed-form expression requires equal per-qubit damping rates."""


class NoCrossingError(RuntimeError):
    """A required threshold crossing does not exist in the search window."""
