"""Exception types raised when an object fails validation."""


class ValidationError(ValueError):
    """An input violates a documented invariant.

    ``invariant`` names the broken condition and ``magnitude`` (when known)
    records by how much it was violated.
    """

    def __init__(self, invariant, magnitude=None, detail=""):
        self.invariant = invariant
        self.magnitude = magnitude
        msg = invariant
        if magnitude is not None:
            msg += f" (violation magnitude {magnitude:.3g})"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


class DimensionError(ValidationError):
    """Operands have incompatible dimensions."""

    def __init__(self, detail):
        super().__init__("dimension mismatch", None, detail)
