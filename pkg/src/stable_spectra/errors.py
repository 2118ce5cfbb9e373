"""Exception types shared across the package."""


class ValidationError(ValueError):
    """Input violates a structural requirement (off-sphere atom, asymmetry, shape)."""


class IntegrityError(ArithmeticError):
    """A quantity that must hold by construction does not (corrupted input or a bug)."""


class CapabilityError(RuntimeError):
    """The object lacks what the requested operation needs."""
