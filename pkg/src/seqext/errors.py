"""Exception types shared across the package."""


class CapExceededError(RuntimeError):
    """A search or enumeration exceeded its configured size cap."""


class InfeasibleError(ValueError):
    """Requested construction parameters admit no valid witness."""
