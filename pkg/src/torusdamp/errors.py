"""Exception types shared across the package."""


class ConfigError(ValueError):
    """Invalid configuration: bad parameter value, unknown key, bad file."""


class IntegrationError(RuntimeError):
    """The per-cell substep integrator failed to converge."""

    def __init__(self, cell_index: int, state: float, message: str = ""):
        self.cell_index = cell_index
        self.state = state
        detail = message or "substep integrator did not converge"
        super().__init__(f"{detail} (cell {cell_index}, modulus {state!r})")


class BlowUpError(RuntimeError):
    """Non-finite values appeared in the evolving field."""

    def __init__(self, t: float):
        self.t = t
        super().__init__(f"non-finite field values detected at t={t!r}")


class ZeroFieldError(ValueError):
    """A ratio diagnostic was requested for an identically-zero field."""
