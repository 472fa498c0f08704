"""Exception types shared across modules; the CLI maps them onto exit codes."""


class SizeCapError(ValueError):
    """An input exceeds a configured size or oracle cap."""

    def __init__(self, message: str, cap: int):
        super().__init__(message)
        self.cap = cap


class ToleranceViolation(RuntimeError):
    """An internal cross-check (oracle agreement, drift guard) exceeded its tolerance."""
