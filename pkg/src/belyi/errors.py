class ResourceLimitError(RuntimeError):
    """A computation was refused because it would exceed a configured size limit."""


class InputError(ValueError):
    """Malformed user input; ``position`` is a 0-based character offset when known."""

    def __init__(self, message: str, position: int | None = None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
