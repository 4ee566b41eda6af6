"""Exception types shared across the toolkit."""


class InputError(ValueError):
    """User-supplied data (model, formula, name, file) is unusable."""


class EmptyAnnouncementError(InputError):
    """An announcement would leave the model with no states."""


class ResourceLimitError(RuntimeError):
    """A configurable size cap was exceeded."""

    def __init__(self, message: str, cap: int | None = None):
        super().__init__(message)
        self.cap = cap
