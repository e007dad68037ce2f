"""Exceptions that carry a short reason code into a solve outcome."""


class InconclusiveError(RuntimeError):
    """A computation could not be completed reliably (not a refutation)."""

    def __init__(self, reason, **details):
        super().__init__(reason)
        self.reason = reason
        self.details = details


class NoMeasureError(RuntimeError):
    """A necessary condition for a representing measure fails."""

    def __init__(self, reason, **details):
        super().__init__(reason)
        self.reason = reason
        self.details = details
