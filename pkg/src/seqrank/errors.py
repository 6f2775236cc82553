"""Exception types shared across the package."""


class ProfileParseError(ValueError):
    """Raised when a profile, graph, or instance file is malformed.

    Carries the 1-based line number of the offending line when known.
    """

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class ResourceLimitError(RuntimeError):
    """Raised when an exact algorithm is invoked beyond its configured bound."""
