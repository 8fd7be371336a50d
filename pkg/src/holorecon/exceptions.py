class DegenerateInputError(ValueError):
    """Input carries no usable signal (all-zero hologram, empty grid, ...)."""


class GridParseError(ValueError):
    """Malformed HOLOGRID1 content. ``line`` is 1-based."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ScenarioParseError(ValueError):
    """Malformed scenario config. ``key`` names the offending key if known."""

    def __init__(self, message, key=None, line=None):
        self.key = key
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
