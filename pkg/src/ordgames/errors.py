"""Shared exception types."""


class GameError(ValueError):
    """Malformed game data: bad arena, objective, preorder or strategy."""


class ResourceLimitError(RuntimeError):
    """A construction would exceed a configured size bound.

    `factor` names the blowup source (e.g. "2^K occurrence bits"),
    `value` is the requested size and `bound` the configured cap.
    """

    def __init__(self, factor, value, bound):
        self.factor = factor
        self.value = value
        self.bound = bound
        super().__init__(f"{factor}: {value} exceeds bound {bound}")
