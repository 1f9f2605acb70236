"""Exception types shared across the package."""


class EqDecompError(ValueError):
    """Invalid input: a malformed permutation, graph, matrix or plan."""


class NotAutomorphismError(EqDecompError):
    """A permutation fails ``M[phi(i), phi(j)] == M[i, j]`` for some pair."""

    def __init__(self, message: str, pair: tuple[int, int] | None = None):
        super().__init__(message)
        self.pair = pair


class InvariantViolation(RuntimeError):
    """An internal consistency check failed after a computation step."""
