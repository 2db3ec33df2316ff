"""Exception types shared across the package."""


class ValidationError(ValueError):
    """Bad user input: non-Hermitian matrices, malformed JSON, bad points."""


class PreconditionError(ValueError):
    """A function was called outside its documented domain."""


class InternalConsistencyError(RuntimeError):
    """Two computations that must agree did not. Signals a bug, not bad input."""
