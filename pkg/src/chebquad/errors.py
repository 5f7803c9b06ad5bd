"""Package-level error types."""

__all__ = ["NumericalFailure"]


class NumericalFailure(RuntimeError):
    """An iteration failed to converge or independent cross-checks disagreed."""
