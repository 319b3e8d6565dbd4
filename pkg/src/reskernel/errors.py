"""Shared exception types."""
from __future__ import annotations


class InternalCheckError(AssertionError):
    """Two independent computations of the same quantity disagreed.

    Raised when a combinatorial result and its linear-algebra cross-check
    diverge (e.g. a sign-convention bug). Never a user error.
    """
