"""Shared error types."""


class InternalMismatch(AssertionError):
    """Two supposedly equivalent computations disagreed."""


class InfiniteGlobalDimension(ValueError):
    """Requested data only exists when no relation cycle closes up."""


class BoundTooLarge(ValueError):
    """An enumeration bound exceeds the configured cap."""


class TrivialInput(ValueError):
    """A nontrivial walk is required here."""
