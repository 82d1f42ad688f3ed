"""Exception hierarchy shared by the whole engine."""


class KoszulError(Exception):
    """Base class for all engine errors."""


class SchemaError(KoszulError):
    """Malformed input document or construction data."""


class StasheffError(KoszulError):
    """An input multiplication table violates the Stasheff identities."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotAdamsConnected(KoszulError):
    """Bar-type constructions refuse algebras whose augmentation ideal is
    not concentrated in strictly positive (or strictly negative) Adams degrees."""


class WindowOverflow(KoszulError):
    """A computation needs data beyond the declared truncation window."""


class HypothesisViolation(KoszulError):
    """Hypotheses of the resolution theorem (or a similar result) fail."""


class NonzeroDifferential(KoszulError):
    """The grading twist is only defined for zero differentials."""


class NotFiniteDimensional(KoszulError):
    """A finite-dimensional algebra was required."""


class NotConnected(KoszulError):
    """A connected graded algebra was required."""


class InternalInvariantError(KoszulError):
    """An internal consistency check failed; indicates a bug, not bad input."""
