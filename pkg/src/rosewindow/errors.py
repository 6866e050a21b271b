"""Exception hierarchy shared by all modules."""


class RoseWindowError(Exception):
    """Base class for every error raised by this package."""


class ParameterError(RoseWindowError, ValueError):
    """Invalid (n, a, r) or other malformed input."""


class DegreeMismatch(RoseWindowError, ValueError):
    """Permutations of different degrees were combined."""


class ApplicabilityError(RoseWindowError):
    """A construction was requested for parameters outside its domain."""


class TranscriptionError(RoseWindowError):
    """A formula was applied in its domain but the result is not an automorphism.

    Distinct from :class:`ApplicabilityError`: this signals a defect in the
    transcribed formula itself rather than a bad request.
    """


class CapacityError(RoseWindowError):
    """A computation would exceed a configured size cap."""
