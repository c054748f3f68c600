"""Exception hierarchy.

Mathematical precondition failures derive from :class:`MotivicError`;
input-format problems raise :class:`SchemaError`; broken internal
cross-checks raise :class:`InvariantViolation`.
"""


class MotivicError(Exception):
    """A mathematical precondition was not met."""


class SchemaError(ValueError):
    """Input document does not match its schema."""

    def __init__(self, field, message):
        self.field = field
        super().__init__(f"{field}: {message}")


class InvariantViolation(AssertionError):
    """An internal consistency check failed."""


class EmptyPolyhedronError(MotivicError):
    pass


class DimensionLimitError(MotivicError):
    pass


class OverlapError(MotivicError):
    pass


class AmbientDimensionError(MotivicError):
    pass


class DimensionBoundError(MotivicError):
    """A variety class is too large for the dimension it is tagged with."""


class DegenerateSupportError(MotivicError):
    pass


class NonSimpleCurveError(MotivicError):
    pass


class SchoenError(MotivicError):
    """The schön sanity report does not allow the requested computation."""


class TruncationError(MotivicError):
    pass
