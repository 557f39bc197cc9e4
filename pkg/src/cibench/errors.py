"""Exception hierarchy.

Every error raised by the toolkit derives from :class:`CIBenchError`.  The two
intermediate classes decide the command-line exit status: input/validation
problems exit with 2, statistical degeneracies with 3.
"""


class CIBenchError(Exception):
    """Base class for all toolkit errors."""


class ValidationError(CIBenchError):
    exit_code = 2


class DegeneracyError(CIBenchError):
    exit_code = 3


# ingestion
class MalformedCsv(ValidationError):
    pass


class SchemaViolation(ValidationError):
    pass


class DuplicateKey(ValidationError):
    pass


class EmptyDataset(ValidationError):
    pass


class InsufficientData(ValidationError):
    """A survey record lacks both members of a required field pair."""


# statistics
class InsufficientRows(DegeneracyError):
    pass


class SingularDesign(DegeneracyError):
    pass


class DegenerateResponse(DegeneracyError):
    """Response has zero total sum of squares."""


class DegenerateSample(DegeneracyError):
    """A rank-correlation input is entirely tied."""


class DomainError(DegeneracyError):
    pass


class LengthMismatch(ValidationError):
    pass


class TooManyPredictors(ValidationError):
    pass


# analysis / benchmarking / rendering
class UnknownScope(ValidationError):
    pass


class ZeroBasis(ValidationError):
    pass


class BasisMismatch(ValidationError):
    pass


class UnsupportedFormat(ValidationError):
    pass
