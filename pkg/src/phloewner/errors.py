"""Exception hierarchy.

Every error raised on purpose by the library derives from
:class:`PHLoewnerError`. Data problems (bad input, inconsistent interpolation
data) derive from :class:`DataError`; breakdowns of a numerical step derive
from :class:`NumericalError`. The CLI maps the two families to exit codes 2
and 3.
"""


class PHLoewnerError(Exception):
    exit_code = 1


class DataError(PHLoewnerError, ValueError):
    exit_code = 2


class NumericalError(PHLoewnerError, ArithmeticError):
    exit_code = 3


# data errors
class DimensionError(DataError):
    pass


class InvalidSpectralData(DataError):
    pass


class PointCollision(DataError):
    pass


class NotSelfConjugate(DataError):
    pass


class DNotStrictlyPositiveReal(DataError):
    pass


class CertificateInvalid(DataError):
    pass


class XNotPositiveDefinite(DataError):
    pass


class DescriptorUnsupported(DataError):
    pass


class NotPassiveRealization(DataError):
    pass


class TooFewSamples(DataError):
    pass


class EmptyBand(DataError):
    pass


# numerical errors
class SingularPencil(NumericalError):
    pass


class SingularLoewner(NumericalError):
    pass


class SingularEvenPencil(NumericalError):
    pass


class ResidualCheckFailed(NumericalError):
    def __init__(self, message, offending=()):
        super().__init__(message)
        self.offending = list(offending)


class UnexpectedZeroCount(NumericalError):
    def __init__(self, found, expected, message=None):
        self.found = found
        self.expected = expected
        if message is None:
            message = f"found {found} right half-plane spectral zeros, expected {expected}"
        super().__init__(message)


class PickNotPositiveDefinite(NumericalError):
    def __init__(self, minor, message=None):
        self.minor = minor
        if message is None:
            message = f"Pick matrix is not positive definite (leading minor {minor} fails)"
        super().__init__(message)
