"""Exception hierarchy shared by all spectrakit modules."""


class SpectraError(Exception):
    """Base class for every error raised by spectrakit."""


class InputError(SpectraError):
    """Malformed user input (files, arguments)."""

    def __init__(self, message, line=None, source=None):
        self.line = line
        self.source = source
        where = ""
        if source is not None:
            where += f"{source}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {message}" if where else message)


class RingMismatch(SpectraError, ValueError):
    pass


class NotDivisible(SpectraError, ArithmeticError):
    pass


class MixedRadicand(SpectraError, ValueError):
    """Scalars from incompatible quadratic extensions were combined."""


class UnsupportedField(SpectraError):
    """The computation would leave the supported fields (Q and towers of two quadratic steps)."""


class HypothesisViolation(SpectraError):
    """A precondition the caller is responsible for does not hold."""


class InfiniteMultiplicity(HypothesisViolation):
    pass


class NotFound(HypothesisViolation):
    pass


class ProfileViolation(SpectraError):
    pass


class NormalizationRequired(HypothesisViolation):
    pass


class NotABallPencil(HypothesisViolation):
    pass


class CapExceeded(SpectraError):
    """Groebner computation hit the degree cap; the instance is too big, not wrong."""


class RankTooHigh(HypothesisViolation):
    pass


class RankTooLow(HypothesisViolation):
    pass


class NotCompression(SpectraError):
    """The arrow normal form could not be reached."""


class SizeExceeded(SpectraError):
    pass


class DegreeNotThree(HypothesisViolation):
    pass


class InternalCheckFailed(SpectraError):
    """A post-condition that the mathematics guarantees did not hold."""
