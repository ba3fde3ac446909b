"""Exception hierarchy shared by every module."""


class ExdivError(Exception):
    """Base class for all errors raised by exdiv."""


class InvalidInput(ExdivError, ValueError):
    """Malformed or out-of-range input data."""


class NonSymmetric(InvalidInput):
    """A symmetric matrix was required."""


class NotNegativeDefinite(InvalidInput):
    """A curve system failed the negative-definiteness check."""


class SingularMatrix(ExdivError, ArithmeticError):
    """The linear system has no unique solution."""


class HypothesisViolated(ExdivError, ValueError):
    """Sign preconditions of a lemma-style operation do not hold."""


class InvalidE(InvalidInput):
    """The completion divisor is not effective or not supported on exceptional rays."""


class LemmaViolation(ExdivError, AssertionError):
    """A proven conclusion failed to hold; always an implementation bug."""
