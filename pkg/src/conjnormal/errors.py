"""Exception types raised across the package."""


class ConjNormalError(Exception):
    """Base class for all errors raised by conjnormal."""


class DomainError(ConjNormalError, ValueError):
    """Input outside the domain of an operation (shape, symmetry, sign)."""


class NumericalFailure(ConjNormalError, ArithmeticError):
    """A LAPACK routine failed to converge."""


class InvalidConjugation(DomainError):
    """Matrix is not symmetric unitary, so it does not encode a conjugation."""


class RangeError(ConjNormalError):
    """Range inclusion required by a Douglas-type factorization fails."""


class ModulusMismatch(ConjNormalError):
    """Two anti-linear maps were expected to share the same modulus."""


class NotCNormal(ConjNormalError):
    """Operator is not C-normal for the supplied conjugation."""
