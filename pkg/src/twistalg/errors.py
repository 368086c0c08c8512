"""Exception types raised by the library."""

from __future__ import annotations


class TwistAlgError(Exception):
    """Base class for all library errors."""


class CompositeCharacteristic(TwistAlgError):
    """Requested field characteristic is not prime."""


class OrderDivisibleByP(TwistAlgError):
    """A requested root order shares a factor with the characteristic."""


class OrderNotSupported(TwistAlgError):
    """Root order does not divide the multiplicative group order."""


class NotInvertible(TwistAlgError):
    """Exponent inversion attempted with non-coprime modulus."""


class NoExtension(TwistAlgError):
    """Character extension system is inconsistent (bad embedding data)."""


class BadFormOrder(TwistAlgError):
    """Alternating-form entry order does not divide gcd of the factor orders."""


class NotAnAutomorphism(TwistAlgError):
    """Supplied map is not an automorphism of the group."""


# Same failure, reported from the semidirect-product side.
NotAutomorphism = NotAnAutomorphism


class NotCohomologous(TwistAlgError):
    """Two cocycles differ by more than a coboundary."""


class BadForm(TwistAlgError):
    """Alternating form rejected by the extension constructor."""


class NotIntegralM(TwistAlgError):
    """Induced character degree is not the expected integer."""


class EigenvaluesNotInField(TwistAlgError):
    """Field too small for the eigenvalues of the reduced action."""


class NoSolution(TwistAlgError):
    """No group element realises the requested commutator character."""


class ZNotCentral(TwistAlgError):
    """Mismatch element of a quadratic relation is not central."""


class DimensionMismatch(TwistAlgError):
    """Computed dimension differs from the predicted one."""


class RelationFails(TwistAlgError):
    """A presented relation does not hold in the ambient algebra."""


class CommutationFails(TwistAlgError):
    """Arrow element fails to commute with the matrix subalgebra."""


class SpanDeficient(TwistAlgError):
    """Products fail to span the expected space."""


class NoInvertibleSolution(TwistAlgError):
    """Intertwiner solution module contains no invertible element."""


class MultiplicativityFails(TwistAlgError):
    """Candidate algebra map is not multiplicative."""


class NonTerminating(TwistAlgError):
    """Rewriting closure exceeded its dimension cap."""


class ParseError(TwistAlgError):
    """Problem file is syntactically invalid."""

    def __init__(self, line: int | None, reason: str):
        self.line = line
        self.reason = reason
        where = f"line {line}: " if line is not None else ""
        super().__init__(f"{where}{reason}")


class ValidationError(TwistAlgError):
    """Problem file is well-formed but semantically invalid."""
