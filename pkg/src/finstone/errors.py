"""Exception hierarchy.

Two families: :class:`ValidationError` for malformed or out-of-contract input
(the CLI maps these to exit code 2) and :class:`VerificationError` for a failed
internal consistency check (exit code 3).  A verification error always means a
bug, since the checked identities are theorems.
"""


class FinstoneError(Exception):
    """Base class.  ``witness`` carries the offending data in JSON-able form."""

    def __init__(self, message="", witness=None):
        super().__init__(message)
        self.witness = witness

    def to_json(self):
        return {
            "error": type(self).__name__,
            "message": str(self),
            "witness": self.witness,
        }


class ValidationError(FinstoneError, ValueError):
    pass


class VerificationError(FinstoneError, AssertionError):
    pass


# order-core
class DuplicateElement(ValidationError):
    pass


class UnknownElement(ValidationError, KeyError):
    def __str__(self):
        return self.args[0] if self.args else ""


class NotReflexive(ValidationError):
    pass


class NotAntisymmetric(ValidationError):
    pass


class NotTransitive(ValidationError):
    pass


class NotDownward(ValidationError):
    pass


class TooLarge(ValidationError):
    pass


# lattice
class NotLattice(ValidationError):
    def __init__(self, law, witness):
        super().__init__(f"lattice law {law!r} fails at {witness}", witness)
        self.law = law


class NotDistributive(ValidationError):
    pass


class BottomViolation(ValidationError):
    pass


class TopViolation(ValidationError):
    pass


class NotBounded(ValidationError):
    pass


class NotAHom(ValidationError):
    pass


# sites
class NoMeet(ValidationError):
    pass


class InvalidCovering(ValidationError):
    pass


class BaseChangeViolation(ValidationError):
    pass


class LocalityViolation(ValidationError):
    pass


# motives
class NotAValuation(ValidationError):
    pass


class TorsionFound(VerificationError):
    pass


class NotUnimodular(VerificationError):
    pass


class SplitFailure(VerificationError):
    pass


class NotIso(VerificationError):
    pass


class IllDefinedProduct(VerificationError):
    pass


# profinite
class NotSurjective(ValidationError):
    pass


# ktheory
class RouteMismatch(VerificationError):
    pass


# io
class MalformedInput(ValidationError):
    pass
