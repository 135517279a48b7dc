"""Exception hierarchy.

Validation errors mean the input does not describe a valid resolution or
pair; domain errors mean a well-formed input was asked for something the
model cannot provide.  Each concrete class names the violated invariant.
"""


class SurfjumpError(Exception):
    invariant = "unspecified"

    def __init__(self, message=""):
        super().__init__(message)
        self.message = message

    def __str__(self):
        if self.message:
            return f"{self.invariant}: {self.message}"
        return self.invariant


class ValidationError(SurfjumpError):
    invariant = "Invalid"


class DomainError(SurfjumpError):
    invariant = "DomainError"


def _make(name, base):
    cls = type(name, (base,), {"invariant": name})
    cls.__module__ = __name__
    return cls


# graph validation
DuplicateId = _make("DuplicateId", ValidationError)
MissingSelfIntersection = _make("MissingSelfIntersection", ValidationError)
ExceptionalCycle = _make("ExceptionalCycle", ValidationError)
ExceptionalDisconnected = _make("ExceptionalDisconnected", ValidationError)
NotNegativeDefinite = _make("NotNegativeDefinite", ValidationError)
BadEdge = _make("BadEdge", ValidationError)
BadDivisor = _make("BadDivisor", ValidationError)
InvalidPair = _make("InvalidPair", ValidationError)
InvalidCenter = _make("InvalidCenter", ValidationError)

# domain errors
UndefinedSelfIntersection = _make("UndefinedSelfIntersection", DomainError)
EmptyExceptionalSet = _make("EmptyExceptionalSet", DomainError)
NonIntegralExceptionalPart = _make("NonIntegralExceptionalPart", DomainError)
NonExceptionalSupport = _make("NonExceptionalSupport", DomainError)
NonIntegral = _make("NonIntegral", DomainError)
NotIntegral = _make("NotIntegral", DomainError)
NotCandidate = _make("NotCandidate", DomainError)
NotAntinef = _make("NotAntinef", DomainError)
NotUnimodular = _make("NotUnimodular", DomainError)
NotCoprime = _make("NotCoprime", DomainError)
BadRange = _make("BadRange", DomainError)
BadRank = _make("BadRank", DomainError)
