"""Exception hierarchy.

Errors are split into three families so the CLI can map them onto exit codes:
input/usage problems, verification failures, and budget exhaustion.
"""


class LatcutError(Exception):
    """Base class for every error raised by the package."""


class InputError(LatcutError, ValueError):
    """Malformed or out-of-contract input."""


class VerificationError(LatcutError):
    """A geometric or functional property that was asked for does not hold."""


class BudgetExhausted(LatcutError):
    pass


# exactgeo
class EmptyPolyhedron(InputError):
    pass


class OriginNotInterior(InputError):
    pass


class NonNormalizable(OriginNotInterior):
    pass


class DimensionTooLarge(InputError):
    pass


class NotPointed(InputError):
    pass


class UnboundedInput(InputError):
    pass


class DimMismatch(InputError):
    pass


# latticefree
class WindowInsufficient(InputError):
    pass


class NotMaximal(VerificationError):
    pass


class NotClassifiable(VerificationError):
    pass


class BadParams(InputError):
    pass


class NotSymmetric(InputError):
    pass


class NotCompact(InputError):
    pass


# cgf
class FullDimRecession(InputError):
    pass


class AllRhsIntegral(InputError):
    pass


class BadFraction(InputError):
    pass


# groupfn
class NotPeriodic(InputError):
    pass


class NotContinuous(InputError):
    pass


class OriginValueNonzero(InputError):
    pass


class NotSublinear(VerificationError):
    pass


# lifting
class UnsupportedS(InputError):
    pass


class NotOnFacet(InputError):
    pass


class NonCoerciveDirection(VerificationError):
    pass


class RankDeficient(InputError):
    pass


class NotUnimodular(InputError):
    pass


# cli
class DimensionUnsupported(InputError):
    pass
