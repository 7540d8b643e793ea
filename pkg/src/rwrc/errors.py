"""Exception types shared across the package."""


class RwrcError(ValueError):
    """Base class for all package-specific errors."""


# domain construction and compatibility

class DimensionMismatch(RwrcError):
    pass


class DuplicateSite(RwrcError):
    pass


class OriginMissing(RwrcError):
    pass


class DisconnectedDomain(RwrcError):
    pass


class DomainTooLarge(RwrcError):
    pass


class DomainMismatch(RwrcError):
    pass


class UnsupportedDomain(RwrcError):
    pass


# scalar argument validation

class NonPositiveArgument(RwrcError):
    pass


class ArgumentOutOfRange(RwrcError):
    pass


class NonPositiveScale(RwrcError):
    pass


class NonPositiveWeight(RwrcError):
    pass


# fields, profiles, and measure changes

class InvalidProfile(RwrcError):
    pass


class FieldMismatch(DomainMismatch):
    """A field's domain differs from the one an operation was given."""


class EpsilonTooLarge(RwrcError):
    pass


class UnsupportedSetShape(RwrcError):
    pass


# solvers and estimators

class NonConvergence(RwrcError):
    pass


class DegenerateWeights(RwrcError):
    pass
