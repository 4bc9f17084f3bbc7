"""Exception types raised across the package."""


class BallqError(Exception):
    """Base class for all package errors."""


class DenominatorDivisibleByP(BallqError, ZeroDivisionError):
    pass


class FrameMismatch(BallqError, ValueError):
    pass


class NonHomogeneousGenerator(BallqError, ValueError):
    pass


class LimitExceeded(BallqError, RuntimeError):
    pass


class NoMatchingIrreducible(BallqError, LookupError):
    pass


class MissingPowerMap(BallqError, LookupError):
    pass


class NonIntegralMultiplicity(BallqError, ValueError):
    pass


class SeedNotOnVariety(BallqError, ValueError):
    pass


class NotStabilized(BallqError, ValueError):
    pass


class ResourceLimit(BallqError, RuntimeError):
    pass


class Diverged(BallqError, RuntimeError):
    pass


class SingularJacobian(BallqError, ArithmeticError):
    pass


class GapTooSmall(BallqError, ArithmeticError):
    pass


class InsufficientPrecision(BallqError, ArithmeticError):
    pass


class NoCandidate(BallqError, LookupError):
    pass


class NoSolution(BallqError, ArithmeticError):
    pass


class RankDefect(BallqError, ArithmeticError):
    pass


class ConfigError(BallqError, ValueError):
    pass


class DatasetCorrupt(BallqError, RuntimeError):
    pass
