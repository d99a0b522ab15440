"""Exception hierarchy shared by every module of the package."""


class MuForgeError(Exception):
    """Base class for all errors raised by muforge."""


# arith
class OrdinarityViolation(MuForgeError):
    pass


class NotAUnit(MuForgeError):
    pass


class PrecisionExhausted(MuForgeError):
    pass


# curves
class SingularModel(MuForgeError):
    pass


class ConductorSupport(MuForgeError):
    pass


class BadPrime(MuForgeError):
    pass


# msym
class EigenlineNotFound(MuForgeError):
    pass


class EigenlineNotUnique(MuForgeError):
    pass


# dirichlet
class EmbeddingUnsupported(MuForgeError):
    pass


# lfun
class ParityMismatch(MuForgeError):
    pass


class NotOrdinary(MuForgeError):
    pass


class StabilizationFailed(MuForgeError):
    def __init__(self, n_max, message=None):
        self.n_max = n_max
        super().__init__(message or f"theta elements did not stabilise by level {n_max}")


# congruence
class EllEqualsP(MuForgeError):
    pass


class PrecisionInsufficient(MuForgeError):
    pass
