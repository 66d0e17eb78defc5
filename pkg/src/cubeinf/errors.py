"""Exception types shared across the package."""


class CubeError(ValueError):
    """Base class for invalid inputs to cube computations."""


class LengthMismatch(CubeError):
    pass


class NonFinite(CubeError):
    pass


class TooLarge(CubeError):
    pass


class IndexOutOfRange(CubeError):
    pass


class BadExponent(CubeError):
    pass


class BadM(CubeError):
    pass


class BadParam(CubeError):
    pass


class DegreeTooHigh(CubeError):
    pass


class InconsistentProfile(CubeError):
    pass


class RegimeError(CubeError):
    pass


class UnknownName(CubeError):
    pass


class SizeError(CubeError):
    pass


class NotBounded(CubeError):
    pass


class SchemaError(CubeError):
    pass


class ParamError(CubeError):
    pass


class LPError(RuntimeError):
    pass


class Infeasible(LPError):
    pass


class Unbounded(LPError):
    pass


class IterationLimit(LPError):
    pass


class CertificationFailed(RuntimeError):
    pass


class BadDegreeWarning(UserWarning):
    """Raised as a warning when a construction is used outside its intended parity."""
