"""Exception types raised across the package."""


class ScharlauError(Exception):
    """Base class for every error raised by this package."""


class ModulusMismatch(ScharlauError, ValueError):
    pass


class NotPrime(ScharlauError, ValueError):
    pass


class NoRoot(ScharlauError, ValueError):
    """The residue is not a square modulo p."""


class NoSolution(ScharlauError, ValueError):
    """u + 1/u = 1/2 has no solution modulo p."""


class ViolatedPrediction(ScharlauError, AssertionError):
    pass


class NotInSL2(ScharlauError, ValueError):
    pass


class OrderCap(ScharlauError, ValueError):
    """A computation would materialize a group larger than the allowed cap."""


class BadSpec(ScharlauError, ValueError):
    pass


class BadTable(ScharlauError, ValueError):
    pass


class ParentMismatch(ScharlauError, ValueError):
    pass


class InvalidPartition(ScharlauError, ValueError):
    pass


class IdentityFailure(ScharlauError, AssertionError):
    pass


class CoefficientMismatch(ScharlauError, AssertionError):
    pass
