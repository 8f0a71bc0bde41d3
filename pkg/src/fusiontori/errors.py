"""Exception types shared across the package."""


class FusionToriError(Exception):
    """Base class for every error raised by this package."""


class InvalidParameter(FusionToriError, ValueError):
    pass


class FieldMismatch(FusionToriError):
    """Elements from different number fields were combined without a join."""


class UnsupportedFieldPair(FusionToriError):
    pass


class NotIrreducible(FusionToriError, ValueError):
    pass


class NotSkew(FusionToriError, ValueError):
    pass


class NotSimple(FusionToriError):
    """Degenerate torus matrix or non-primitive connecting matrix."""


class HypothesisViolation(FusionToriError):
    """Stationary data fails a hypothesis of the AT extension theorem."""


class NeedsAssumption(FusionToriError):
    """A computation needs a data assumption the caller has not enabled."""


class NotSupported(FusionToriError):
    pass


class SchemaError(FusionToriError, ValueError):
    pass
