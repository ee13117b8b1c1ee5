"""Exception types shared across the package."""


class AugtestError(Exception):
    """Base class for all library errors."""


class NegativeProbability(AugtestError):
    pass


class NotNormalized(AugtestError):
    pass


class DomainMismatch(AugtestError):
    pass


class IndexOutOfRange(AugtestError):
    pass


class BetaOutOfRange(AugtestError):
    pass


class NuOutOfRange(AugtestError):
    pass


class VOutOfRange(AugtestError):
    pass


class EmptyBatch(AugtestError):
    pass


class BudgetTooSmall(AugtestError):
    pass


class DomainTooSmall(AugtestError):
    pass


class ParameterOutOfRange(AugtestError):
    pass


class ParityAdjustmentFailed(AugtestError):
    pass


class MalformedLine(AugtestError):
    pass


class DomainOverflow(AugtestError):
    pass


class DuplicateKey(AugtestError):
    pass


class EmptyInput(AugtestError):
    pass


class ConfigError(AugtestError):
    pass


class FormatError(AugtestError):
    """Bad header or body in a .dist / .flat text file."""
