class KerbilError(Exception):
    """
    Base class of all errors raised by kerbil.
    """


class ItemNotFound(KerbilError, LookupError):
    pass


class DimensionError(KerbilError, ValueError):
    """
    Shapes of the inputs do not agree with each other or with the geometry.
    """


class ParameterError(KerbilError, ValueError):
    """
    A scalar parameter is out of its admissible range.
    """


class ValidationError(KerbilError, ValueError):
    """
    An input violates a structural property, e.g. a matrix is not Hermitian.
    """


class ConfigError(ParameterError):
    """
    The command-line configuration is malformed. Maps to a usage exit code.
    """


class ThresholdExceededError(KerbilError):
    """
    An evaluation exceeded the threshold it was asserted against.
    """


class FileFormatError(KerbilError, ValueError):
    """
    A binary file does not follow the KBLM / KBLMMASK layout.
    """


class BadMagicError(FileFormatError):
    pass


class TruncatedPayloadError(FileFormatError):
    pass


class DimensionOverflowError(FileFormatError):
    pass
