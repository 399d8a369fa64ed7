from .enums import StrEnum
from .errors import (
    BadMagicError,
    ConfigError,
    DimensionError,
    DimensionOverflowError,
    FileFormatError,
    ItemNotFound,
    KerbilError,
    ParameterError,
    ThresholdExceededError,
    TruncatedPayloadError,
    ValidationError,
)
from .logs import configure_logging, logging_level
from .names import remove_base_suffix
from .versions import version
