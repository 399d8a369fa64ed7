import sys

import fire
import structlog
from fire.core import FireExit

from kerbil.common import (
    ConfigError,
    FileFormatError,
    ItemNotFound,
    KerbilError,
    ParameterError,
    ThresholdExceededError,
    configure_logging,
)

from .commands import Commands
from .config import PipelineConfig, parse_config
from .plots import plot_nrmse, read_metrics
from .png import export_error_png, export_png, to_uint8

LOGGER = structlog.get_logger()

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_THRESHOLD = 2
EXIT_USAGE = 64


def main(argv: list[str] | None = None) -> int:
    """
    Run a command and map its outcome to an exit code:
    0 on success, 1 on I/O or format errors, 2 if an NRMSE threshold
    is exceeded, 64 on usage errors.
    """

    try:
        configure_logging()
        fire.Fire(Commands, command=argv, name="kerbil")
    except FireExit as e:
        return EXIT_OK if not e.code else EXIT_USAGE
    except ThresholdExceededError as e:
        LOGGER.error("Threshold exceeded", error=str(e))
        return EXIT_THRESHOLD
    except (ConfigError, ItemNotFound, ParameterError) as e:
        LOGGER.error("Usage error", error=str(e))
        return EXIT_USAGE
    except (OSError, FileFormatError, KerbilError) as e:
        LOGGER.error("Failed", error=str(e))
        return EXIT_FAILURE

    return EXIT_OK


def run() -> None:
    sys.exit(main())
