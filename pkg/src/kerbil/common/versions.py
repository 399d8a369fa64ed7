from importlib import metadata

from kerbil import constants


def version() -> str:
    try:
        return metadata.version("kerbil")
    except metadata.PackageNotFoundError:
        # Running from a source checkout.
        return constants.VERSION
