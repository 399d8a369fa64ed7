from enum import Enum

from .errors import ItemNotFound


class StrEnum(str, Enum):
    @classmethod
    def lookup(cls, name: "str | StrEnum") -> "StrEnum":
        if isinstance(name, cls):
            return name

        try:
            return cls[name.upper()]
        except KeyError:
            pass

        try:
            return cls(name)
        except ValueError:
            pass

        raise ItemNotFound(
            f"Item `{name}` not found in enum. Must be one of {[i.value for i in cls]}"
        )
