from typing import Any

from .errors import ValidationError


def remove_base_suffix(obj: Any, base_class: type[Any]) -> str:
    """
    Short display name of `obj`: its class name with the name of `base_class`
    stripped from the end, e.g. `PolynomialKernel` -> `Polynomial`.

    Raises:
        ValidationError: If the class name does not end with the base name.
    """

    cls = obj if isinstance(obj, type) else type(obj)
    name, suffix = cls.__name__, base_class.__name__

    if name == suffix:
        return name

    if not name.endswith(suffix):
        raise ValidationError(f"Expected name `{name}` to end with `{suffix}`")

    return name.removesuffix(suffix)
