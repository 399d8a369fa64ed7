"""
Reader and writer of the KBLM cube and KBLMMASK mask files.

Cube layout, little-endian:
`"KBLM"`, version `u32`, kind `u8` (0 k-space, 1 image), flags `u8`, 2 padding bytes,
`n_p`, `n_f`, `n_fr` as `u32`, then interleaved `(re, im)` float32 pairs,
column-major within a frame, frames consecutive.
Bit 0 of the flags byte marks the centered k-space layout.

Mask layout: `"KBLMMASK"`, version, `n_p`, `n_fr`, `nu` as `u32`,
then `n_p * n_fr` bytes of 0 / 1, phase line fastest.
"""

import dataclasses as dcls
from pathlib import Path
from typing import NamedTuple

import numpy as np
import structlog
from numpy.typing import ArrayLike, NDArray

from kerbil import constants
from kerbil.common import (
    BadMagicError,
    DimensionOverflowError,
    FileFormatError,
    StrEnum,
    TruncatedPayloadError,
)
from kerbil.numerics import ComplexCube

LOGGER = structlog.get_logger()

CUBE_HEADER = np.dtype(
    [
        ("magic", "S4"),
        ("version", "<u4"),
        ("kind", "u1"),
        ("flags", "u1"),
        ("padding", "u1", (2,)),
        ("n_p", "<u4"),
        ("n_f", "<u4"),
        ("n_fr", "<u4"),
    ]
)

MASK_HEADER = np.dtype(
    [
        ("magic", "S8"),
        ("version", "<u4"),
        ("n_p", "<u4"),
        ("n_fr", "<u4"),
        ("nu", "<u4"),
    ]
)

CENTERED_FLAG = 0b1


class CubeKind(StrEnum):
    KSPACE = "kspace"
    IMAGE = "image"

    @property
    def code(self) -> int:
        return list(CubeKind).index(self)

    @classmethod
    def from_code(cls, code: int) -> "CubeKind":
        kinds = list(cls)

        if code >= len(kinds):
            raise FileFormatError(f"Unknown cube kind {code}")

        return kinds[code]


class CubeFile(NamedTuple):
    cube: ComplexCube
    kind: CubeKind
    centered: bool


@dcls.dataclass(frozen=True)
class MaskFile:
    lines: NDArray
    "Binary `[n_p, n_fr]` matrix."

    nu: int


def write_cube(
    path: str | Path,
    cube: ComplexCube,
    kind: str | CubeKind = CubeKind.KSPACE,
    centered: bool = False,
) -> None:
    """
    Write a cube as float32 pairs.

    Parameters:
        path: The destination.
        cube: The cube.
        kind: Whether the cube holds k-space or images.
        centered: Whether the k-space uses the centered layout.
    """

    kind = CubeKind.lookup(kind)
    header = np.zeros((), dtype=CUBE_HEADER)
    header["magic"] = constants.CUBE_MAGIC
    header["version"] = constants.FORMAT_VERSION
    header["kind"] = kind.code
    header["flags"] = CENTERED_FLAG if centered else 0
    header["n_p"], header["n_f"], header["n_fr"] = cube.data.shape

    payload = cube.data.astype("<c8").reshape(-1, order="F")
    Path(path).write_bytes(header.tobytes() + payload.tobytes())

    LOGGER.debug("Wrote cube", path=str(path), shape=cube.data.shape, kind=kind)


def read_cube_file(path: str | Path) -> CubeFile:
    """
    Read a cube together with its header metadata.

    Raises:
        BadMagicError: If the file does not start with the cube magic.
        TruncatedPayloadError: If the file is shorter than the header declares.
        DimensionOverflowError: If the declared dimensions are zero or too large.
        FileFormatError: On unsupported versions or trailing bytes.
    """

    raw = Path(path).read_bytes()
    header = _header(raw, CUBE_HEADER, constants.CUBE_MAGIC, path)
    kind = CubeKind.from_code(int(header["kind"]))

    shape = tuple(int(header[key]) for key in ["n_p", "n_f", "n_fr"])
    entries = _payload(raw, CUBE_HEADER.itemsize, shape, np.dtype("<c8"), path)
    data = entries.astype(np.complex128).reshape(shape, order="F")

    centered = bool(int(header["flags"]) & CENTERED_FLAG)
    return CubeFile(cube=ComplexCube(data), kind=kind, centered=centered)


def read_cube(path: str | Path) -> ComplexCube:
    return read_cube_file(path).cube


def write_mask(path: str | Path, lines: ArrayLike, nu: int) -> None:
    """
    Write a binary `[n_p, n_fr]` line mask.
    """

    lines = np.asarray(lines)
    header = np.zeros((), dtype=MASK_HEADER)
    header["magic"] = constants.MASK_MAGIC
    header["version"] = constants.FORMAT_VERSION
    header["n_p"], header["n_fr"] = lines.shape
    header["nu"] = nu

    payload = (lines != 0).astype("u1").reshape(-1, order="F")
    Path(path).write_bytes(header.tobytes() + payload.tobytes())


def read_mask(path: str | Path) -> MaskFile:
    """
    Read a binary line mask. Raises the same errors as `read_cube_file`,
    plus `FileFormatError` if a byte is neither 0 nor 1.
    """

    raw = Path(path).read_bytes()
    header = _header(raw, MASK_HEADER, constants.MASK_MAGIC, path)

    shape = int(header["n_p"]), int(header["n_fr"])
    lines = _payload(raw, MASK_HEADER.itemsize, shape, np.dtype("u1"), path)

    if (lines > 1).any():
        raise FileFormatError(f"Expected mask bytes to be 0 or 1 in {path}")

    lines = lines.reshape(shape, order="F").astype(np.int8)
    return MaskFile(lines=lines, nu=int(header["nu"]))


def _header(raw: bytes, dtype: np.dtype, magic: bytes, path: str | Path) -> np.void:
    if raw[: len(magic)] != magic:
        raise BadMagicError(
            f"Bad magic in {path}: expected {magic!r}, got {raw[: len(magic)]!r}"
        )

    if len(raw) < dtype.itemsize:
        raise TruncatedPayloadError(f"Truncated header in {path}")

    header = np.frombuffer(raw, dtype=dtype, count=1)[0]

    if (version := int(header["version"])) != constants.FORMAT_VERSION:
        raise FileFormatError(f"Unsupported version {version} in {path}")

    return header


def _payload(
    raw: bytes, offset: int, shape: tuple[int, ...], dtype: np.dtype, path: str | Path
) -> NDArray:
    count = int(np.prod(shape, dtype=object))

    if min(shape) == 0 or count > constants.MAX_ENTRIES:
        raise DimensionOverflowError(f"Invalid dimensions {shape} in {path}")

    expected = offset + count * dtype.itemsize

    if len(raw) < expected:
        raise TruncatedPayloadError(
            f"Truncated payload in {path}: expected {expected} bytes, got {len(raw)}"
        )

    if len(raw) > expected:
        raise FileFormatError(
            f"Unexpected {len(raw) - expected} trailing bytes in {path}"
        )

    return np.frombuffer(raw, dtype=dtype, count=count, offset=offset)
