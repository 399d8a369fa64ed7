from pathlib import Path

import numpy as np
import pytest
from numpy import testing

from kerbil import (
    BadMagicError,
    ComplexCube,
    CubeKind,
    DimensionOverflowError,
    TruncatedPayloadError,
    read_cube,
    read_cube_file,
    read_mask,
    write_cube,
    write_mask,
)
from kerbil.datamodel.io import CUBE_HEADER
from tests import utils


def test_cube_round_trip(tmp_path: Path) -> None:
    for seed in range(100):
        cube = ComplexCube(utils.crandn(4, 4, 3, seed=seed))
        write_cube(tmp_path / "cube.kblm", cube)
        read = read_cube(tmp_path / "cube.kblm")

        expected = cube.data.astype(np.complex64).astype(np.complex128)
        testing.assert_array_equal(read.data, expected)


def test_header_layout(tmp_path: Path) -> None:
    cube = ComplexCube(np.ones((2, 3, 4)))
    path = tmp_path / "cube.kblm"
    write_cube(path, cube, kind="image", centered=True)
    raw = path.read_bytes()

    assert CUBE_HEADER.itemsize == 24
    assert raw[:4] == b"KBLM"
    assert raw[8] == 1 and raw[9] == 1
    assert int.from_bytes(raw[12:16], "little") == 2
    assert len(raw) == 24 + 2 * 3 * 4 * 8

    stored = read_cube_file(path)
    assert stored.kind is CubeKind.IMAGE
    assert stored.centered


def test_column_major_payload(tmp_path: Path) -> None:
    data = np.arange(8, dtype=float).reshape(2, 2, 2)
    path = tmp_path / "cube.kblm"
    write_cube(path, ComplexCube(data))

    payload = np.frombuffer(path.read_bytes()[24:], dtype="<c8")
    testing.assert_array_equal(payload.real, data.reshape(-1, order="F"))


def test_bad_magic(tmp_path: Path) -> None:
    path = tmp_path / "cube.kblm"
    write_cube(path, ComplexCube(np.ones((2, 2, 2))))
    path.write_bytes(b"XBLM" + path.read_bytes()[4:])

    with pytest.raises(BadMagicError):
        read_cube(path)


def test_truncated(tmp_path: Path) -> None:
    path = tmp_path / "cube.kblm"
    write_cube(path, ComplexCube(np.ones((2, 2, 2))))
    path.write_bytes(path.read_bytes()[:-3])

    with pytest.raises(TruncatedPayloadError):
        read_cube(path)

    path.write_bytes(path.read_bytes()[:10])

    with pytest.raises(TruncatedPayloadError):
        read_cube(path)


def test_overflow(tmp_path: Path) -> None:
    header = np.zeros((), dtype=CUBE_HEADER)
    header["magic"] = b"KBLM"
    header["version"] = 1
    header["n_p"] = header["n_f"] = header["n_fr"] = 2**31
    path = tmp_path / "cube.kblm"
    path.write_bytes(header.tobytes())

    with pytest.raises(DimensionOverflowError):
        read_cube(path)


def test_mask_round_trip(tmp_path: Path) -> None:
    lines = (utils.rng(3).uniform(size=(6, 5)) > 0.5).astype(int)
    write_mask(tmp_path / "mask", lines, nu=0)
    stored = read_mask(tmp_path / "mask")

    testing.assert_array_equal(stored.lines, lines)
    assert stored.nu == 0
    assert (tmp_path / "mask").read_bytes()[:8] == b"KBLMMASK"


def test_mask_bad_magic(tmp_path: Path) -> None:
    path = tmp_path / "mask"
    path.write_bytes(b"KBLM" + bytes(40))

    with pytest.raises(BadMagicError):
        read_mask(path)
