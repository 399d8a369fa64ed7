from pathlib import Path

import pytest

from kerbil import ConfigError
from kerbil.cli import PipelineConfig, parse_config


def test_defaults() -> None:
    cfg = PipelineConfig()

    assert cfg.geometry.shape == (64, 64, 48)
    assert cfg.rate == 8
    assert cfg.nu == 4
    assert cfg.centered


def test_parse_config() -> None:
    text = """
    # A comment.
    geometry.np = 32
    mask.rate = 4.5   # trailing comment
    recon.lambda2 = 1e-3
    kernel.kind = polynomial
    kspace.centered = false
    """

    assert parse_config(text) == {
        "n_p": 32,
        "rate": 4.5,
        "lambda2": 1e-3,
        "kernel": "polynomial",
        "centered": False,
    }


@pytest.mark.parametrize("text", ["geometry.np 32", "unknown.key = 1"])
def test_parse_errors(text: str) -> None:
    with pytest.raises(ConfigError):
        parse_config(text)


def test_precedence(tmp_path: Path) -> None:
    path = tmp_path / "kerbil.cfg"
    path.write_text("geometry.np = 32\ngeometry.nf = 16\n")

    cfg = PipelineConfig.load(path, {"np": 8, "--outer-max-iter": "5"})

    assert cfg.n_p == 8
    assert cfg.n_f == 16
    assert cfg.n_fr == 48
    assert cfg.outer_max_iter == 5


def test_bad_type() -> None:
    with pytest.raises(ConfigError):
        PipelineConfig.load(flags={"np": "many"})


def test_dumps_round_trip(tmp_path: Path) -> None:
    cfg = PipelineConfig.load(flags={"np": 8, "lambda3": 1e-5, "mask_seed": 3})
    path = tmp_path / "config.txt"
    path.write_text(cfg.dumps())

    assert PipelineConfig.load(path) == cfg


def test_derived_configs() -> None:
    flags = {"seed": 3, "phantom.seed": 9, "kernel": "polynomial"}
    cfg = PipelineConfig.load(flags=flags)

    assert cfg.phantom_spec().seed == 9
    assert cfg.sampling_seed == 3
    assert cfg.kernel_spec().kind == "polynomial"
    assert cfg.recon_config().init == "navigator"
    assert cfg.weight_config().max_iter == 2000
