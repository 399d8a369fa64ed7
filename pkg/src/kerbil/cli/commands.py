import contextlib
import sys
from collections.abc import Iterator
from pathlib import Path
from typing import Any

import structlog
from scipy import fft

from kerbil.acquisition import (
    SamplingMask,
    acceleration_rate,
    apply_sampling,
    generate_cartesian_mask,
    generate_phantom,
    load_mask,
    save_mask,
)
from kerbil.common import ConfigError, ThresholdExceededError
from kerbil.datamodel import (
    CubeKind,
    ImageSeries,
    KTDataset,
    read_cube_file,
    to_image,
    to_kspace,
    write_cube,
)
from kerbil.metrics import EvalReport, framewise_nrmse, zero_filled_baseline
from kerbil.recon import ReconResult, run_reconstruction

from . import plots, png
from .config import PipelineConfig

LOGGER = structlog.get_logger()


class Commands:
    """
    Kernel bi-linear reconstruction of undersampled dynamic MRI.

    Every command accepts `--config <file>` and any config key as a flag,
    e.g. `--np 64 --rate 8 --lambda1 0.5`.
    """

    def phantom(
        self, out: str = "phantom.kblm", config: str | None = None, **flags: Any
    ) -> None:
        "Generate the periodic phantom as an image cube."

        cfg = PipelineConfig.load(config, flags)

        with _threads(cfg):
            images = generate_phantom(cfg.phantom_spec())

        write_cube(out, images.cube, kind=CubeKind.IMAGE)

    def mask(
        self, out: str = "mask.kblmmask", config: str | None = None, **flags: Any
    ) -> None:
        "Generate a Cartesian mask with a navigator band."

        cfg = PipelineConfig.load(config, flags)
        lines = generate_cartesian_mask(
            cfg.geometry, cfg.nu, cfg.rate, cfg.sampling_seed
        )
        save_mask(out, lines)

    def recon(
        self,
        data: str,
        mask: str,
        out: str = "recon.kblm",
        config: str | None = None,
        **flags: Any,
    ) -> None:
        """
        Reconstruct from an image cube (sampled through the mask)
        or from an undersampled k-space cube.
        Also writes `diagnostics.csv` next to the output.
        """

        cfg = PipelineConfig.load(config, flags)
        sampled, lines = _sampled(data, mask, cfg)

        with _threads(cfg):
            result = _reconstruct(sampled, lines, cfg)

        write_cube(out, result.images.cube, kind=CubeKind.IMAGE)
        result.diagnostics.to_frame().to_csv(
            Path(out).with_name("diagnostics.csv"), index=False, lineterminator="\n"
        )

    def eval(
        self,
        ref: str,
        est: str,
        out: str | None = None,
        config: str | None = None,
        **flags: Any,
    ) -> None:
        """
        Frame-wise NRMSE of `est` against `ref`, as CSV on stdout or in `out`.
        Fails with exit code 2 if `--assert-max-nrmse` is exceeded.
        """

        cfg = PipelineConfig.load(config, flags)
        report = framewise_nrmse(_images(ref), _images(est))
        report.write_csv(out if out is not None else sys.stdout)
        _check_threshold(report, cfg)

    def pipeline(
        self, out: str = "out", config: str | None = None, **flags: Any
    ) -> None:
        """
        Phantom, mask, sampling, reconstruction and evaluation, all written to `out`.
        The zero-filled baseline is evaluated alongside.
        """

        cfg = PipelineConfig.load(config, flags)
        root = Path(out)
        root.mkdir(parents=True, exist_ok=True)
        (root / "config.txt").write_text(cfg.dumps())

        with _threads(cfg):
            images = generate_phantom(cfg.phantom_spec())
            lines = generate_cartesian_mask(
                cfg.geometry, cfg.nu, cfg.rate, cfg.sampling_seed
            )
            sampled = apply_sampling(lines, to_kspace(images, centered=cfg.centered))
            result = _reconstruct(sampled, lines, cfg)

        baseline = zero_filled_baseline(sampled)

        write_cube(root / "phantom.kblm", images.cube, kind=CubeKind.IMAGE)
        save_mask(root / "mask.kblmmask", lines)
        write_cube(root / "sampled.kblm", sampled.cube, centered=sampled.centered)
        write_cube(root / "recon.kblm", result.images.cube, kind=CubeKind.IMAGE)
        write_cube(root / "zerofilled.kblm", baseline.cube, kind=CubeKind.IMAGE)

        report = framewise_nrmse(images, result.images)
        zero_filled = framewise_nrmse(images, baseline)
        report.write_csv(root / "metrics.csv")
        zero_filled.write_csv(root / "zerofilled_metrics.csv")
        result.diagnostics.to_frame().to_csv(
            root / "diagnostics.csv", index=False, lineterminator="\n"
        )

        LOGGER.info(
            "Finished pipeline",
            out=str(root),
            rate=acceleration_rate(lines),
            nrmse=report.global_nrmse,
            zero_filled_nrmse=zero_filled.global_nrmse,
        )
        _check_threshold(report, cfg)

    def export_png(
        self,
        data: str,
        out: str = "frames",
        ref: str | None = None,
        config: str | None = None,
        **flags: Any,
    ) -> None:
        """
        Write the magnitude of every frame as an 8-bit grayscale PNG.
        With a `ref` cube, also write the frame-wise error maps against it,
        scaled by the largest error of the series.
        """

        PipelineConfig.load(config, flags)
        images = _images(data)
        png.export_png(images, out)

        if ref is not None:
            png.export_error_png(_images(ref), images, out)

    def plot(
        self,
        metrics: str,
        baseline: str | None = None,
        out: str = "nrmse.png",
        config: str | None = None,
        **flags: Any,
    ) -> None:
        """
        Plot the frame-wise NRMSE of a `metrics.csv`, optionally against
        the zero-filled `baseline` metrics.
        """

        PipelineConfig.load(config, flags)
        curves = {"reconstruction": plots.read_metrics(metrics)}

        if baseline is not None:
            curves["zero-filled"] = plots.read_metrics(baseline)

        plots.plot_nrmse(curves, out)


def _reconstruct(
    sampled: KTDataset, mask: SamplingMask, cfg: PipelineConfig
) -> ReconResult:
    return run_reconstruction(
        sampled,
        mask,
        cfg=cfg.recon_config(),
        kernel_spec=cfg.kernel_spec(),
        n_l=cfg.n_l,
        d=cfg.d,
        weights=cfg.weight_config(),
        seed=cfg.seed,
        progress=cfg.progress,
    )


def _images(path: str) -> ImageSeries:
    stored = read_cube_file(path)

    if stored.kind is CubeKind.KSPACE:
        return to_image(KTDataset(stored.cube, centered=stored.centered))

    return ImageSeries(stored.cube)


def _sampled(
    data: str, mask: str, cfg: PipelineConfig
) -> tuple[KTDataset, SamplingMask]:
    stored = read_cube_file(data)
    lines = load_mask(mask, stored.cube.n_f)

    if stored.kind is CubeKind.IMAGE:
        kspace = to_kspace(ImageSeries(stored.cube), centered=cfg.centered)
    else:
        kspace = KTDataset(stored.cube, centered=stored.centered)

    if (lines.n_p, lines.n_fr) != (kspace.geometry.n_p, kspace.geometry.n_fr):
        raise ConfigError(
            f"Mask {mask} is {lines.n_p}x{lines.n_fr}, data {data} has "
            f"{kspace.geometry.n_p} lines and {kspace.geometry.n_fr} frames"
        )

    return apply_sampling(lines, kspace), lines


def _check_threshold(report: EvalReport, cfg: PipelineConfig) -> None:
    if cfg.assert_max_nrmse is None:
        return

    if report.global_nrmse > cfg.assert_max_nrmse:
        raise ThresholdExceededError(
            f"NRMSE {report.global_nrmse:.6g} exceeds {cfg.assert_max_nrmse:.6g}"
        )


@contextlib.contextmanager
def _threads(cfg: PipelineConfig) -> Iterator[None]:
    if cfg.threads is None:
        yield
        return

    with fft.set_workers(cfg.threads):
        yield
