import logging
import sys

from tqdm import tqdm

from fracwaves.commands.sweep import OutputFormat, SweepConfig, sweep_frame, write_sweep
from fracwaves.CONSTANTS import FIGURES
from fracwaves.dispersion import DispersionModel, ModelKind
from fracwaves.utils import DomainError, logger, save_path, timer


def figure_config(preset: dict, output_dir: str | None = None) -> SweepConfig:
    return SweepConfig(
        model=DispersionModel(kind=ModelKind(preset["model"])),
        alpha=preset["alpha"],
        k_min=preset["k_min"],
        k_max=preset["k_max"],
        n_samples=preset["n_samples"],
        output_path=save_path("figures", preset["name"], root=output_dir),
        format=OutputFormat.BOTH,
    )


@timer
@logger()
def cmd_figures(output_dir: str | None = None) -> int:
    """Writes CSV and SVG data for each velocity figure preset in CONSTANTS."""
    status = 0
    for preset in tqdm(FIGURES, desc="figures", ncols=70):
        config = figure_config(preset, output_dir)
        try:
            write_sweep(config, sweep_frame(config))
        except DomainError as exc:
            logging.error(f"{preset['name']}: {exc}")
            status = 3
    return status


if __name__ == "__main__":
    sys.exit(cmd_figures())
