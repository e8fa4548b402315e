import logging
import math
import sys
from enum import Enum
from pathlib import Path

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator
from tqdm import tqdm

from fracwaves import __version__
from fracwaves.CONSTANTS import GRID_LENGTH, GRID_POINTS, SNAPSHOT_COLUMNS
from fracwaves.dispersion import DispersionModel, FractionalOrder
from fracwaves.spectral.packet import wavepacket
from fracwaves.spectral.solver import PeriodicGrid, SpectralState, evolve, from_samples, snapshot
from fracwaves.utils import (
    ConvergenceError,
    DomainError,
    export_json,
    format_floats,
    logger,
    timer,
)


class InitialCondition(str, Enum):
    COSINE = "cosine"
    PACKET = "packet"


class EvolveConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    model: DispersionModel
    alpha: float
    grid: PeriodicGrid = PeriodicGrid(n_points=GRID_POINTS, length=GRID_LENGTH)
    initial: InitialCondition = InitialCondition.COSINE
    wave_index: int = 1
    k0: float = 0.3
    sigma: float = 20.0
    x0: float | None = None
    times: list[float]
    output_dir: str

    @field_validator("alpha")
    def check_alpha(cls, alpha):
        return FractionalOrder(alpha=alpha).alpha

    @field_validator("times")
    def check_times(cls, times):
        if not times:
            raise ValueError("at least one output time is required")
        if any(not (math.isfinite(t) and t >= 0.0) for t in times):
            raise ValueError(f"times must be finite and non-negative, got {times}")
        if any(b <= a for a, b in zip(times, times[1:])):
            raise ValueError(f"times must be strictly ascending, got {times}")
        return times


def initial_state(config: EvolveConfig) -> SpectralState:
    """
    Samples the initial condition: cos(2 pi j x / L) for `cosine` (j = wave_index),
    or a Gaussian packet centred on x0 (default L/2) for `packet`.
    """
    grid = config.grid
    if config.initial is InitialCondition.COSINE:
        samples = np.cos(2.0 * np.pi * config.wave_index * grid.x / grid.length)
        return from_samples(grid, samples)
    x0 = grid.length / 2.0 if config.x0 is None else config.x0
    return wavepacket(grid, config.k0, config.sigma, x0)


def metadata(config: EvolveConfig, snapshots: list[dict]) -> dict:
    return {
        "version": __version__,
        "model": config.model.model_dump(mode="json"),
        "alpha": config.alpha,
        "grid": config.grid.model_dump(mode="json"),
        "initial": {
            "kind": config.initial.value,
            "wave_index": config.wave_index,
            "k0": config.k0,
            "sigma": config.sigma,
            "x0": config.x0,
        },
        "times": config.times,
        "snapshots": snapshots,
    }


@timer
@logger()
def cmd_evolve(config: EvolveConfig) -> int:
    out = Path(config.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    logging.warning(
        f"Running evolve: {config.model.kind.value}, alpha = {config.alpha}, "
        f"{len(config.times)} times."
    )

    snapshots = []
    try:
        state = initial_state(config)
        for index, t in enumerate(tqdm(config.times, desc="evolve", ncols=70, leave=False)):
            frame = snapshot(evolve(state, config.model, config.alpha, t))
            filename = f"snapshot_{index:03d}.csv"
            format_floats(frame, SNAPSHOT_COLUMNS).write_csv(str(out / filename))
            snapshots.append(
                {
                    "time": t,
                    "file": filename,
                    "max_abs_im_u": float(frame["im_u"].abs().max()),
                }
            )
    except (ConvergenceError, DomainError) as exc:
        logging.error(f"Evolve failed: {exc}")
        print(f"error: {exc}", file=sys.stderr)
        return 3

    export_json(metadata(config, snapshots), str(out / "metadata.json"))
    return 0


if __name__ == "__main__":
    from fracwaves.cli import main

    sys.exit(main(["evolve", *sys.argv[1:]]))
