import logging
import sys
from enum import Enum
from pathlib import Path

import numpy as np
import polars as pl
from pydantic import BaseModel, ConfigDict, field_validator, model_validator
from tqdm import tqdm

from fracwaves.CONSTANTS import SWEEP_COLUMNS
from fracwaves.dispersion import (
    BranchMode,
    DispersionModel,
    FractionalOrder,
    NumericPolicy,
    group_velocity,
    omega_bar,
    phase_velocity,
)
from fracwaves.plots import write_svg
from fracwaves.utils import DomainError, format_floats, logger, timer

FLOAT_COLUMNS = [c for c in SWEEP_COLUMNS if c != "branch_flag"]


class OutputFormat(str, Enum):
    CSV = "csv"
    SVG = "svg"
    BOTH = "both"


class SweepConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    model: DispersionModel
    alpha: float
    k_min: float
    k_max: float
    n_samples: int
    output_path: str
    format: OutputFormat = OutputFormat.CSV
    branch_mode: BranchMode = BranchMode.STRICT

    @field_validator("alpha")
    def check_alpha(cls, alpha):
        return FractionalOrder(alpha=alpha).alpha

    @field_validator("n_samples")
    def check_samples(cls, n):
        if n < 2:
            raise ValueError(f"n_samples must be at least 2, got {n}")
        return n

    @model_validator(mode="after")
    def check_range(self):
        if not self.k_min < self.k_max:
            raise ValueError(f"need k_min < k_max, got [{self.k_min}, {self.k_max}]")
        return self

    @property
    def title(self) -> str:
        return f"{self.model.kind.value}, alpha = {self.alpha:g}"


class SweepRow(BaseModel):
    k: float
    re_omega: float
    im_omega: float
    re_vp: float
    im_vp: float
    re_vg: float
    im_vg: float
    branch_flag: int = 0


def sweep_row(config: SweepConfig, k: float, policy: NumericPolicy) -> SweepRow:
    w = omega_bar(config.model, config.alpha, k, policy)
    vp = phase_velocity(config.model, config.alpha, k, policy)
    vg = group_velocity(config.model, config.alpha, k, policy)
    flagged = w.branch_warning or vp.branch_warning or vg.branch_warning
    return SweepRow(
        k=k,
        re_omega=w.re,
        im_omega=w.im,
        re_vp=vp.re,
        im_vp=vp.im,
        re_vg=vg.re,
        im_vg=vg.im,
        branch_flag=int(flagged),
    )


def sweep_frame(config: SweepConfig) -> pl.DataFrame:
    """
    Evaluates omega_bar, v_p and v_g on `n_samples` evenly spaced wave numbers.

    Raises:
        DomainError: In strict mode, at the first k with kappa(k) <= 0 (or k = 0 for
            a fractional order).
    """
    policy = NumericPolicy(branch_mode=config.branch_mode)
    wave_numbers = np.linspace(config.k_min, config.k_max, config.n_samples)
    rows = [
        sweep_row(config, float(k), policy).model_dump()
        for k in tqdm(wave_numbers, desc="sweep", ncols=70, leave=False)
    ]
    return pl.DataFrame(rows).select(SWEEP_COLUMNS)


def write_sweep(config: SweepConfig, frame: pl.DataFrame) -> list[str]:
    base = Path(config.output_path)
    base.parent.mkdir(parents=True, exist_ok=True)
    # names like kdv_alpha_0.5 carry a dot that is not an extension
    stem = str(base.with_suffix("")) if base.suffix in (".csv", ".svg") else str(base)
    written = []
    if config.format in (OutputFormat.CSV, OutputFormat.BOTH):
        csv_path = f"{stem}.csv"
        format_floats(frame, FLOAT_COLUMNS).write_csv(csv_path)
        written.append(csv_path)
    if config.format in (OutputFormat.SVG, OutputFormat.BOTH):
        svg_path = f"{stem}.svg"
        write_svg(frame, config.title, svg_path)
        written.append(svg_path)
    for path in written:
        logging.warning(f"Saved sweep to {path}.")
    return written


@timer
@logger()
def cmd_sweep(config: SweepConfig) -> int:
    logging.warning(f"Running sweep: {config.title}, {config.n_samples} samples.")
    try:
        frame = sweep_frame(config)
    except DomainError as exc:
        logging.error(f"Sweep failed: {exc}")
        print(f"error: {exc}", file=sys.stderr)
        return 3
    write_sweep(config, frame)
    return 0


if __name__ == "__main__":
    from fracwaves.cli import main

    sys.exit(main(["sweep", *sys.argv[1:]]))
