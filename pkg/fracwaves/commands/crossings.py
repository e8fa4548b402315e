import logging
import sys
from pathlib import Path

import polars as pl
from pydantic import BaseModel, ConfigDict, field_validator
from tqdm import tqdm

from fracwaves.analysis import find_velocity_crossing, predicted_crossing
from fracwaves.CONSTANTS import CROSSING_COLUMNS, CROSSING_TOL, KDV_BRACKET
from fracwaves.dispersion import DispersionModel, FractionalOrder
from fracwaves.utils import (
    ConvergenceError,
    DegenerateCrossing,
    DomainError,
    NoSignChange,
    format_floats,
    logger,
    timer,
)

OK = "ok"
DEGENERATE = "degenerate (purely imaginary)"
NO_SIGN_CHANGE = "no sign change"
FAILED = "failed"


class CrossingsConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    model: DispersionModel = DispersionModel.kdv()
    alphas: list[float]
    bracket: tuple[float, float] = KDV_BRACKET
    tol: float = CROSSING_TOL
    csv_path: str | None = None

    @field_validator("alphas")
    def check_alphas(cls, alphas):
        if not alphas:
            raise ValueError("at least one alpha is required")
        return [FractionalOrder(alpha=a).alpha for a in alphas]


def crossing_row(config: CrossingsConfig, alpha: float) -> dict:
    row = {
        "alpha": alpha,
        "status": OK,
        "k_star": None,
        "residual": None,
        "k_predicted": predicted_crossing(config.model, alpha),
    }
    try:
        result = find_velocity_crossing(alpha, config.model, config.bracket, config.tol)
        row["k_star"], row["residual"] = result.k_star, result.residual
    except DegenerateCrossing:
        row["status"] = DEGENERATE
    except NoSignChange as exc:
        logging.warning(f"alpha = {alpha}: {exc}")
        row["status"] = NO_SIGN_CHANGE
    except (ConvergenceError, DomainError) as exc:
        logging.error(f"alpha = {alpha}: {exc}")
        row["status"] = FAILED
    return row


def _cell(value: float | None, fmt: str) -> str:
    return "-" if value is None else format(value, fmt)


def print_table(rows: list[dict]) -> None:
    print(f"{'alpha':<10} {'status':<30} {'k_star':<20} {'residual':<12} {'k_predicted':<20}")
    for row in rows:
        print(
            f"{row['alpha']:<10.6g} {row['status']:<30} "
            f"{_cell(row['k_star'], '.15g'):<20} {_cell(row['residual'], '.3e'):<12} "
            f"{_cell(row['k_predicted'], '.15g'):<20}"
        )


@timer
@logger()
def cmd_crossings(config: CrossingsConfig) -> int:
    """
    Locates the Re v_p = Re v_g crossing for every requested order; failures are
    reported per order without stopping the batch.

    Returns:
        int: 0 if at least one order produced a crossing, 3 otherwise.
    """
    rows = [
        crossing_row(config, alpha)
        for alpha in tqdm(config.alphas, desc="crossings", ncols=70, leave=False)
    ]
    print_table(rows)

    if config.csv_path:
        Path(config.csv_path).parent.mkdir(parents=True, exist_ok=True)
        frame = pl.DataFrame(
            rows,
            schema={
                "alpha": pl.Float64,
                "status": pl.Utf8,
                "k_star": pl.Float64,
                "residual": pl.Float64,
                "k_predicted": pl.Float64,
            },
        ).select(CROSSING_COLUMNS)
        format_floats(frame, ["alpha", "k_star", "residual", "k_predicted"]).write_csv(
            config.csv_path
        )
        logging.warning(f"Saved crossings to {config.csv_path}.")

    return 0 if any(row["status"] == OK for row in rows) else 3


if __name__ == "__main__":
    from fracwaves.cli import main

    sys.exit(main(["crossings", *sys.argv[1:]]))
