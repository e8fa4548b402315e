import functools
import json
import logging
import math
import os
import time
from pathlib import Path
from typing import Any

import polars as pl
from dotenv import load_dotenv
from pydantic import BaseModel, ConfigDict, field_validator

from fracwaves.CONSTANTS import DEFAULT_OUTPUT_DIR, LOG_FILE, OUTPUT_DIR_ENV


class FracWavesError(Exception):
    pass


class DomainError(FracWavesError, ValueError):
    pass


class SizeError(FracWavesError, ValueError):
    pass


class NoSignChange(FracWavesError):
    pass


class DegenerateCrossing(NoSignChange):
    pass


class ConvergenceError(FracWavesError):
    def __init__(
        self,
        message: str,
        error_estimate: float | None = None,
        mode_index: int | None = None,
    ) -> None:
        super().__init__(message)
        self.error_estimate = error_estimate
        self.mode_index = mode_index


class ComplexValue(BaseModel):
    model_config = ConfigDict(frozen=True)

    re: float = 0.0
    im: float = 0.0
    branch_warning: bool = False

    @field_validator("re", "im")
    def check_finite(cls, value):
        if not math.isfinite(value):
            raise ValueError(f"component must be finite, got {value}")
        return value

    @classmethod
    def from_complex(cls, value: complex, branch_warning: bool = False) -> "ComplexValue":
        return cls(re=value.real, im=value.imag, branch_warning=branch_warning)

    def __complex__(self) -> complex:
        return complex(self.re, self.im)

    def __abs__(self) -> float:
        return math.hypot(self.re, self.im)


def output_root() -> Path:
    """
    Returns the directory that receives sweeps, snapshots and logs.

    The location is read from the `FRACWAVES_OUTPUT_DIR` environment variable (a
    `.env` file is honoured) and falls back to `./output`.
    """
    load_dotenv()
    return Path(os.getenv(OUTPUT_DIR_ENV, DEFAULT_OUTPUT_DIR))


def save_path(sub_dir: str, filename: str, root: str | Path | None = None) -> str:
    """
    Returns the path of `filename` inside `sub_dir` of the output root, creating
    the sub-directory when needed.

    Args:
        sub_dir (str): The name of the subdirectory.
        filename (str): The name of the file.
        root (str | Path | None): Overrides the configured output root.

    Returns:
        str: The path of the file.

    Example:
        ```python
        path = save_path("sweeps", "kdv.csv")
        print(path)  # Output: "output/sweeps/kdv.csv"
        ```
    """
    directory = Path(root) if root is not None else output_root()
    directory = directory / sub_dir if sub_dir else directory
    directory.mkdir(parents=True, exist_ok=True)
    return str(directory / filename)


def export_json(data: dict[str, Any], filepath: str) -> None:
    try:
        with open(filepath, "w") as f:
            json.dump(data, f, indent=2, sort_keys=True)
        logging.warning(f"Saved data to {filepath}.")
    except OSError as exc:
        logging.error(f"Error writing JSON to '{filepath}': {exc}")
        raise


def format_floats(df: pl.DataFrame, columns: list[str]) -> pl.DataFrame:
    """Renders float columns with 17 significant digits so CSV output round-trips."""
    return df.with_columns(
        pl.col(columns).map_elements(
            lambda value: format(value, ".17g"),  # type: ignore
            return_dtype=pl.Utf8,
        )
    )


def logger(filename: str = LOG_FILE):
    def decorator(func):
        @functools.wraps(func)
        def wrapper(*args, **kwargs):
            logging.basicConfig(
                filename=save_path("logs", filename),
                level=logging.WARNING,
                format="%(asctime)s - %(levelname)s | %(message)s",
                datefmt="%d-%b-%y %H:%M:%S",
            )
            return func(*args, **kwargs)

        return wrapper

    return decorator


def timer(func):
    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        start = time.perf_counter()
        result = func(*args, **kwargs)
        total = time.perf_counter() - start
        logging.warning(f"Elapsed Time: {total:.6f} secs ~ {total / 60:.2f} mins.")
        return result

    return wrapper
