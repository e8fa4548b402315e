import logging
import sys

from pydantic import BaseModel, ConfigDict, field_validator

from fracwaves.dispersion import FractionalOrder
from fracwaves.mittag_leffler import evaluate_mittag_leffler
from fracwaves.utils import ConvergenceError, DomainError, logger, timer


class MLEvalConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    alpha: float
    z_re: float = 0.0
    z_im: float = 0.0

    @field_validator("alpha")
    def check_alpha(cls, alpha):
        return FractionalOrder(alpha=alpha).alpha


@timer
@logger()
def cmd_ml_eval(config: MLEvalConfig) -> int:
    """Prints E_alpha(z) to 15 significant digits with its error estimate and regime."""
    z = complex(config.z_re, config.z_im)
    try:
        result = evaluate_mittag_leffler(config.alpha, z)
    except (ConvergenceError, DomainError) as exc:
        logging.error(f"E_{config.alpha}({z}) failed: {exc}")
        print(f"error: {exc}", file=sys.stderr)
        return 3

    print(f"re: {result.value.re:.15g}")
    print(f"im: {result.value.im:.15g}")
    print(f"error_estimate: {result.error_estimate:.3e}")
    print(f"regime: {result.regime.value}")
    return 0


if __name__ == "__main__":
    from fracwaves.cli import main

    sys.exit(main(["ml-eval", *sys.argv[1:]]))
