"""Run-wide defaults gathered in one record.

Everything tunable from the command line lives here: the working precision
of the character-point sums, the seed feeding the modular-prime generator,
the process count for level sweeps, and the numeric tolerances used by the
verification suites.  The precision level alone can also be overridden
through the VERLINDE_PRECISION environment variable (useful for quickly
re-running a numeric suite at higher precision without touching flags).
"""

import os
from dataclasses import dataclass

from . import fusion
from .exactmat import DEFAULT_SEED

PRECISION_ENV = "VERLINDE_PRECISION"


@dataclass(frozen=True)
class Config:
    precision_bits: int = fusion.S_PRECISION_BITS
    seed: int = DEFAULT_SEED
    jobs: int = 0  # 0 means "all available cores"
    residual_tol: float = 1e-7
    eigen_tol: float = 1e-8
    cone_margin: float = 1e-8

    def effective_jobs(self) -> int:
        return self.jobs if self.jobs > 0 else (os.cpu_count() or 1)


def load(precision: int | None = None, seed: int | None = None, jobs: int | None = None) -> Config:
    """Build a Config from explicit flag values over the environment over
    the defaults.  Only the precision honors the environment variable."""
    if precision is None:
        env = os.environ.get(PRECISION_ENV)
        if env is not None:
            try:
                precision = int(env)
            except ValueError:
                raise ValueError(f"{PRECISION_ENV} must be an integer, got {env!r}")
    kwargs = {}
    if precision is not None:
        if precision < 53:
            raise ValueError("precision must be at least 53 bits")
        kwargs["precision_bits"] = precision
    if seed is not None:
        kwargs["seed"] = seed
    if jobs is not None:
        if jobs < 0:
            raise ValueError("jobs must be nonnegative")
        kwargs["jobs"] = jobs
    return Config(**kwargs)


def apply(cfg: Config) -> None:
    """Push the chosen precision into the character-sum evaluator.  Must
    run before the first S-matrix is built; entries are cached per level."""
    fusion.S_PRECISION_BITS = cfg.precision_bits
