"""Configuration management for ratiopick."""

import os
from typing import TypedDict

from dotenv import load_dotenv


class SweepOptions(TypedDict):
    """Knobs for the verification sweeps."""

    trials: int  # Instances per property
    max_N: int  # Largest N in the exhaustive corpus
    trace_max_N: int  # Largest N for the monotone-trace sweep
    magnitude_bits: int  # Entries drawn from [1, 2**magnitude_bits]
    seed: int
    cap: int  # Largest C(N, n) the exhaustive oracles will enumerate


# Load environment variables from .env file
load_dotenv()

# Exhaustive search
ENUMERATION_CAP = int(os.getenv("RATIOPICK_ENUMERATION_CAP", "10000000"))

# Seeded corpus
DEFAULT_SEED = int(os.getenv("RATIOPICK_SEED", "0"))
DEFAULT_MAGNITUDE_BITS = int(os.getenv("RATIOPICK_MAGNITUDE_BITS", "8"))
DEFAULT_MAX_N = int(os.getenv("RATIOPICK_MAX_N", "12"))
DEFAULT_TRACE_MAX_N = int(os.getenv("RATIOPICK_TRACE_MAX_N", "64"))
DEFAULT_TRIALS = int(os.getenv("RATIOPICK_TRIALS", "100"))

# Logging
LOG_LEVEL = os.getenv("RATIOPICK_LOG_LEVEL", "INFO")

# Gappy adapter tolerances (binary64)
UNIT_TOLERANCE = 1e-12
ORTHONORMAL_TOLERANCE = 1e-10
BOUND_TOLERANCE = 1e-12
RECONSTRUCTION_TOLERANCE = 1e-10


def get_sweep_options() -> SweepOptions:
    """Get sweep defaults from the environment.

    Returns:
        SweepOptions: Defaults that command-line flags may override
    """
    return SweepOptions(
        trials=DEFAULT_TRIALS,
        max_N=DEFAULT_MAX_N,
        trace_max_N=DEFAULT_TRACE_MAX_N,
        magnitude_bits=DEFAULT_MAGNITUDE_BITS,
        seed=DEFAULT_SEED,
        cap=ENUMERATION_CAP,
    )
