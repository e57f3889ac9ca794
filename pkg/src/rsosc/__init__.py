"""Reciprocal-symmetric finite-difference oscillator toolkit."""

__version__ = "0.1.0"

from rsosc.dispersion import (
    Branch,
    Mode,
    ModeKind,
    OscillatorParams,
    SampledSeries,
    angular_frequency_from_spring,
    central_difference,
    continuum_limit_error,
    dispersion_frequency,
    enumerate_modes,
    make_mode,
    mode_value,
    oracle_root_scan,
    reciprocity_product,
    residual,
)
from rsosc.errors import (
    DegenerateBasis,
    DegenerateRoot,
    MismatchError,
    NyquistViolation,
    ParityError,
    ZeroSolution,
)

__all__ = [
    "__version__",
    "Branch",
    "Mode",
    "ModeKind",
    "OscillatorParams",
    "SampledSeries",
    "angular_frequency_from_spring",
    "central_difference",
    "continuum_limit_error",
    "dispersion_frequency",
    "enumerate_modes",
    "make_mode",
    "mode_value",
    "oracle_root_scan",
    "reciprocity_product",
    "residual",
    "DegenerateBasis",
    "DegenerateRoot",
    "MismatchError",
    "NyquistViolation",
    "ParityError",
    "ZeroSolution",
]
