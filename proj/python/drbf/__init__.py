"""Distributionally robust receive beamforming."""

from ._drbf import (
    Error,
    InvalidArgument,
    NotConverged,
    SingularMatrix,
    __version__,
    capon,
    fit,
    generate_episode,
    method_names,
    mse,
    normalize_config,
    preset_config,
    preset_names,
    run_experiment,
    ser,
    wiener,
    zero_forcing,
)

__all__ = [
    "Error",
    "InvalidArgument",
    "NotConverged",
    "SingularMatrix",
    "__version__",
    "capon",
    "fit",
    "generate_episode",
    "method_names",
    "mse",
    "normalize_config",
    "preset_config",
    "preset_names",
    "run_experiment",
    "ser",
    "wiener",
    "zero_forcing",
]
