"""Python bindings for the bvft transform laboratory."""

from ._bvft import (
    ConfigError,
    DegenerateInput,
    ParameterError,
    RegistryError,
    ci,
    evaluate,
    families,
    family_description,
    fourier_cosine,
    fourier_sine,
    fubini_residual,
    h0_script_t,
    hilbert_odd,
    membership,
    odd_functions,
    run,
    script_t,
    si,
    t_transform,
)

__all__ = [
    "ConfigError",
    "DegenerateInput",
    "ParameterError",
    "RegistryError",
    "ci",
    "evaluate",
    "families",
    "family_description",
    "fourier_cosine",
    "fourier_sine",
    "fubini_residual",
    "h0_script_t",
    "hilbert_odd",
    "membership",
    "odd_functions",
    "run",
    "script_t",
    "si",
    "t_transform",
]
