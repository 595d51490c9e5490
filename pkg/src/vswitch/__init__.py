"""Velocity dispersions of a charged particle near a perfectly reflecting plane.

The package evaluates the regularized double integral of the renormalized
field correlator against a family of measurement switching functions,
through closed forms, a one-dimensional region-decomposition pipeline, and
an independent brute-force oracle.
"""

__version__ = "0.1.0"

from .core import (  # noqa: E402
    Component,
    DispersionBreakdown,
    Mode,
    ProbeConfig,
    RegimeCase,
    RegimeId,
    RegularizedValue,
    SwitchingSpec,
    TimeScales,
    Variant,
    derive_scales,
    validate,
)
from .dispersion import (  # noqa: E402
    classify_regime,
    dispersion,
    dvxy_lorentzian,
    dvxy_step,
    dvz_lorentzian,
    dvz_plateau,
    dvz_plateau_short,
    dvz_step,
    dvz_variant,
    validity_check,
)
from .kernels import Kernel, KernelComponent, SmoothKernel  # noqa: E402

__all__ = [
    "__version__",
    "Component",
    "DispersionBreakdown",
    "Kernel",
    "KernelComponent",
    "Mode",
    "ProbeConfig",
    "RegimeCase",
    "RegimeId",
    "RegularizedValue",
    "SmoothKernel",
    "SwitchingSpec",
    "TimeScales",
    "Variant",
    "classify_regime",
    "derive_scales",
    "dispersion",
    "dvxy_lorentzian",
    "dvxy_step",
    "dvz_lorentzian",
    "dvz_plateau",
    "dvz_plateau_short",
    "dvz_step",
    "dvz_variant",
    "validate",
    "validity_check",
]
