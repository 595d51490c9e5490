"""Shared domain types, validation and derived time scales.

Natural units with c = hbar = 1 are used throughout, so the mirror
distance ``z`` is a time (the one-way light travel time) and the mass is
an inverse time.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

from .errors import (
    InconsistentScales,
    NonPositiveDistance,
    NonPositiveInput,
    NonPositiveMass,
    VariantScaleMismatch,
)

#: Marker used for sigma2 (and mu, sigma1 where applicable) when the
#: defining ratio has a vanishing denominator.  It is assigned explicitly,
#: never produced by an overflowing division.
INFINITY = math.inf


class Variant(enum.Enum):
    STEP = "step"
    LORENTZIAN = "lorentzian"
    LORENTZ_PLATEAU = "plateau"
    VARIANT_A = "A"
    VARIANT_A_PRIME = "A'"
    VARIANT_B = "B"
    VARIANT_B_PRIME = "B'"
    VARIANT_C = "C"

    @classmethod
    def parse(cls, name: str) -> "Variant":
        key = name.strip()
        aliases = {
            "step": cls.STEP,
            "lorentzian": cls.LORENTZIAN,
            "plateau": cls.LORENTZ_PLATEAU,
            "lorentzplateau": cls.LORENTZ_PLATEAU,
            "lorentz-plateau": cls.LORENTZ_PLATEAU,
            "a": cls.VARIANT_A,
            "a'": cls.VARIANT_A_PRIME,
            "aprime": cls.VARIANT_A_PRIME,
            "b": cls.VARIANT_B,
            "b'": cls.VARIANT_B_PRIME,
            "bprime": cls.VARIANT_B_PRIME,
            "c": cls.VARIANT_C,
        }
        lowered = key.lower().replace("variant", "").replace("_", "")
        if lowered in aliases:
            return aliases[lowered]
        from .errors import UnsupportedVariant

        raise UnsupportedVariant(f"unknown switching variant {name!r}")

    @property
    def has_tails(self) -> bool:
        return self not in (Variant.STEP, Variant.LORENTZIAN)

    @property
    def has_plateau(self) -> bool:
        return self in (
            Variant.STEP,
            Variant.LORENTZ_PLATEAU,
            Variant.VARIANT_A,
            Variant.VARIANT_A_PRIME,
        )


class Mode(enum.Enum):
    DROP_DIVERGENCE = "drop"
    COMPTON_CUTOFF = "compton"

    @classmethod
    def parse(cls, name: "str | Mode") -> "Mode":
        if isinstance(name, Mode):
            return name
        key = name.strip().lower()
        for mode in cls:
            if key in (mode.value, mode.name.lower(), mode.name.lower().replace("_", "")):
                return mode
        raise ValueError(f"unknown regularization mode {name!r}")


class Component(enum.Enum):
    Z = "z"
    X = "x"
    Y = "y"


class RegimeId(enum.Enum):
    I = "I"
    II = "II"
    III = "III"
    IV = "IV"
    SHORT_M = "ShortM"
    SHORT_S = "ShortS"


class Term(enum.Enum):
    M = "M"
    S = "S"
    MS = "MS"


class Sign(enum.Enum):
    POSITIVE = "Positive"
    NEGATIVE = "Negative"


@dataclass(frozen=True)
class ProbeConfig:
    """Charge, mass and mirror distance of the probe particle."""

    charge_e: float
    mass_m: float
    distance_z: float

    @property
    def e2_over_m2(self) -> float:
        return self.charge_e**2 / self.mass_m**2


@dataclass(frozen=True)
class TimeScales:
    """Measurement time scales together with the mirror distance.

    Only ``tau1``, ``tau2`` and ``z`` are stored.  The dimensionless
    combinations are properties so they can never drift from the inputs.
    ``tau1 = 0`` is reserved for the pure Lorentzian weight, whose single
    scale is kept as ``tau2 = pi * tau``.
    """

    tau1: float
    tau2: float
    z: float

    @property
    def mu(self) -> float:
        if self.tau1 == 0.0:
            return INFINITY
        return self.tau2 / (math.pi * self.tau1)

    @property
    def sigma1(self) -> float:
        if self.tau1 == 0.0:
            return INFINITY
        return 2.0 * self.z / self.tau1

    @property
    def sigma2(self) -> float:
        if self.tau2 == 0.0:
            return INFINITY
        # sigma1 / mu written without the intermediate ratio so it stays
        # finite in the Lorentzian bookkeeping where tau1 = 0.
        return 2.0 * math.pi * self.z / self.tau2

    @property
    def tau_lorentz(self) -> float:
        """Width of the Lorentzian tails, tau2 / pi (equal to mu * tau1)."""
        return self.tau2 / math.pi


def derive_scales(tau1: float, tau2: float, z: float) -> TimeScales:
    """Build :class:`TimeScales` from the primary scales.

    Raises :class:`NonPositiveInput` unless ``tau1 > 0``, ``tau2 >= 0``
    and ``z > 0``.
    """
    for name, value in (("tau1", tau1), ("z", z)):
        if not (math.isfinite(value) and value > 0.0):
            raise NonPositiveInput(f"{name} must be positive and finite, got {value!r}")
    if not (math.isfinite(tau2) and tau2 >= 0.0):
        raise NonPositiveInput(f"tau2 must be non-negative and finite, got {tau2!r}")
    return TimeScales(float(tau1), float(tau2), float(z))


@dataclass(frozen=True)
class SwitchingSpec:
    """A member of the switching-function family with its scales."""

    variant: Variant
    scales: TimeScales

    @classmethod
    def step(cls, tau: float, z: float) -> "SwitchingSpec":
        return cls(Variant.STEP, derive_scales(tau, 0.0, z))

    @classmethod
    def lorentzian(cls, tau: float, z: float) -> "SwitchingSpec":
        if not (math.isfinite(tau) and tau > 0.0):
            raise NonPositiveInput(f"Lorentzian scale must be positive, got {tau!r}")
        if not (math.isfinite(z) and z > 0.0):
            raise NonPositiveInput(f"z must be positive, got {z!r}")
        return cls(Variant.LORENTZIAN, TimeScales(0.0, math.pi * float(tau), float(z)))

    @classmethod
    def plateau(cls, tau1: float, tau2: float, z: float) -> "SwitchingSpec":
        return cls(Variant.LORENTZ_PLATEAU, derive_scales(tau1, tau2, z))

    @classmethod
    def of(cls, variant: "Variant | str", tau1: float, tau2: float, z: float) -> "SwitchingSpec":
        """Generic constructor.  For the Lorentzian, ``tau1`` is its scale."""
        if isinstance(variant, str):
            variant = Variant.parse(variant)
        if variant is Variant.LORENTZIAN:
            return cls.lorentzian(tau1, z)
        return cls(variant, derive_scales(tau1, tau2, z))

    @property
    def tau(self) -> float:
        """Reference time: plateau width, or the Lorentzian width."""
        if self.variant is Variant.LORENTZIAN:
            return self.scales.tau_lorentz
        return self.scales.tau1


@dataclass(frozen=True)
class RegularizedValue:
    """The pair (A, B) standing for ``A / rho + B + O(rho)``.

    ``rho`` is the half-width of the excised window around each pole,
    measured in units of a reference time of the calculation.
    ``rho_used`` is ``None`` when the value is symbolic in rho.
    """

    pole_coeff: float
    finite_part: float
    rho_used: float | None = None

    @classmethod
    def regular(cls, value: float) -> "RegularizedValue":
        return cls(0.0, float(value))

    @property
    def is_regular(self) -> bool:
        return self.pole_coeff == 0.0

    def __add__(self, other: "RegularizedValue") -> "RegularizedValue":
        if not isinstance(other, RegularizedValue):
            return NotImplemented
        rho = self.rho_used if self.rho_used == other.rho_used else None
        return RegularizedValue(
            self.pole_coeff + other.pole_coeff, self.finite_part + other.finite_part, rho
        )

    def __sub__(self, other: "RegularizedValue") -> "RegularizedValue":
        return self + other.scaled(-1.0)

    def scaled(self, factor: float) -> "RegularizedValue":
        return RegularizedValue(factor * self.pole_coeff, factor * self.finite_part, self.rho_used)

    def __mul__(self, factor: float) -> "RegularizedValue":
        return self.scaled(float(factor))

    __rmul__ = __mul__

    def at(self, rho: float) -> float:
        """Leading-order value at a finite excision ``rho``."""
        return self.pole_coeff / rho + self.finite_part


ZERO = RegularizedValue(0.0, 0.0)


@dataclass(frozen=True)
class RegimeCase:
    case_id: RegimeId
    dominant_term: Term
    sign: Sign

    def __post_init__(self) -> None:
        if self.case_id is RegimeId.IV and self.sign is not Sign.NEGATIVE:
            raise ValueError("case IV carries a negative sign")
        if self.case_id is RegimeId.I and self.dominant_term is not Term.M:
            raise ValueError("case I is dominated by the plateau term")


@dataclass(frozen=True)
class DispersionBreakdown:
    """Velocity dispersion split into plateau, tail and cross terms.

    ``tau_ref`` is the time unit of rho for every term, needed to apply
    the Compton cutoff.  ``estimates`` holds order-of-magnitude values
    from the asymptotic bracket formulas (with their O(1) factor set to 1)
    and the ratios of exact values to them; they are never used for the
    total.
    """

    m_term: RegularizedValue
    s_term: RegularizedValue
    ms_term: RegularizedValue
    total: float
    mode: Mode
    component: Component
    tau_ref: float
    mass: float
    estimates: dict[str, float] = field(default_factory=dict)

    @property
    def terms(self) -> tuple[RegularizedValue, RegularizedValue, RegularizedValue]:
        return (self.m_term, self.s_term, self.ms_term)


def validate(config: ProbeConfig, spec: SwitchingSpec) -> tuple[ProbeConfig, SwitchingSpec]:
    """Check all invariants and return the inputs unchanged."""
    if not math.isfinite(config.charge_e):
        raise NonPositiveInput(f"charge must be finite, got {config.charge_e!r}")
    if not (math.isfinite(config.mass_m) and config.mass_m > 0.0):
        raise NonPositiveMass(f"mass must be positive, got {config.mass_m!r}")
    if not (math.isfinite(config.distance_z) and config.distance_z > 0.0):
        raise NonPositiveDistance(f"distance must be positive, got {config.distance_z!r}")

    sc = spec.scales
    if sc.z != config.distance_z:
        raise InconsistentScales(
            f"switching scales were derived with z={sc.z!r} but the probe sits at "
            f"z={config.distance_z!r}"
        )
    if not (math.isfinite(sc.tau1) and math.isfinite(sc.tau2)) or sc.tau1 < 0 or sc.tau2 < 0:
        raise NonPositiveInput(f"time scales must be finite and non-negative: {sc!r}")

    v = spec.variant
    if v is Variant.LORENTZIAN:
        if sc.tau1 != 0.0 or sc.tau2 <= 0.0:
            raise VariantScaleMismatch("the Lorentzian weight needs tau1 = 0 and tau2 > 0")
    elif v is Variant.STEP:
        if sc.tau1 <= 0.0:
            raise NonPositiveInput("step duration must be positive")
        if sc.tau2 != 0.0:
            raise VariantScaleMismatch("the step weight has no tails (mu must be 0)")
    else:
        if sc.tau1 <= 0.0:
            raise NonPositiveInput("plateau duration must be positive")
        if sc.tau2 <= 0.0:
            raise VariantScaleMismatch(f"{v.value} needs Lorentzian tails (mu > 0)")
    return config, spec
