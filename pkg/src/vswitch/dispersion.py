"""Velocity dispersions for every switching weight.

Closed forms are used wherever they are exact: the step and Lorentzian
weights, and the plateau and pure-tail terms of the Lorentz-plateau
weight.  The cross term between plateau and tails has no closed form and
is always taken from the region-decomposition pipeline.

Asymptotic bracket formulas (order-of-magnitude estimates with an
unspecified O(1) factor) are reported in ``DispersionBreakdown.estimates``
next to the ratio of the exact value to the bracket.  They never enter
the totals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from scipy import constants

from .core import (
    ZERO,
    Component,
    DispersionBreakdown,
    Mode,
    ProbeConfig,
    RegimeCase,
    RegimeId,
    RegularizedValue,
    Sign,
    SwitchingSpec,
    Term,
    Variant,
    validate,
)
from .errors import (
    LightConeCoincidence,
    NonPositiveInput,
    ShortMeasurementBranch,
    UnsupportedVariant,
)
from .kernels import Kernel, KernelComponent
from .regions import grouped_MS, integral_MS, integral_S1, integral_S2
from .singular import evaluate

__all__ = [
    "dvz_step",
    "dvxy_step",
    "dvz_lorentzian",
    "dvxy_lorentzian",
    "step_breakdown",
    "lorentzian_breakdown",
    "dvz_plateau",
    "dvz_plateau_short",
    "dvz_variant",
    "dispersion",
    "classify_regime",
    "validity_check",
    "ValidityReport",
    "validity_coefficient",
    "FINE_STRUCTURE",
]

PI2 = math.pi**2
#: e^2 in natural Gaussian units.
FINE_STRUCTURE = constants.fine_structure


def _check_probe(probe: ProbeConfig) -> None:
    validate(probe, SwitchingSpec.step(1.0, probe.distance_z))


def _check_tau(tau: float, name: str = "tau") -> None:
    if not (math.isfinite(tau) and tau > 0.0):
        raise NonPositiveInput(f"{name} must be positive, got {tau!r}")


def _log_ratio(sigma: float) -> float:
    """``ln|(1 + sigma)/(1 - sigma)|``, computed stably on both sides of 1."""
    if sigma < 1.0:
        return 2.0 * math.atanh(sigma)
    return 2.0 * math.atanh(1.0 / sigma)


# -- step weight --------------------------------------------------------------------

def dvz_step(probe: ProbeConfig, tau: float) -> float:
    """Normal-direction dispersion for a step of duration ``tau``.

    ``(e^2/(32 pi^2 m^2)) (tau/z^3) * 2 ln|(2z + tau)/(2z - tau)|``; for
    ``tau > 2z`` this is the finite part after regularization.
    """
    _check_probe(probe)
    _check_tau(tau)
    z = probe.distance_z
    if tau == 2.0 * z:
        raise LightConeCoincidence("tau = 2z puts the kernel pole on the plateau edge")
    if probe.charge_e == 0.0:
        return 0.0
    return probe.e2_over_m2 / (32.0 * PI2) * (tau / z**3) * 2.0 * _log_ratio(tau / (2.0 * z))


def dvxy_step(probe: ProbeConfig, tau: float) -> float:
    """Parallel-direction dispersion for a step of duration ``tau``."""
    _check_probe(probe)
    _check_tau(tau)
    z = probe.distance_z
    if tau == 2.0 * z:
        raise LightConeCoincidence("tau = 2z puts the kernel pole on the plateau edge")
    if probe.charge_e == 0.0:
        return 0.0
    log_part = (tau / (64.0 * z**3)) * 2.0 * _log_ratio(tau / (2.0 * z))
    rational = tau * tau / (8.0 * z * z * (tau * tau - 4.0 * z * z))
    return probe.e2_over_m2 / PI2 * (log_part - rational)


def _step_pole(probe: ProbeConfig, tau: float, component: KernelComponent) -> float:
    """Pole coefficient (rho in units of tau) of the step dispersion."""
    s1 = 2.0 * probe.distance_z / tau
    if s1 >= 1.0:
        return 0.0
    e2m2 = probe.e2_over_m2
    if component is KernelComponent.ZZ:
        return e2m2 * (1.0 - s1) / (PI2 * tau * tau * s1 * s1)
    return e2m2 * (1.0 + s1) / (2.0 * PI2 * tau * tau * s1 * s1)


# -- Lorentzian weight -----------------------------------------------------------

def dvz_lorentzian(probe: ProbeConfig, tau: float) -> float:
    """``e^2/(16 pi^2 m^2 tau^2) (1 + z^2/tau^2)^-2``."""
    _check_probe(probe)
    _check_tau(tau)
    r = (probe.distance_z / tau) ** 2
    return probe.e2_over_m2 / (16.0 * PI2 * tau * tau) / (1.0 + r) ** 2


def dvxy_lorentzian(probe: ProbeConfig, tau: float) -> float:
    """``-e^2/(16 pi^2 m^2 tau^2) (1 - z^2/tau^2)(1 + z^2/tau^2)^-3``."""
    _check_probe(probe)
    _check_tau(tau)
    r = (probe.distance_z / tau) ** 2
    return -probe.e2_over_m2 / (16.0 * PI2 * tau * tau) * (1.0 - r) / (1.0 + r) ** 3


def _lorentzian_pole(probe: ProbeConfig, tau: float, component: KernelComponent) -> float:
    """Pole coefficient for the Lorentzian weight, rho in units of ``tau``.

    The double integral is the integral of the weight autocorrelation
    ``C(T) = 2 tau^3 / (pi (T^2 + 4 tau^2))`` against the kernel; each of
    the two poles contributes ``2 (C k_{-2} + C' k_{-3}) / tau``.
    """
    kern = Kernel(component, probe)
    a = 2.0 * probe.distance_z
    c = 2.0 * tau**3 / (math.pi * (a * a + 4.0 * tau * tau))
    dc = -2.0 * a * c / (a * a + 4.0 * tau * tau)
    lc = kern.laurent(a)
    return 2.0 * 2.0 * (c * lc[-2] + dc * lc[-3]) / tau


# -- breakdown assembly ----------------------------------------------------------

def _assemble(
    m: RegularizedValue,
    s: RegularizedValue,
    ms: RegularizedValue,
    mode: Mode | str,
    component: Component,
    probe: ProbeConfig,
    tau_ref: float,
    estimates: dict[str, float] | None = None,
) -> DispersionBreakdown:
    mode = Mode.parse(mode)
    total = sum(evaluate(v, mode, probe.mass_m, tau_ref) for v in (m, s, ms))
    return DispersionBreakdown(
        m_term=m,
        s_term=s,
        ms_term=ms,
        total=total,
        mode=mode,
        component=component,
        tau_ref=tau_ref,
        mass=probe.mass_m,
        estimates=dict(estimates or {}),
    )


def step_breakdown(
    probe: ProbeConfig, tau: float, mode: Mode | str = Mode.DROP_DIVERGENCE, component: Component = Component.Z
) -> DispersionBreakdown:
    if component is Component.Z:
        val, kc = dvz_step(probe, tau), KernelComponent.ZZ
    else:
        val, kc = dvxy_step(probe, tau), KernelComponent.XX
    m = RegularizedValue(_step_pole(probe, tau, kc), val)
    return _assemble(m, ZERO, ZERO, mode, component, probe, tau)


def lorentzian_breakdown(
    probe: ProbeConfig, tau: float, mode: Mode | str = Mode.DROP_DIVERGENCE, component: Component = Component.Z
) -> DispersionBreakdown:
    if component is Component.Z:
        val, kc = dvz_lorentzian(probe, tau), KernelComponent.ZZ
    else:
        val, kc = dvxy_lorentzian(probe, tau), KernelComponent.XX
    s = RegularizedValue(_lorentzian_pole(probe, tau, kc), val)
    return _assemble(ZERO, s, ZERO, mode, component, probe, tau)


# -- Lorentz-plateau weight --------------------------------------------------------

def _m_term(probe: ProbeConfig, tau: float) -> RegularizedValue:
    s1 = 2.0 * probe.distance_z / tau
    finite = probe.e2_over_m2 / (2.0 * PI2 * tau * tau) * s1**-3 * _log_ratio(s1)
    return RegularizedValue(_step_pole(probe, tau, KernelComponent.ZZ), finite)


def _s_term(probe: ProbeConfig, tau: float, mu: float) -> RegularizedValue:
    if mu == 0.0:
        return ZERO
    s1 = 2.0 * probe.distance_z / tau
    e2m2 = probe.e2_over_m2
    finite = mu * mu * e2m2 / (tau * tau * (s1 * s1 + 4.0 * mu * mu) ** 2)
    pole = 2.0 * e2m2 * mu**3 / (math.pi * tau * tau * s1 * s1 * (s1 * s1 + 4.0 * mu * mu))
    return RegularizedValue(pole, finite)


def _plateau_terms(probe: ProbeConfig, tau1: float, tau2: float):
    _check_probe(probe)
    _check_tau(tau1, "tau1")
    if not (math.isfinite(tau2) and tau2 >= 0.0):
        raise NonPositiveInput(f"tau2 must be non-negative, got {tau2!r}")
    z = probe.distance_z
    if tau1 == 2.0 * z:
        raise LightConeCoincidence("tau1 = 2z puts the kernel pole on the plateau edge")
    mu = tau2 / (math.pi * tau1)
    m = _m_term(probe, tau1)
    if mu == 0.0 or probe.charge_e == 0.0:
        return mu, m, _s_term(probe, tau1, mu), ZERO
    kern = Kernel(KernelComponent.ZZ, probe)
    return mu, m, _s_term(probe, tau1, mu), grouped_MS(kern, tau1, mu)


def _long_estimates(probe, tau1, tau2, mu, m, s, ms) -> dict[str, float]:
    e2m2 = probe.e2_over_m2
    z = probe.distance_z
    s1 = 2.0 * z / tau1
    est: dict[str, float] = {"m_leading": e2m2 / (PI2 * tau1 * tau1 * s1 * s1)}
    if mu > 0.0 and e2m2 > 0.0:
        ms_bracket = -2.0 * mu * e2m2 / (3.0 * math.pi * tau1 * tau1)
        est["ms_bracket"] = ms_bracket
        est["ms_o1"] = ms.finite_part / ms_bracket
        s_factor = math.pi**4 * z * z * tau2 * tau2 / (4.0 * (PI2 * z * z + tau2 * tau2) ** 2)
        est["s_factor"] = s_factor
        est["total_bracket"] = (1.0 + s_factor - (8.0 / 3.0) * (z / tau1) ** 2 * (tau2 / tau1)) * m.finite_part
        iv = -(2.0 * e2m2 / (3.0 * PI2)) * tau2 / tau1**3
        est["case_iv_bracket"] = iv
        est["case_iv_o1"] = (m.finite_part + s.finite_part + ms.finite_part) / iv
    return est


def _short_estimates(probe, tau1, mu, m, s, ms) -> dict[str, float]:
    e2m2 = probe.e2_over_m2
    s1 = 2.0 * probe.distance_z / tau1
    lead = e2m2 / (PI2 * s1**4 * tau1 * tau1)
    est: dict[str, float] = {"m_leading": lead}
    if mu > 0.0 and e2m2 > 0.0:
        bracket = 2.0 * mu * e2m2 / (math.pi * s1**4 * tau1 * tau1)
        est["ms_bracket"] = bracket
        est["ms_o1"] = ms.finite_part / bracket
        total = m.finite_part + s.finite_part + ms.finite_part
        if mu * s1 > 1.0:
            est["total_bracket"] = bracket
            est["total_o1"] = total / bracket
        else:
            est["total_bracket"] = lead
            est["total_o1"] = total / lead
    return est


def _cancellation(m: RegularizedValue, s: RegularizedValue, ms: RegularizedValue) -> float:
    """``|total| / sum |term|`` for the finite parts.

    The cross term carries an absolute error of roughly 1e-11 of its own
    size, so a ratio below about 1e-10 means the sign of the total is not
    resolved.
    """
    parts = (m.finite_part, s.finite_part, ms.finite_part)
    denom = sum(abs(p) for p in parts)
    return abs(sum(parts)) / denom if denom else 1.0


def dvz_plateau(
    probe: ProbeConfig, tau1: float, tau2: float, mode: Mode | str = Mode.DROP_DIVERGENCE
) -> DispersionBreakdown:
    """Normal-direction dispersion for the Lorentz-plateau weight, ``tau1 > 2z``."""
    if tau1 < 2.0 * probe.distance_z:
        raise ShortMeasurementBranch("tau1 < 2z: use dvz_plateau_short")
    mu, m, s, ms = _plateau_terms(probe, tau1, tau2)
    est = _long_estimates(probe, tau1, tau2, mu, m, s, ms)
    est["cancellation"] = _cancellation(m, s, ms)
    return _assemble(m, s, ms, mode, Component.Z, probe, tau1, est)


def dvz_plateau_short(
    probe: ProbeConfig, tau1: float, tau2: float, mode: Mode | str = Mode.DROP_DIVERGENCE
) -> DispersionBreakdown:
    """Normal-direction dispersion for the Lorentz-plateau weight, ``tau1 < 2z``."""
    if tau1 > 2.0 * probe.distance_z:
        raise ShortMeasurementBranch("tau1 > 2z: use dvz_plateau")
    mu, m, s, ms = _plateau_terms(probe, tau1, tau2)
    est = _short_estimates(probe, tau1, mu, m, s, ms)
    est["cancellation"] = _cancellation(m, s, ms)
    return _assemble(m, s, ms, mode, Component.Z, probe, tau1, est)


# -- modified weights -------------------------------------------------------------

def dvz_variant(
    variant: Variant | str,
    probe: ProbeConfig,
    tau1: float,
    tau2: float,
    mode: Mode | str = Mode.DROP_DIVERGENCE,
) -> DispersionBreakdown:
    """Normal-direction dispersion for the one-tail and tails-only weights.

    Terms are the region classes actually present: A and A' have the
    plateau region and two plateau-tail regions; B and B' a single
    tail-with-itself region; C both tail classes, reported in ``s_term``.
    """
    if isinstance(variant, str):
        variant = Variant.parse(variant)
    if variant not in (
        Variant.VARIANT_A,
        Variant.VARIANT_A_PRIME,
        Variant.VARIANT_B,
        Variant.VARIANT_B_PRIME,
        Variant.VARIANT_C,
    ):
        raise UnsupportedVariant(f"{variant.value} is not a modified weight")
    _check_probe(probe)
    _check_tau(tau1, "tau1")
    if not (math.isfinite(tau2) and tau2 > 0.0):
        raise NonPositiveInput(f"tau2 must be positive for {variant.value}, got {tau2!r}")
    z = probe.distance_z
    if tau1 == 2.0 * z:
        raise LightConeCoincidence("tau1 = 2z puts the kernel pole on the plateau edge")
    mu = tau2 / (math.pi * tau1)
    kern = Kernel(KernelComponent.ZZ, probe)
    e2m2 = probe.e2_over_m2
    est: dict[str, float] = {}
    if variant in (Variant.VARIANT_A, Variant.VARIANT_A_PRIME):
        m = _m_term(probe, tau1)
        ms = integral_MS(kern, tau1, mu) * 2.0
        plateau_ms = grouped_MS(kern, tau1, mu)
        est["m_plus_half_ms"] = m.finite_part + 0.5 * plateau_ms.finite_part
        return _assemble(m, ZERO, ms, mode, Component.Z, probe, tau1, est)
    s_plateau = _s_term(probe, tau1, mu)
    if variant in (Variant.VARIANT_B, Variant.VARIANT_B_PRIME):
        s = integral_S1(kern, tau1, mu)
        est["half_s"] = 0.5 * s_plateau.finite_part
        return _assemble(ZERO, s, ZERO, mode, Component.Z, probe, tau1, est)
    s = integral_S1(kern, tau1, mu) * 2.0 + integral_S2(kern, tau1, mu) * 2.0
    if e2m2 > 0.0:
        est["Z"] = (s.finite_part - s_plateau.finite_part) / (4.0 * mu * e2m2 / (3.0 * PI2 * tau1 * tau1))
    return _assemble(ZERO, s, ZERO, mode, Component.Z, probe, tau1, est)


def dispersion(
    probe: ProbeConfig,
    spec: SwitchingSpec,
    mode: Mode | str = Mode.DROP_DIVERGENCE,
    component: Component = Component.Z,
) -> DispersionBreakdown:
    """Dispatch to the routine that serves ``spec`` and ``component``.

    The parallel components of tailed weights have no closed-form route;
    use :func:`vswitch.oracle.oracle_breakdown` for them.
    """
    validate(probe, spec)
    v = spec.variant
    sc = spec.scales
    if v is Variant.STEP:
        return step_breakdown(probe, sc.tau1, mode, component)
    if v is Variant.LORENTZIAN:
        return lorentzian_breakdown(probe, sc.tau_lorentz, mode, component)
    if component is not Component.Z:
        raise UnsupportedVariant(
            f"parallel components for the {v.value} weight are available from the oracle only"
        )
    if v is Variant.LORENTZ_PLATEAU:
        if sc.tau1 < 2.0 * probe.distance_z:
            return dvz_plateau_short(probe, sc.tau1, sc.tau2, mode)
        return dvz_plateau(probe, sc.tau1, sc.tau2, mode)
    return dvz_variant(v, probe, sc.tau1, sc.tau2, mode)


# -- regimes and validity ----------------------------------------------------------------

_MUCH_LESS = 0.1
_APPROX_LO, _APPROX_HI = 0.5, 2.0
_III_BAND = 10.0


def classify_regime(probe: ProbeConfig, tau1: float, tau2: float) -> RegimeCase:
    """Assign ``(tau1, tau2, z)`` to one of the qualitative regimes.

    For ``tau1 > 2z``: IV when ``tau2/tau1`` exceeds ``(tau1/2z)^2`` by at
    least 10x, III within a factor 10 of it, otherwise I or II according
    to ``tau2/2z`` (I below the geometric midpoint of 0.1 and 0.5).
    For ``tau1 < 2z``: ShortM when ``mu sigma1 < 1``, else ShortS.
    """
    _check_tau(tau1, "tau1")
    if not (math.isfinite(tau2) and tau2 >= 0.0):
        raise NonPositiveInput(f"tau2 must be non-negative, got {tau2!r}")
    two_z = 2.0 * probe.distance_z
    if tau1 == two_z:
        raise LightConeCoincidence("tau1 = 2z is the boundary between the two branches")
    if tau1 < two_z:
        mu = tau2 / (math.pi * tau1)
        s1 = two_z / tau1
        if mu * s1 < 1.0:
            return RegimeCase(RegimeId.SHORT_M, Term.M, Sign.POSITIVE)
        return RegimeCase(RegimeId.SHORT_S, Term.MS, Sign.POSITIVE)
    q = (tau2 / tau1) / (tau1 / two_z) ** 2
    if q >= _III_BAND:
        return RegimeCase(RegimeId.IV, Term.MS, Sign.NEGATIVE)
    if q >= 1.0 / _III_BAND:
        return RegimeCase(RegimeId.III, Term.S, Sign.POSITIVE)
    r = tau2 / two_z
    if r < math.sqrt(_MUCH_LESS * _APPROX_LO):
        return RegimeCase(RegimeId.I, Term.M, Sign.POSITIVE)
    return RegimeCase(RegimeId.II, Term.M, Sign.POSITIVE)


@dataclass(frozen=True)
class ValidityReport:
    """Outcome of the small-displacement check.

    ``bound`` is the largest ``tau2/tau1`` compatible with the check when
    the total follows the large-tail asymptote; ``ratio`` is
    ``sqrt|dispersion| * Delta T / z``.
    """

    valid: bool
    bound: float
    ratio: float
    delta_t: float


def validity_coefficient(charge_e2: float = FINE_STRUCTURE) -> float:
    """``(3 pi^2 / (2 e^2))^(1/3)``, the prefactor of ``(z/lambda_c)^(2/3)`` in the bound."""
    return (3.0 * PI2 / (2.0 * charge_e2)) ** (1.0 / 3.0)


def validity_check(probe: ProbeConfig, tau1: float, tau2: float, dispersion_value: float) -> ValidityReport:
    """Check ``sqrt|<dv^2>| * max(tau1, tau2) < z``."""
    delta_t = max(tau1, tau2)
    z = probe.distance_z
    ratio = math.sqrt(abs(dispersion_value)) * delta_t / z
    if probe.charge_e == 0.0:
        bound = math.inf
    else:
        bound = (3.0 * PI2 * probe.mass_m**2 * z * z / (2.0 * probe.charge_e**2)) ** (1.0 / 3.0)
    return ValidityReport(valid=ratio < 1.0, bound=bound, ratio=ratio, delta_t=delta_t)
