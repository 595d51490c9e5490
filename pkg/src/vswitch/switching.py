"""Switching functions F(t) and their normalization integrals.

All members of the family use the symmetric convention in which the
measuring plateau (when present) occupies ``|t| <= tau/2``.  A step on
``[0, tau]`` differs from the symmetric step by a time translation, which
leaves the dispersion double integral unchanged.
"""

from __future__ import annotations

import math

import numpy as np

from .core import SwitchingSpec, Variant
from .errors import UnsupportedVariant

__all__ = ["eval_switch", "switch_value", "tail_area", "plateau_area"]


def _tail(s, mu):
    # Half-Lorentzian tail as a function of the distance s >= 0 (in units of
    # tau) from the plateau edge.
    return mu * mu / (s * s + mu * mu)


def eval_switch(spec: SwitchingSpec, t):
    """Evaluate the switching weight at time(s) ``t``.

    Accepts scalars or arrays and returns the same shape.  Values lie in
    ``[0, 1]``.
    """
    t_arr = np.asarray(t, dtype=float)
    out = _eval(spec, t_arr)
    if np.ndim(t) == 0:
        return float(out)
    return out


def _eval(spec: SwitchingSpec, t: np.ndarray) -> np.ndarray:
    v = spec.variant
    sc = spec.scales
    if v is Variant.LORENTZIAN:
        tl = sc.tau_lorentz
        return (tl * tl / math.pi) / (t * t + tl * tl)

    tau = sc.tau1
    half = 0.5 * tau
    if v is Variant.STEP:
        return np.where(np.abs(t) <= half, 1.0, 0.0)

    mu = sc.mu
    if v in (Variant.VARIANT_A_PRIME, Variant.VARIANT_B_PRIME):
        t = -t
        v = Variant.VARIANT_A if v is Variant.VARIANT_A_PRIME else Variant.VARIANT_B

    inside = np.abs(t) <= half
    dist = np.abs(t) / tau - 0.5
    tails = _tail(np.where(inside, 0.0, dist), mu)
    if v is Variant.LORENTZ_PLATEAU:
        return np.where(inside, 1.0, tails)
    if v is Variant.VARIANT_C:
        return np.where(inside, 0.0, tails)
    left = t < -half
    if v is Variant.VARIANT_A:
        return np.where(inside, 1.0, np.where(left, tails, 0.0))
    if v is Variant.VARIANT_B:
        return np.where(left, tails, 0.0)
    raise UnsupportedVariant(str(v))  # pragma: no cover


def switch_value(spec: SwitchingSpec, t: float) -> float:
    """Scalar fast path of :func:`eval_switch` for tight quadrature loops."""
    v = spec.variant
    sc = spec.scales
    if v is Variant.LORENTZIAN:
        tl = sc.tau_lorentz
        return (tl * tl / math.pi) / (t * t + tl * tl)
    tau = sc.tau1
    if v is Variant.VARIANT_A_PRIME or v is Variant.VARIANT_B_PRIME:
        t = -t
    a = abs(t)
    if a <= 0.5 * tau:
        if v is Variant.STEP or v is Variant.LORENTZ_PLATEAU:
            return 1.0
        if v is Variant.VARIANT_A or v is Variant.VARIANT_A_PRIME:
            return 1.0
        return 0.0
    if v is Variant.STEP:
        return 0.0
    if t > 0 and v in (
        Variant.VARIANT_A,
        Variant.VARIANT_A_PRIME,
        Variant.VARIANT_B,
        Variant.VARIANT_B_PRIME,
    ):
        return 0.0
    mu = sc.mu
    s = a / tau - 0.5
    return mu * mu / (s * s + mu * mu)


def tail_area(spec: SwitchingSpec) -> float:
    """Total weight carried by the Lorentzian tails.

    Two tails give ``pi * mu * tau``; single-tail variants give half of it.
    For the pure Lorentzian the whole weight counts as tail.
    """
    v = spec.variant
    sc = spec.scales
    if v is Variant.STEP:
        raise UnsupportedVariant("the step weight has no tails")
    if v is Variant.LORENTZIAN:
        return sc.tau_lorentz
    full = math.pi * sc.mu * sc.tau1
    if v in (Variant.LORENTZ_PLATEAU, Variant.VARIANT_C):
        return full
    return 0.5 * full


def plateau_area(spec: SwitchingSpec) -> float:
    """Weight carried by the flat part (``tau`` for the Lorentzian)."""
    v = spec.variant
    sc = spec.scales
    if v is Variant.LORENTZIAN:
        return sc.tau_lorentz
    if v.has_plateau:
        return sc.tau1
    return 0.0
