"""Singular-integral calculus: excised integrals and their Laurent data.

An integral whose integrand has a non-integrable pole is given meaning by
cutting a symmetric window of half-width rho out around the pole.  For a
double pole the result behaves as ``A/rho + B + O(rho)``.  This module
provides

* :func:`apv_integrate`, the excised integral at a finite rho;
* closed forms for the semicircle contour integrals and for the
  canonical plateau integral, returned as :class:`RegularizedValue`;
* :func:`finite_part`, the engine that extracts ``(A, B)`` directly,
  without any fit, by folding the integrand about each pole and
  subtracting the known ``1/u^2`` singularity;
* :func:`evaluate`, which turns ``(A, B)`` into a number under a
  regularization mode;
* :func:`fit_two_term`, a small least-squares helper for when only raw
  excised values are available.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .core import Mode, ProbeConfig, RegularizedValue
from .errors import (
    ExcisionTooWide,
    IllConditionedFit,
    MissingCutoffData,
    NonPositiveSigma,
    PoleOutsideInterval,
    SigmaOutOfRange,
)
from .quadrature import ATOL, RTOL, gk_quad

__all__ = [
    "PoleSpec",
    "SingularPoint",
    "apv_integrate",
    "semicircle_I2",
    "semicircle_I3",
    "semicircle_I2_exact",
    "semicircle_contour",
    "pv_canonical",
    "evaluate",
    "fit_two_term",
    "finite_part",
]


@dataclass(frozen=True)
class PoleSpec:
    """Pole location, order and excision half-width (all dimensionless)."""

    location: float
    order: int
    rho: float

    def __post_init__(self) -> None:
        if self.order not in (1, 2, 3):
            raise ValueError(f"unsupported pole order {self.order}")
        if not self.rho > 0.0:
            raise ExcisionTooWide(f"excision must be positive, got {self.rho!r}")


def apv_integrate(
    f: Callable[[np.ndarray], np.ndarray],
    a: float,
    b: float,
    pole: PoleSpec,
    *,
    rtol: float = RTOL,
    atol: float = ATOL,
) -> float:
    """Excised integral ``int_a^{s-rho} f + int_{s+rho}^b f``."""
    s, rho = pole.location, pole.rho
    if not (a < s < b):
        raise PoleOutsideInterval(f"pole {s} not inside ({a}, {b})")
    if rho >= min(s - a, b - s):
        raise ExcisionTooWide(f"rho={rho} reaches an endpoint of ({a}, {b})")
    left = gk_quad(f, a, s - rho, rtol=rtol, atol=atol)
    right = gk_quad(f, s + rho, b, rtol=rtol, atol=atol)
    return left.value + right.value


# -- semicircle formulas --------------------------------------------------

def _check_sigma(sigma: float) -> None:
    if not sigma > 0.0:
        raise NonPositiveSigma(f"sigma must be positive, got {sigma!r}")


def semicircle_I2(sigma: float, xi: float, rho: float | None = None) -> RegularizedValue:
    """Real part of the half-circle integral of ``(1 - xi z)/(z^2 - sigma^2)^2``.

    Only the pole coefficient ``(1 - xi sigma)/(2 sigma^2)`` is exact;
    the remainder is O(rho) and is stored as a zero finite part.
    """
    _check_sigma(sigma)
    return RegularizedValue((1.0 - xi * sigma) / (2.0 * sigma * sigma), 0.0, rho)


def semicircle_I3(sigma: float, xi: float, rho: float | None = None) -> RegularizedValue:
    """Cubic-pole analogue of :func:`semicircle_I2`: pole ``-(3 - xi sigma)/(8 sigma^4)``."""
    _check_sigma(sigma)
    return RegularizedValue(-(3.0 - xi * sigma) / (8.0 * sigma**4), 0.0, rho)


def semicircle_I2_exact(sigma: float, xi: float, rho: float) -> float:
    """Exact value of the quadratic half-circle integral at finite ``rho``.

    Obtained by writing the integrand in powers of
    ``D = 4 sigma^2 + rho^2 + 4 sigma rho cos(theta)`` and integrating
    term by term.
    """
    _check_sigma(sigma)
    if not 0.0 < rho < 2.0 * sigma:
        raise ExcisionTooWide("need 0 < rho < 2 sigma")
    beta = 1.0 - xi * sigma
    p = beta / (4.0 * sigma**2)
    q = rho**2 / (2.0 * sigma**2)
    r = beta * (rho**4 / (4.0 * sigma**2) - rho**2) + xi * (rho**4 / (2.0 * sigma) - 2.0 * sigma * rho**2)
    eps = rho / (2.0 * sigma)
    log_term = 2.0 * (math.log1p(eps) - math.log1p(-eps))
    total = 2.0 * p - q / (4.0 * sigma * rho) * log_term + r / (8.0 * sigma**4) / (1.0 - eps * eps) ** 2
    return total / rho


def semicircle_contour(
    order: int, sigma: float, xi: float, rho: float, *, conjugate: bool = False
) -> float:
    """Numerical half-circle integral for a pole of ``order`` 2 or 3.

    The path is ``z = sigma + rho exp(+-i theta)``, ``theta`` from 0 to pi.
    """
    _check_sigma(sigma)
    sgn = -1.0 if conjugate else 1.0

    def integrand(theta):
        w = rho * np.exp(sgn * 1j * theta)
        zz = sigma + w
        dz = sgn * 1j * w
        return np.real((1.0 - xi * zz) / (zz * zz - sigma * sigma) ** order * dz)

    # The integrand is O(rho^(1 - order)) while the leading part of the
    # result may integrate to zero, so the absolute tolerance follows the
    # integrand scale.
    atol = 1e-13 * rho ** (1 - order) / sigma**order
    return gk_quad(integrand, 0.0, math.pi, rtol=1e-12, atol=atol).value


def pv_canonical(sigma: float, rho: float | None = None) -> RegularizedValue:
    """Excised ``int_0^1 (1 - x)/(x^2 - sigma^2)^2 dx`` for ``0 < sigma < 1``.

    Finite part ``(1/(8 sigma^3)) * 2 ln((1 + sigma)/(1 - sigma))`` and pole
    coefficient ``(1 - sigma)/(2 sigma^2)``.
    """
    if not 0.0 < sigma < 1.0:
        raise SigmaOutOfRange(f"sigma must lie in (0, 1), got {sigma!r}")
    finite = 2.0 * math.atanh(sigma) * 2.0 / (8.0 * sigma**3)
    pole = (1.0 - sigma) / (2.0 * sigma**2)
    return RegularizedValue(pole, finite, rho)


# -- regularization modes -----------------------------------------------------

def evaluate(
    v: RegularizedValue,
    mode: Mode | str,
    probe: ProbeConfig | float | None = None,
    tau: float | None = None,
) -> float:
    """Apply a regularization mode to ``A/rho + B``.

    ``DropDivergence`` returns ``B``.  ``ComptonCutoff`` sets
    ``rho = 1/(m tau)`` and returns ``A m tau + B``; ``probe`` may be a
    :class:`ProbeConfig` or the mass itself.
    """
    mode = Mode.parse(mode)
    if mode is Mode.DROP_DIVERGENCE:
        return v.finite_part
    if probe is None or tau is None:
        raise MissingCutoffData("the Compton cutoff needs the probe mass and a time scale")
    mass = probe.mass_m if isinstance(probe, ProbeConfig) else float(probe)
    if v.pole_coeff == 0.0:
        return v.finite_part
    return v.pole_coeff * mass * tau + v.finite_part


def fit_two_term(
    rhos: Sequence[float], values: Sequence[float], *, linear_term: bool | None = None
) -> tuple[RegularizedValue, float]:
    """Least-squares fit of ``v(rho) = A/rho + B [+ C rho]``.

    With three or more points a linear remainder term is included by
    default, which lowers the error of ``B`` from O(rho) to O(rho^3) for
    symmetric excisions.  Returns the fitted value and the RMS residual.
    Raises :class:`IllConditionedFit` when neighbouring rho values are
    closer than a factor of 2.
    """
    r = np.asarray(rhos, dtype=float)
    y = np.asarray(values, dtype=float)
    if r.size < 2 or r.size != y.size:
        raise IllConditionedFit("need at least two (rho, value) pairs")
    order = np.argsort(r)
    r, y = r[order], y[order]
    if np.any(r <= 0):
        raise IllConditionedFit("rho values must be positive")
    if np.any(r[1:] / r[:-1] < 2.0 * (1.0 - 1e-9)):
        raise IllConditionedFit("rho values must differ by at least a factor 2")
    use_linear = (r.size >= 3) if linear_term is None else linear_term
    cols = [1.0 / r, np.ones_like(r)]
    if use_linear:
        cols.append(r)
    X = np.column_stack(cols)
    # Scale columns so that lstsq sees a well-balanced system.
    norms = np.linalg.norm(X, axis=0)
    coef, *_ = np.linalg.lstsq(X / norms, y, rcond=None)
    coef = coef / norms
    resid = y - X @ coef
    rms = float(np.sqrt(np.mean(resid**2)))
    return RegularizedValue(float(coef[0]), float(coef[1]), float(r[0])), rms


# -- finite-part engine ------------------------------------------------------

@dataclass(frozen=True)
class SingularPoint:
    """Double-type singularity of an integrand: ``g(p + u) ~ c2/u^2``.

    Odd singular terms (``1/u``, ``1/u^3``) cancel in a symmetric
    excision and need not be supplied.
    """

    location: float
    c2: float
    order: int = 2


def finite_part(
    g: Callable[[np.ndarray], np.ndarray],
    a: float,
    b: float,
    singular: Sequence[SingularPoint],
    *,
    points: Sequence[float] = (),
    scale: float | None = None,
    rtol: float = RTOL,
    atol: float = ATOL,
) -> tuple[float, float]:
    """Laurent data ``(A, B)`` of the excised integral of ``g`` over ``[a, b]``.

    For excision half-width ``eps`` around every listed point,
    ``int = A/eps + B + O(eps)`` with ``A = 2 * sum(c2)``.  Near each point
    the integrand is folded, ``g(p + u) + g(p - u) - 2 c2/u^2``, which is
    smooth, and the subtracted term is integrated analytically.

    ``points`` are kinks or scale changes of ``g``; fold windows never
    straddle them.
    """
    sing = sorted(singular, key=lambda s: s.location)
    for s in sing:
        if not (a < s.location < b):
            raise PoleOutsideInterval(f"singular point {s.location} not inside ({a}, {b})")
    kinks = sorted({float(p) for p in points if a < p < b})
    fences = [a] + kinks + [s.location for s in sing] + ([b] if math.isfinite(b) else [])

    windows = []
    for s in sing:
        p = s.location
        others = [abs(f - p) for f in fences if f != p]
        delta = 0.5 * min(others) if others else 0.5 * abs(p)
        if not delta > 0.0:
            raise PoleOutsideInterval(f"singular point {p} coincides with a breakpoint")
        windows.append((s, delta))

    # The finite part is a sum of pieces that may cancel heavily, so every
    # piece is integrated to an absolute tolerance tied to the largest one.
    magnitude = max([abs(2.0 * s.c2 / d) for s, d in windows], default=0.0)

    pieces: list[float] = []
    lo = a
    for s, delta in windows:
        inner = [k for k in kinks if lo < k < s.location - delta]
        r = gk_quad(g, lo, s.location - delta, points=inner, rtol=rtol, atol=max(atol, rtol * magnitude))
        pieces.append(r.value)
        lo = s.location + delta
    inner = [k for k in kinks if k > lo]
    r = gk_quad(g, lo, b, points=inner, rtol=rtol, atol=max(atol, rtol * magnitude), scale=scale)
    pieces.append(r.value)

    magnitude = max([magnitude] + [abs(x) for x in pieces])
    pole_sum = 0.0
    for s, delta in windows:
        folded = _folded(g, s.location, s.c2, delta, s.order)
        floor = max(atol, rtol * magnitude, 4.0 * folded.noise * folded.core)
        r = gk_quad(folded, 0.0, delta, rtol=rtol, atol=floor)
        pieces.append(r.value - 2.0 * s.c2 / delta)
        pole_sum += 2.0 * s.c2
    return pole_sum, math.fsum(pieces)


_FOLD_CORE = {2: 1e-2, 3: 5e-2}


def _folded(g, p: float, c2: float, delta: float, order: int = 2):
    """Smooth folded integrand ``g(p+u) + g(p-u) - 2 c2/u^2`` on ``[0, delta]``.

    The subtraction loses digits as ``u -> 0`` (more so for cubic poles,
    whose odd ``1/u^3`` parts cancel only between the two halves).  Below
    ``u0`` the function is replaced by the even model
    ``alpha + beta u^2 + gamma u^4`` matched at ``u0``, ``2 u0`` and ``3 u0``.

    The returned callable carries ``core`` (that is, ``u0``) and ``noise``,
    the rounding scatter of the raw difference at ``u0``.  Asking the
    integrator for more than ``noise * u0`` only chases round-off.
    """

    def raw(u):
        return g(p + u) + g(p - u) - 2.0 * c2 / (u * u)

    u0 = _FOLD_CORE.get(order, 5e-2) * delta
    anchors = u0 * np.array([1.0, 2.0, 3.0])
    vals = raw(anchors)
    basis = np.column_stack([np.ones(3), anchors**2, anchors**4])
    alpha, beta, gamma = np.linalg.solve(basis, vals)

    def folded(u):
        out = np.empty_like(u)
        core = u < u0
        uc2 = u[core] ** 2
        out[core] = alpha + uc2 * (beta + gamma * uc2)
        out[~core] = raw(u[~core])
        return out

    jitter = raw(u0 * (1.0 + 1e-10 * np.arange(8)))
    folded.core = u0
    folded.noise = float(np.ptp(jitter))
    return folded
