"""Reduction of the dispersion double integral to one-dimensional integrals.

For a plateau of width ``tau`` flanked by Lorentzian tails of relative
width ``mu``, the ``(t', t'')`` plane splits into classes of regions
according to which part of the weight each time falls in:

* ``M``   plateau x plateau (one region),
* ``MS``  plateau x tail (four regions, equal by symmetry),
* ``S1``  tail x same tail (two regions),
* ``S2``  tail x opposite tail (two regions).

In each region the integral along the diagonal direction can be done in
closed form, leaving a single integral of the kernel against an
elementary weight.  The grouped form regroups the same total into a pure
tail term ``I_S`` and a cross term ``I_MS`` built from :func:`f_shape`.

Every integral is returned as a :class:`RegularizedValue` whose pole
coefficient refers to an excision of half-width ``rho * tau`` in the time
separation around each kernel pole.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .core import RegularizedValue
from .errors import LightConeCoincidence, NonPositiveInput, PoleOutsideInterval
from .singular import SingularPoint, finite_part

__all__ = [
    "RegionBreakdown",
    "f_shape",
    "integral_M",
    "integral_MS",
    "integral_S1",
    "integral_S2",
    "grouped_S",
    "grouped_MS",
    "combine",
    "lorentzian_limit",
]


# -- weight functions ---------------------------------------------------------

def f_shape(chi):
    """Cross-term weight ``(1 - 1/(chi^2+4)) atan(chi) - ln(1+chi^2)/(chi (chi^2+4))``.

    Increases from 0 at ``chi = 0`` towards ``pi/2``.
    """
    c = np.asarray(chi, dtype=float)
    out = np.empty_like(c)
    small = c < 1e-4
    out[small] = 0.5 * c[small] - c[small] ** 5 / 60.0
    mid = (~small) & (c <= 1.0)
    cm = c[mid]
    out[mid] = (1.0 - 1.0 / (cm * cm + 4.0)) * np.arctan(cm) - np.log1p(cm * cm) / (cm * (cm * cm + 4.0))
    big = c > 1.0
    cb = c[big]
    inv = 1.0 / cb
    # ln(1 + c^2) = 2 ln c + ln(1 + 1/c^2); divide step by step to avoid overflow.
    inv2 = inv * inv
    frac = inv2 / (1.0 + 4.0 * inv2)
    log_term = (2.0 * np.log(cb) + np.log1p(inv2)) * inv * frac
    out[big] = (1.0 - frac) * (0.5 * np.pi - np.arctan(inv)) - log_term
    return float(out) if np.ndim(chi) == 0 else out


def _xlogratio(x, mu):
    # (mu/x) ln(1 + x^2/mu^2), continuous at 0.
    x = np.asarray(x, dtype=float)
    r = x / mu
    out = np.empty_like(r)
    small = r < 1e-8
    out[small] = r[small]
    rs = r[~small]
    out[~small] = np.log1p(rs * rs) / rs
    return out


# -- generic kernel-weight integral ---------------------------------------------

@dataclass(frozen=True)
class _Term:
    """``sign * weight(v) * K(s v + shift)`` with ``s`` shared by all terms."""

    weight: Callable[[np.ndarray], np.ndarray]
    shift: float = 0.0
    sign: float = 1.0


def _derivative(w, v: float, h: float) -> float:
    pts = np.array([v - 2 * h, v - h, v + h, v + 2 * h])
    f = w(pts)
    return float((f[0] - 8 * f[1] + 8 * f[2] - f[3]) / (12 * h))


def _regularized(
    kernel,
    terms: Sequence[_Term],
    a: float,
    b: float,
    s: float,
    tau_ref: float,
    *,
    kinks: Sequence[float] = (),
    hints: Sequence[float] = (),
    scale: float | None = None,
) -> RegularizedValue:
    """Laurent data of ``sum_j sign_j int_a^b W_j(v) K(s v + shift_j) dv``."""

    def g(v):
        total = np.zeros_like(v)
        for t in terms:
            total += t.sign * t.weight(v) * kernel(s * v + t.shift)
        return total

    sing: dict[float, float] = {}
    for t in terms:
        for T0 in kernel.poles:
            for Tp in (T0, -T0):
                vp = (Tp - t.shift) / s
                if vp == a or vp == b or vp in kinks:
                    raise LightConeCoincidence(
                        f"kernel pole at T={Tp} falls on an edge of the weight (v={vp})"
                    )
                if not (a < vp < b):
                    continue
                lc = kernel.laurent(Tp)
                w0 = float(t.weight(np.array([vp]))[0])
                c2 = w0 * lc[-2] / s**2
                if lc.get(-3, 0.0) != 0.0:
                    fences = [abs(vp - q) for q in (a, b, *kinks) if math.isfinite(q)]
                    h = 1e-3 * min([abs(vp)] + fences) if fences else 1e-3 * max(abs(vp), 1.0)
                    c2 += _derivative(t.weight, vp, h) * lc[-3] / s**3
                sing[vp] = sing.get(vp, 0.0) + t.sign * c2

    # Hints only guide the subdivision; one that lands on (or within
    # rounding of) a pole would collapse the fold window, so drop it.
    near_pole = lambda p: any(abs(p - q) <= 1e-2 * abs(q) for q in sing)  # noqa: E731
    points = [p for p in kinks if a < p < b and p not in sing]
    points += [p for p in hints if a < p < b and not near_pole(p)]
    points += _ladder(sorted(set(points) | set(sing) | {a}), b, list(sing))
    try:
        A, B = finite_part(
            g,
            a,
            b,
            [SingularPoint(loc, c2, kernel.pole_order) for loc, c2 in sorted(sing.items())],
            points=points,
            scale=scale,
        )
    except PoleOutsideInterval as exc:  # pragma: no cover - guarded above
        raise LightConeCoincidence(str(exc)) from exc
    # Excision eps in v is rho * tau_ref / s in units of tau_ref.
    return RegularizedValue(A * s / tau_ref, B)


def _ladder(anchors: Sequence[float], b: float, poles: Sequence[float], ratio: float = 4.0) -> list[float]:
    """Geometric breakpoints filling wide gaps between positive anchors.

    Power-law integrands concentrated at the left end of a long panel can
    slip past the initial rule unnoticed; a ladder with spacing ``ratio``
    keeps every panel within one decade-ish of its own scale.  Points
    closer than 25% to a pole are skipped so fold windows stay wide.
    """
    out = []
    ends = [x for x in anchors if x > 0.0] + ([b] if math.isfinite(b) else [])
    for lo, hi in zip(ends, ends[1:]):
        x = lo * ratio
        while x < hi / (0.5 * ratio):
            if not any(abs(x - q) <= 0.25 * abs(q) for q in poles):
                out.append(x)
            x *= ratio
    return out


def _check(tau: float, mu: float | None = None) -> None:
    if not (math.isfinite(tau) and tau > 0.0):
        raise NonPositiveInput(f"tau must be positive, got {tau!r}")
    if mu is not None and not (math.isfinite(mu) and mu > 0.0):
        raise NonPositiveInput(f"mu must be positive, got {mu!r}")


def _geometric_hints(*scales: float) -> list[float]:
    out = []
    for sc in scales:
        if sc > 0 and math.isfinite(sc):
            out.extend([sc, 3.0 * sc, 10.0 * sc])
    return out


# -- single-region integrals ------------------------------------------------------

def integral_M(kernel, tau: float) -> RegularizedValue:
    """Plateau-plateau region: ``2 tau^2 int_0^1 (1 - x) K(tau x) dx``."""
    _check(tau)
    w = lambda x: 2.0 * tau * tau * (1.0 - x)  # noqa: E731
    hints = [p / tau for p in kernel.poles]
    return _regularized(kernel, [_Term(w)], 0.0, 1.0, tau, tau, hints=_geometric_hints(*hints))


def integral_MS(kernel, tau: float, mu: float) -> RegularizedValue:
    """One plateau-tail region.

    ``tau^2 mu int_0^inf [K(tau x) - K(tau (x + 1))] atan(x/mu) dx``.
    The four plateau-tail regions are equal, so the class total is four
    times this value.
    """
    _check(tau, mu)
    w = lambda x: tau * tau * mu * np.arctan(x / mu)  # noqa: E731
    terms = [_Term(w, 0.0, 1.0), _Term(w, tau, -1.0)]
    hints = _geometric_hints(mu, 1.0, *[p / tau for p in kernel.poles])
    return _regularized(kernel, terms, 0.0, math.inf, tau, tau, hints=hints, scale=max(1.0, mu))


def integral_S1(kernel, tau: float, mu: float) -> RegularizedValue:
    """One tail with itself.

    ``2 tau^2 mu^3 int_0^inf K(tau x) {pi - atan(x/mu) - (mu/x) ln(1 + x^2/mu^2)}/(x^2 + 4 mu^2) dx``.
    """
    _check(tau, mu)

    def w(x):
        br = math.pi - np.arctan(x / mu) - _xlogratio(x, mu)
        return 2.0 * tau * tau * mu**3 * br / (x * x + 4.0 * mu * mu)

    hints = _geometric_hints(mu, *[p / tau for p in kernel.poles])
    return _regularized(kernel, [_Term(w)], 0.0, math.inf, tau, tau, hints=hints, scale=mu)


def integral_S2(kernel, tau: float, mu: float) -> RegularizedValue:
    """One tail with the opposite tail, separated by the plateau.

    ``2 tau^2 mu^3 int_0^inf K(tau (x + 1)) {atan(x/mu) + (mu/x) ln(1 + x^2/mu^2)}/(x^2 + 4 mu^2) dx``.
    """
    _check(tau, mu)

    def w(x):
        br = np.arctan(x / mu) + _xlogratio(x, mu)
        return 2.0 * tau * tau * mu**3 * br / (x * x + 4.0 * mu * mu)

    hints = _geometric_hints(mu, *[p / tau - 1.0 for p in kernel.poles])
    return _regularized(kernel, [_Term(w, tau)], 0.0, math.inf, tau, tau, hints=hints, scale=max(mu, 1.0))


# -- grouped form ---------------------------------------------------------------

def grouped_S(kernel, tau: float, mu: float) -> RegularizedValue:
    """Pure tail term ``4 pi mu^2 tau^2 int_0^inf K(mu tau chi)/(chi^2 + 4) dchi``."""
    _check(tau, mu)
    s = mu * tau
    w = lambda c: 4.0 * math.pi * mu * mu * tau * tau / (c * c + 4.0)  # noqa: E731
    hints = _geometric_hints(1.0, *[p / s for p in kernel.poles])
    return _regularized(kernel, [_Term(w)], 0.0, math.inf, s, tau, hints=hints, scale=1.0)


def grouped_MS(kernel, tau: float, mu: float) -> RegularizedValue:
    """Cross term ``4 mu^2 tau^2 int_0^inf {K(mu tau chi) - K(mu tau chi + tau)} F(chi) dchi``."""
    _check(tau, mu)
    s = mu * tau
    w = lambda c: 4.0 * mu * mu * tau * tau * f_shape(c)  # noqa: E731
    terms = [_Term(w, 0.0, 1.0), _Term(w, tau, -1.0)]
    hints = _geometric_hints(1.0, 1.0 / mu, *[p / s for p in kernel.poles])
    return _regularized(kernel, terms, 0.0, math.inf, s, tau, hints=hints, scale=max(1.0, 1.0 / mu))


@dataclass(frozen=True)
class RegionBreakdown:
    """Single-region integrals and the grouped total.

    ``i_ms``, ``i_s1`` and ``i_s2`` are single regions; the class totals
    are ``4 i_ms``, ``2 i_s1`` and ``2 i_s2``.  ``m``, ``s`` and ``ms`` are
    the grouped plateau, tail and cross terms, and ``combined`` is their
    sum.
    """

    i_m: RegularizedValue
    i_ms: RegularizedValue
    i_s1: RegularizedValue
    i_s2: RegularizedValue
    m: RegularizedValue
    s: RegularizedValue
    ms: RegularizedValue

    @property
    def combined(self) -> RegularizedValue:
        return self.m + self.s + self.ms

    @property
    def by_regions(self) -> RegularizedValue:
        """Total assembled from region classes with multiplicities 1/4/2/2."""
        return self.i_m + self.i_ms * 4.0 + self.i_s1 * 2.0 + self.i_s2 * 2.0


def combine(kernel, tau: float, mu: float) -> RegionBreakdown:
    """Evaluate every region integral and the grouped total for one weight."""
    i_m = integral_M(kernel, tau)
    return RegionBreakdown(
        i_m=i_m,
        i_ms=integral_MS(kernel, tau, mu),
        i_s1=integral_S1(kernel, tau, mu),
        i_s2=integral_S2(kernel, tau, mu),
        m=i_m,
        s=grouped_S(kernel, tau, mu),
        ms=grouped_MS(kernel, tau, mu),
    )


def lorentzian_limit(kernel, tau2: float, tau_ref: float | None = None) -> RegularizedValue:
    """Limit of the grouped total as the plateau shrinks at fixed tail weight.

    ``(2 tau2^2/pi^2) int_{-inf}^{inf} K(tau2 xi)/(xi^2 + 4/pi^2) dxi``.
    ``tau_ref`` sets the unit of rho (default ``tau2/pi``).
    """
    _check(tau2)
    if tau_ref is None:
        tau_ref = tau2 / math.pi
    w = lambda xi: 4.0 * tau2 * tau2 / math.pi**2 / (xi * xi + 4.0 / math.pi**2)  # noqa: E731
    hints = _geometric_hints(2.0 / math.pi, *[p / tau2 for p in kernel.poles])
    return _regularized(kernel, [_Term(w)], 0.0, math.inf, tau2, tau_ref, hints=hints, scale=1.0)
