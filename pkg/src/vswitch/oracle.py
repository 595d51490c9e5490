"""Brute-force reference values for the dispersion double integral.

The oracle integrates ``F(t') F(t'') K(t' - t'')`` directly in the
``(t', t'')`` plane with nested :func:`scipy.integrate.quad` calls.  It
shares no change of variables and no quadrature code with
:mod:`vswitch.regions`, which makes it usable as an independent check.

Near each kernel pole the strip ``|(t' - t'') -+ 2z| < rho * tau`` is
removed.  The raw value then behaves as ``A/rho + B + C rho + ...`` and
:func:`fit_regularized` recovers ``(A, B)`` from several ``rho``.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from scipy import integrate

from .core import (
    Component,
    DispersionBreakdown,
    Mode,
    ProbeConfig,
    RegularizedValue,
    SwitchingSpec,
    Variant,
    ZERO,
)
from .errors import BudgetExceeded, ExcisionCoversSupport, NonPositiveInput
from .kernels import Kernel, KernelComponent, SmoothKernel
from .singular import evaluate, fit_two_term
from .switching import switch_value

__all__ = [
    "Segment",
    "OracleFit",
    "support_segments",
    "brute_double_integral",
    "region_class",
    "fit_regularized",
    "oracle_breakdown",
    "DEFAULT_RHOS",
]

#: Weight below which the tails are truncated.
F_FLOOR = 1e-12
#: Excision half-widths (in units of the reference time) used by default.
DEFAULT_RHOS = (0.01, 0.005, 0.0025)


@dataclass(frozen=True)
class Segment:
    """A piece of the support on which the weight is smooth."""

    name: str
    lo: float
    hi: float
    points: tuple[float, ...] = ()


def _tail_points(edge: float, direction: float, length: float, finest: float) -> list[float]:
    pts = []
    d = finest
    while d < length:
        pts.append(edge + direction * d)
        d *= 10.0
    return pts


def support_segments(spec: SwitchingSpec, shift: float = 0.0) -> list[Segment]:
    """Truncated support of the weight, split at its kinks.

    Plateau-type weights give up to three pieces named ``"L"``, ``"P"``
    and ``"R"``; the Lorentzian gives a single piece ``"W"``.
    """
    sc = spec.scales
    z = sc.z
    if spec.variant is Variant.LORENTZIAN:
        tl = sc.tau_lorentz
        # (tl / pi) tl / t^2 < F_FLOOR
        reach = tl * math.sqrt(tl / (math.pi * F_FLOOR * tl)) if tl > 0 else 0.0
        fine = min(tl, 2.0 * z) / 8.0
        pts = [0.0] + _tail_points(0.0, 1.0, reach, fine) + _tail_points(0.0, -1.0, reach, fine)
        return [Segment("W", shift - reach, shift + reach, tuple(shift + p for p in sorted(pts)))]

    tau = sc.tau1
    half = 0.5 * tau
    out = []
    if switch_value(spec, -tau) > 0.0:
        out.append("L")
    if switch_value(spec, 0.0) > 0.0:
        out.append("P")
    if switch_value(spec, tau) > 0.0:
        out.append("R")
    mu = sc.mu
    segs = []
    for name in out:
        if name == "P":
            segs.append(Segment("P", shift - half, shift + half, (shift,)))
            continue
        length = mu * tau * math.sqrt(1.0 / F_FLOOR)
        fine = min(mu * tau, 2.0 * z, tau) / 8.0
        if name == "L":
            pts = _tail_points(-half, -1.0, length, fine)
            segs.append(Segment("L", shift - half - length, shift - half, tuple(shift + p for p in sorted(pts))))
        else:
            pts = _tail_points(half, 1.0, length, fine)
            segs.append(Segment("R", shift + half, shift + half + length, tuple(shift + p for p in pts)))
    return segs


_EVEN = (Variant.STEP, Variant.LORENTZIAN, Variant.LORENTZ_PLATEAU, Variant.VARIANT_C)


def _even_kernel(kernel) -> bool:
    # Other callables may opt in with an ``even = True`` attribute.
    return isinstance(kernel, (Kernel, SmoothKernel)) or bool(getattr(kernel, "even", False))


def _weight_fn(spec: SwitchingSpec, shift: float) -> Callable[[float], float]:
    """Scalar weight, specialized for the common cases to cut call overhead."""
    sc = spec.scales
    if spec.variant is Variant.LORENTZIAN:
        tl2 = sc.tau_lorentz**2
        c = tl2 / math.pi
        return lambda t: c / ((t - shift) ** 2 + tl2)
    if spec.variant is Variant.LORENTZ_PLATEAU:
        half, tau, mu2 = 0.5 * sc.tau1, sc.tau1, sc.mu**2

        def f(t):
            a = abs(t - shift)
            if a <= half:
                return 1.0
            s = a / tau - 0.5
            return mu2 / (s * s + mu2)

        return f
    return lambda t: switch_value(spec, t - shift)


def _kernel_parts(kernel) -> tuple[Callable[[float], float], tuple[float, ...]]:
    if isinstance(kernel, Kernel):
        a2 = 4.0 * kernel.z**2
        c = kernel.scale / math.pi**2
        if kernel.component is KernelComponent.ZZ:
            return (lambda T: c / (T * T - a2) ** 2), kernel.poles
        return (lambda T: -c * (T * T + a2) / (T * T - a2) ** 3), kernel.poles
    value = getattr(kernel, "value", None)
    fn = value if value is not None else (lambda T: float(kernel(T)))
    return fn, tuple(getattr(kernel, "poles", ()))


def _quad(f, a, b, points, epsrel, epsabs, limit) -> float:
    if not (a < b):
        return 0.0
    pts = sorted({p for p in points if a < p < b})
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        val, err, info, *rest = integrate.quad(
            f, a, b, points=pts or None, epsrel=epsrel, epsabs=epsabs, limit=limit, full_output=1
        )
    ier = rest[0] if len(rest) == 1 else (0 if len(rest) == 0 else rest[0])
    if ier == 1 and err > max(epsabs, epsrel * abs(val)) * 1e3:
        raise BudgetExceeded(
            f"quad exhausted {limit} subintervals on [{a:.6g}, {b:.6g}] (error {err:.3e}, value {val:.6e})"
        )
    return val


def _allowed(lo: float, hi: float, bands: Sequence[tuple[float, float]]) -> list[tuple[float, float]]:
    pieces = [(lo, hi)]
    for bl, bh in bands:
        nxt = []
        for a, b in pieces:
            if bh <= a or bl >= b:
                nxt.append((a, b))
                continue
            if a < bl:
                nxt.append((a, bl))
            if bh < b:
                nxt.append((bh, b))
        pieces = nxt
    return pieces


def brute_double_integral(
    spec: SwitchingSpec,
    kernel,
    rho: float,
    *,
    regions: Iterable[tuple[str, str]] | None = None,
    shift: float = 0.0,
    epsrel: float = 1e-10,
    limit: int = 400,
) -> float:
    """Raw double integral with the pole strips removed.

    ``rho`` is measured in units of ``spec.tau`` (the plateau duration, or
    the Lorentzian width).  ``regions`` restricts the integration to the
    listed ``(outer, inner)`` segment pairs, for example ``[("P", "L")]``
    for one plateau-tail region.  ``shift`` translates the weight in time.
    """
    fk, poles = _kernel_parts(kernel)
    tau_ref = spec.tau
    eps = rho * tau_ref
    if rho < 0 or not math.isfinite(rho):
        raise NonPositiveInput(f"rho must be a non-negative number, got {rho!r}")
    if poles and eps >= min(poles):
        raise ExcisionCoversSupport(f"strip half-width {eps} reaches T = 0")

    segs = support_segments(spec, shift)
    by_name = {s.name: s for s in segs}
    reach = max(s.hi for s in segs) - min(s.lo for s in segs)
    if poles and eps == 0.0 and any(p < reach for p in poles):
        raise NonPositiveInput("rho must be positive when kernel poles intersect the support")

    factor = 1.0
    outer_segs = dict(by_name)
    if regions is None:
        pairs = [(a, b) for a in by_name for b in by_name]
        if spec.variant in _EVEN and _even_kernel(kernel):
            # (t', t'') -> (2 shift - t', 2 shift - t'') maps the left half of
            # the outer range onto the right half; the integrand is unchanged
            # when both the weight and the kernel are even.
            factor = 2.0
            pairs = [(a, b) for a, b in pairs if a != "L"]
            for name in ("P", "W"):
                if name in outer_segs:
                    seg = outer_segs[name]
                    outer_segs[name] = Segment(name, shift, seg.hi, tuple(q for q in seg.points if q > shift))
    else:
        pairs = [(a, b) for a, b in regions if a in by_name and b in by_name]

    F = _weight_fn(spec, shift)
    pole_offsets = [s * p for p in poles for s in (1.0, -1.0)]
    epsabs = 0.0

    def inner(tp: float, seg: Segment) -> float:
        bands = [(tp - d - eps, tp - d + eps) for d in pole_offsets] if eps > 0 else []
        pts = list(seg.points) + [tp]
        for d in pole_offsets:
            c = tp - d
            for k in (4.0,):
                if eps > 0:
                    pts += [c - k * eps, c + k * eps]
            pts += [c - 0.5 * abs(d), c + 0.5 * abs(d)]
        h = lambda tpp: F(tpp) * fk(tp - tpp)  # noqa: E731
        total = 0.0
        for a, b in _allowed(seg.lo, seg.hi, bands):
            total += _quad(h, a, b, pts, epsrel, epsabs, limit)
        return total

    total = 0.0
    for outer_name, inner_name in pairs:
        so, si = outer_segs[outer_name], by_name[inner_name]
        opts = list(so.points)
        for edge in (si.lo, si.hi):
            opts.append(edge)
            for d in pole_offsets:
                opts += [edge + d, edge + d - eps, edge + d + eps]
        g = lambda tp, si=si: F(tp) * inner(tp, si)  # noqa: E731
        total += _quad(g, so.lo, so.hi, opts, epsrel, epsabs, limit)
    return factor * total


def region_class(name: str) -> list[tuple[str, str]]:
    """Segment pairs making up a region class (``M``, ``MS``, ``S1``, ``S2``)."""
    classes = {
        "M": [("P", "P")],
        "MS": [("P", "L"), ("L", "P"), ("P", "R"), ("R", "P")],
        "S1": [("L", "L"), ("R", "R")],
        "S2": [("L", "R"), ("R", "L")],
    }
    try:
        return classes[name]
    except KeyError:
        raise NonPositiveInput(f"unknown region class {name!r}") from None


@dataclass(frozen=True)
class OracleFit:
    value: RegularizedValue
    residual: float
    rhos: tuple[float, ...]
    raw: tuple[float, ...]


def fit_regularized(
    spec: SwitchingSpec,
    kernel,
    rhos: Sequence[float] = DEFAULT_RHOS,
    *,
    regions: Iterable[tuple[str, str]] | None = None,
    epsrel: float = 1e-10,
    linear_term: bool | None = None,
) -> OracleFit:
    """Fit ``A/rho + B (+ C rho)`` to brute values at several ``rho``."""
    regions = list(regions) if regions is not None else None
    raw = [brute_double_integral(spec, kernel, r, regions=regions, epsrel=epsrel) for r in rhos]
    value, rms = fit_two_term(rhos, raw, linear_term=linear_term)
    return OracleFit(value, rms, tuple(float(r) for r in rhos), tuple(raw))


def oracle_breakdown(
    probe: ProbeConfig,
    spec: SwitchingSpec,
    mode: Mode | str = Mode.DROP_DIVERGENCE,
    component: Component = Component.X,
    rhos: Sequence[float] = DEFAULT_RHOS,
) -> DispersionBreakdown:
    """Dispersion from the brute integral, split by region class.

    Serves the parallel components of tailed weights, which have no
    one-dimensional route.  The plateau-plateau class goes to ``m_term``,
    the plateau-tail class to ``ms_term`` and both tail classes to
    ``s_term``.
    """
    kc = KernelComponent.ZZ if component is Component.Z else KernelComponent.XX
    kern = Kernel(kc, probe)
    names = {s.name for s in support_segments(spec)}
    tau_ref = spec.tau

    def part(cls_names: Sequence[str]) -> RegularizedValue:
        pairs = [p for c in cls_names for p in region_class(c) if p[0] in names and p[1] in names]
        if not pairs:
            return ZERO
        return fit_regularized(spec, kern, rhos, regions=pairs).value

    if names == {"W"}:
        m, ms = ZERO, ZERO
        s = fit_regularized(spec, kern, rhos).value
    else:
        m, ms, s = part(["M"]), part(["MS"]), part(["S1", "S2"])
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
        estimates={},
    )
