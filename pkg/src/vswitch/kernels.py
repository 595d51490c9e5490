"""Renormalized field correlation kernels near a perfect mirror.

The kernels are even functions of the time separation ``T`` with poles
at ``|T| = 2z``, the round-trip light time to the mirror.  Besides the
values themselves, each kernel exposes its Laurent coefficients at the
poles, which the finite-part quadrature needs.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .core import ProbeConfig
from .errors import OnLightConeSingularity

__all__ = [
    "KernelComponent",
    "Kernel",
    "SmoothKernel",
    "kernel_eval",
    "weighted_kernel",
    "dimensionless_x",
    "dimensionless_chi",
]

_INV_PI2 = 1.0 / math.pi**2


class KernelComponent(enum.Enum):
    ZZ = "zz"
    XX = "xx"


@dataclass(frozen=True)
class Kernel:
    """Electric-field correlation kernel for one Cartesian component.

    Calling the kernel returns the weighted kernel ``(e/m)^2 * K(T)``,
    i.e. the integrand factor whose double integral against the
    switching weights is the velocity dispersion.
    """

    component: KernelComponent
    probe: ProbeConfig

    @property
    def z(self) -> float:
        return self.probe.distance_z

    @property
    def scale(self) -> float:
        return self.probe.e2_over_m2

    @property
    def poles(self) -> tuple[float, ...]:
        """Positive pole locations in T (the kernel is even)."""
        return (2.0 * self.z,)

    @property
    def pole_order(self) -> int:
        return 2 if self.component is KernelComponent.ZZ else 3

    def raw(self, T):
        """Unweighted kernel, vectorized.  Raises on an exact pole hit."""
        T = np.asarray(T, dtype=float)
        a2 = 4.0 * self.z * self.z
        d = T * T - a2
        if np.any(d == 0.0):
            raise OnLightConeSingularity(f"kernel evaluated on the light cone |T| = {2 * self.z}")
        if self.component is KernelComponent.ZZ:
            return _INV_PI2 / (d * d)
        return -_INV_PI2 * (T * T + a2) / (d * d * d)

    def __call__(self, T):
        out = self.scale * self.raw(T)
        return float(out) if np.ndim(out) == 0 else out

    def value(self, T: float) -> float:
        """Scalar weighted kernel without numpy overhead."""
        a2 = 4.0 * self.z * self.z
        d = T * T - a2
        if d == 0.0:
            raise OnLightConeSingularity(f"kernel evaluated on the light cone |T| = {2 * self.z}")
        if self.component is KernelComponent.ZZ:
            return self.scale * _INV_PI2 / (d * d)
        return -self.scale * _INV_PI2 * (T * T + a2) / (d * d * d)

    def laurent(self, T0: float) -> dict[int, float]:
        """Singular Laurent coefficients of the weighted kernel at a pole.

        Returns ``{-3: c3, -2: c2, -1: c1}`` with
        ``K(T0 + u) = c3/u^3 + c2/u^2 + c1/u + O(1)``.
        """
        if abs(T0) != 2.0 * self.z:
            raise ValueError(f"{T0} is not a pole of this kernel")
        a = T0  # signed pole location, a^2 = 4 z^2
        c = self.scale * _INV_PI2
        if self.component is KernelComponent.ZZ:
            # 1/(u^2 (2a + u)^2)
            return {-3: 0.0, -2: c / (4 * a * a), -1: -c / (4 * a**3)}
        # -(T^2 + a^2)/(u^3 (2a + u)^3) with T = a + u
        return {-3: -c / (4 * a), -2: c / (8 * a * a), -1: -c / (8 * a**3)}


@dataclass(frozen=True)
class SmoothKernel:
    """Pole-free even comparison kernel ``amplitude / (T^2 + width^2)^2``.

    Used to exercise the region decomposition and the oracle where no
    regularization is involved.
    """

    width: float
    amplitude: float = 1.0

    @property
    def poles(self) -> tuple[float, ...]:
        return ()

    pole_order = 0

    def __call__(self, T):
        T = np.asarray(T, dtype=float)
        w2 = self.width * self.width
        out = self.amplitude / (T * T + w2) ** 2
        return float(out) if np.ndim(out) == 0 else out

    def value(self, T: float) -> float:
        d = T * T + self.width * self.width
        return self.amplitude / (d * d)

    def laurent(self, T0: float) -> dict[int, float]:  # pragma: no cover - no poles
        raise ValueError("smooth kernel has no poles")


def kernel_eval(k: Kernel, T):
    """Unweighted kernel value(s) in field-squared units."""
    out = k.raw(T)
    return float(out) if np.ndim(out) == 0 else out


def weighted_kernel(k: Kernel, probe: ProbeConfig | None = None) -> Kernel:
    """Kernel carrying the ``e^2/m^2`` factor for ``probe``.

    :class:`Kernel` instances are already weighted by their own probe;
    passing a different probe rebinds the charge and mass while keeping
    the mirror distance.
    """
    if probe is None or probe == k.probe:
        return k
    return Kernel(k.component, ProbeConfig(probe.charge_e, probe.mass_m, k.probe.distance_z))


def dimensionless_x(component: KernelComponent, x, sigma1: float):
    """Kernel shape in ``x = T/tau`` with ``sigma1 = 2z/tau``.

    The weighted kernel equals ``e^2/(pi^2 m^2 tau^4)`` times this shape
    (without the ``1/pi^2``, which is part of the prefactor).
    """
    x = np.asarray(x, dtype=float)
    d = x * x - sigma1 * sigma1
    if component is KernelComponent.ZZ:
        return 1.0 / (d * d)
    return -(x * x + sigma1 * sigma1) / (d * d * d)


def dimensionless_chi(component: KernelComponent, chi, sigma2: float):
    """Kernel shape in ``chi = x/mu`` with ``sigma2 = sigma1/mu``.

    Identical to :func:`dimensionless_x` with the arguments rescaled; the
    prefactor becomes ``e^2/(pi^2 m^2 mu^4 tau^4)``.
    """
    return dimensionless_x(component, chi, sigma2)
