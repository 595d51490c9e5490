import math

import numpy as np
import pytest

from vswitch.core import ProbeConfig
from vswitch.errors import OnLightConeSingularity
from vswitch.kernels import (
    Kernel,
    KernelComponent,
    SmoothKernel,
    dimensionless_chi,
    dimensionless_x,
    kernel_eval,
    weighted_kernel,
)

PROBE = ProbeConfig(2.0, 0.5, 1.5)


@pytest.fixture(params=list(KernelComponent))
def kernel(request):
    return Kernel(request.param, PROBE)


def test_zz_closed_form():
    k = Kernel(KernelComponent.ZZ, ProbeConfig(1.0, 1.0, 1.0))
    assert k(1.0) == pytest.approx(1.0 / (9.0 * math.pi**2))


def test_xx_closed_form():
    k = Kernel(KernelComponent.XX, ProbeConfig(1.0, 1.0, 1.0))
    # -(1 + 4)/(1 - 4)^3 / pi^2
    assert k(1.0) == pytest.approx(5.0 / (27.0 * math.pi**2))


def test_weighting(kernel):
    assert kernel(0.7) == pytest.approx(16.0 * kernel_eval(kernel, 0.7))


def test_even_and_vectorized(kernel):
    T = np.array([0.1, 1.0, 2.5, 7.0])
    assert np.allclose(kernel(T), kernel(-T))
    assert np.allclose(kernel(T), [kernel.value(t) for t in T])


def test_light_cone_raises(kernel):
    with pytest.raises(OnLightConeSingularity):
        kernel(3.0)
    with pytest.raises(OnLightConeSingularity):
        kernel.value(-3.0)


@pytest.mark.parametrize("T0", [3.0, -3.0])
def test_laurent_leaves_bounded_remainder(kernel, T0):
    c = kernel.laurent(T0)

    def remainder(u):
        return kernel(T0 + u) - (c[-3] / u**3 + c[-2] / u**2 + c[-1] / u)

    # Powers of two keep T0 + u exact, so only the O(u) remainder differs.
    r1, r2 = remainder(2.0**-8), remainder(-(2.0**-11))
    assert r2 == pytest.approx(r1, rel=1e-2, abs=1e-6)


def test_laurent_order(kernel):
    c = kernel.laurent(3.0)
    if kernel.component is KernelComponent.ZZ:
        assert c[-3] == 0.0 and c[-2] > 0
    else:
        assert c[-3] != 0.0
    with pytest.raises(ValueError):
        kernel.laurent(1.0)


def test_dimensionless_shapes():
    tau, z = 4.0, 1.5
    s1 = 2 * z / tau
    x = np.array([0.1, 0.5, 2.0])
    k = Kernel(KernelComponent.ZZ, ProbeConfig(1.0, 1.0, z))
    assert np.allclose(k(tau * x), dimensionless_x(KernelComponent.ZZ, x, s1) / (math.pi**2 * tau**4))
    mu = 0.3
    assert np.allclose(
        dimensionless_chi(KernelComponent.XX, x / mu, s1 / mu) / mu**4,
        dimensionless_x(KernelComponent.XX, x, s1),
    )


def test_rebinding_probe():
    k = Kernel(KernelComponent.ZZ, PROBE)
    other = weighted_kernel(k, ProbeConfig(1.0, 1.0, 99.0))
    assert other.z == PROBE.distance_z
    assert other(0.3) == pytest.approx(k(0.3) / 16.0)
    assert weighted_kernel(k) is k


def test_smooth_kernel():
    sk = SmoothKernel(2.0, 3.0)
    assert sk.poles == ()
    assert sk(0.0) == pytest.approx(3.0 / 16.0)
    assert sk.value(1.0) == pytest.approx(sk(1.0))
