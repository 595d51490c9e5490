"""The brute-force double integral, checked on cases with known answers."""

import math

import pytest
from scipy import integrate

from vswitch.core import ProbeConfig, SwitchingSpec, Variant, derive_scales
from vswitch.dispersion import dvz_lorentzian, dvz_step
from vswitch.errors import ExcisionCoversSupport, NonPositiveInput
from vswitch.kernels import Kernel, KernelComponent, SmoothKernel
from vswitch.oracle import (
    brute_double_integral,
    fit_regularized,
    region_class,
    support_segments,
)
from vswitch.regions import combine

UNIT = ProbeConfig(1.0, 1.0, 1.0)
KZZ = Kernel(KernelComponent.ZZ, UNIT)


def test_regular_step_needs_no_excision():
    assert brute_double_integral(SwitchingSpec.step(1.0, 1.0), KZZ, 0.0) == pytest.approx(
        dvz_step(UNIT, 1.0), rel=1e-8
    )


def test_zero_excision_refused_when_poles_inside():
    with pytest.raises(NonPositiveInput):
        brute_double_integral(SwitchingSpec.step(5.0, 1.0), KZZ, 0.0)


def test_excision_covering_support():
    with pytest.raises(ExcisionCoversSupport):
        brute_double_integral(SwitchingSpec.step(5.0, 1.0), KZZ, 0.5)


def test_lorentzian_fit():
    fit = fit_regularized(SwitchingSpec.lorentzian(1.0, 1.0), KZZ)
    assert fit.value.finite_part == pytest.approx(dvz_lorentzian(UNIT, 1.0), rel=1e-5)
    assert len(fit.raw) == 3


def test_region_classes_sum_to_total_smooth():
    spec = SwitchingSpec(Variant.LORENTZ_PLATEAU, derive_scales(1.0, 0.6, 1.0))
    sk = SmoothKernel(0.8)
    mu = spec.scales.mu
    b = combine(sk, 1.0, mu)
    pieces = {
        c: brute_double_integral(spec, sk, 0.0, regions=region_class(c), epsrel=1e-9)
        for c in ("M", "MS", "S1", "S2")
    }
    assert pieces["M"] == pytest.approx(b.i_m.finite_part, rel=1e-7)
    assert pieces["MS"] == pytest.approx(4 * b.i_ms.finite_part, rel=1e-7)
    assert pieces["S1"] == pytest.approx(2 * b.i_s1.finite_part, rel=1e-6)
    assert pieces["S2"] == pytest.approx(2 * b.i_s2.finite_part, rel=1e-6)


def test_time_translation_invariance():
    spec = SwitchingSpec(Variant.VARIANT_A, derive_scales(1.0, 0.5, 1.0))
    sk = SmoothKernel(1.0)
    a = brute_double_integral(spec, sk, 0.0, epsrel=1e-10)
    b = brute_double_integral(spec, sk, 0.0, shift=3.7, epsrel=1e-10)
    assert b == pytest.approx(a, rel=1e-8)


def test_support_segments():
    names = [s.name for s in support_segments(SwitchingSpec.plateau(2.0, 1.0, 1.0))]
    assert names == ["L", "P", "R"]
    names = [s.name for s in support_segments(SwitchingSpec.of("B", 2.0, 1.0, 1.0))]
    assert "R" not in names and "P" not in names
    assert [s.name for s in support_segments(SwitchingSpec.lorentzian(1.0, 1.0))] == ["W"]


def test_unknown_region_class():
    with pytest.raises(NonPositiveInput):
        region_class("Q")


def test_tail_truncation_is_negligible():
    # Lorentzian against a kernel with a flat tail: truncation shows up directly.
    spec = SwitchingSpec.lorentzian(1.0, 1.0)
    sk = SmoothKernel(50.0, 50.0**4)
    brute = brute_double_integral(spec, sk, 0.0, epsrel=1e-10)
    # Autocorrelation of the Lorentzian: 2 tl^3/(pi (T^2 + 4 tl^2)) with tl = 1.
    exact = 2 * integrate.quad(lambda T: 2 / (math.pi * (T * T + 4)) * sk.value(T), 0, math.inf)[0]
    assert brute == pytest.approx(exact, rel=1e-4)
