"""Property-based checks of invariances and limits."""

import math
from dataclasses import dataclass

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from vswitch.cli import parse_grid
from vswitch.core import Mode, ProbeConfig, SwitchingSpec, Variant, derive_scales
from vswitch.dispersion import dvz_lorentzian, dvz_plateau, dvz_step, step_breakdown
from vswitch.oracle import brute_double_integral
from vswitch.regions import f_shape
from vswitch.switching import eval_switch

pos = st.floats(min_value=0.05, max_value=20.0, allow_nan=False)
charge = st.floats(min_value=-5.0, max_value=5.0, allow_nan=False)


@dataclass(frozen=True)
class OddKernel:
    poles = ()

    def value(self, T):
        return T / (1.0 + T**4)


@dataclass(frozen=True)
class ZeroKernel:
    poles = ()

    def value(self, T):
        return 0.0


@dataclass(frozen=True)
class Gaussian:
    poles = ()
    width: float = 1.0

    def value(self, T):
        return math.exp(-((T / self.width) ** 2))


@given(st.floats(min_value=0.0, max_value=1e8, allow_nan=False), st.floats(min_value=0.0, max_value=1e8))
def test_f_shape_monotone_and_bounded(a, b):
    lo, hi = sorted((a, b))
    assert 0.0 <= f_shape(lo) <= f_shape(hi) + 1e-15 < math.pi / 2 + 1e-15


@given(pos, pos, charge)
def test_step_scales_with_charge_squared(tau, z, e):
    assume(abs(tau - 2 * z) > 1e-3 * z)
    unit = dvz_step(ProbeConfig(1.0, 1.0, z), tau)
    assert dvz_step(ProbeConfig(e, 2.0, z), tau) == pytest.approx(e * e / 4.0 * unit, rel=1e-12, abs=1e-300)


@given(pos, pos)
def test_short_step_positive(tau, z):
    assume(tau < 2 * z * (1 - 1e-6))
    assert dvz_step(ProbeConfig(1.0, 1.0, z), tau) > 0.0


@given(pos, pos)
def test_lorentzian_peaks_at_width_equal_distance(tau, z):
    # tau^2/(tau^2 + z^2)^2 rises up to tau = z and falls beyond it.
    p = ProbeConfig(1.0, 1.0, z)
    assume(abs(tau - z) > 0.02 * z)
    wider = dvz_lorentzian(p, 1.01 * tau)
    if tau > z:
        assert dvz_lorentzian(p, tau) > wider
    else:
        assert dvz_lorentzian(p, tau / 1.01) < dvz_lorentzian(p, tau)
    assert dvz_lorentzian(p, z) >= dvz_lorentzian(p, tau)


@given(st.floats(min_value=2.5, max_value=1e4), st.floats(min_value=0.1, max_value=1e3))
def test_compton_exceeds_drop(tau, mass):
    # The pole coefficient of the normal step term is positive.
    p = ProbeConfig(1.0, mass, 1.0)
    drop = step_breakdown(p, tau, Mode.DROP_DIVERGENCE).total
    compton = step_breakdown(p, tau, Mode.COMPTON_CUTOFF).total
    assert compton > drop


@given(st.floats(min_value=2.5, max_value=1e3))
def test_untailed_plateau_has_no_tail_terms(tau1):
    b = dvz_plateau(ProbeConfig(1.0, 1.0, 1.0), tau1, 0.0)
    assert b.s_term.finite_part == b.ms_term.finite_part == 0.0
    assert b.s_term.pole_coeff == b.ms_term.pole_coeff == 0.0


@given(st.sampled_from(list(Variant)), pos, pos, st.floats(min_value=-30, max_value=30))
def test_mirror_pairs(variant, tau1, tau2, t):
    assume(variant not in (Variant.STEP, Variant.LORENTZIAN))
    spec = SwitchingSpec(variant, derive_scales(tau1, tau2, 1.0))
    w = eval_switch(spec, t)
    if variant in (Variant.LORENTZ_PLATEAU, Variant.VARIANT_C):
        assert w == eval_switch(spec, -t)
    mirror = {Variant.VARIANT_A: Variant.VARIANT_A_PRIME, Variant.VARIANT_B: Variant.VARIANT_B_PRIME}
    if variant in mirror:
        other = SwitchingSpec(mirror[variant], spec.scales)
        assert w == eval_switch(other, -t)


# The oracle is slow, so its properties run on few examples.
oracle_settings = settings(max_examples=6)


@oracle_settings
@given(st.sampled_from([Variant.LORENTZ_PLATEAU, Variant.VARIANT_A, Variant.VARIANT_B]), st.floats(0.5, 3.0))
def test_odd_kernel_integrates_to_zero(variant, tau1):
    spec = SwitchingSpec(variant, derive_scales(tau1, 0.5, 1.0))
    assert brute_double_integral(spec, OddKernel(), 0.0, epsrel=1e-8) == pytest.approx(0.0, abs=1e-8)
    assert brute_double_integral(spec, ZeroKernel(), 0.0) == 0.0


@oracle_settings
@given(st.floats(0.3, 3.0), st.floats(-20.0, 20.0))
def test_oracle_translation_invariance(tau1, shift):
    spec = SwitchingSpec(Variant.VARIANT_B, derive_scales(tau1, 0.7, 1.0))
    a = brute_double_integral(spec, Gaussian(), 0.0, epsrel=1e-11)
    b = brute_double_integral(spec, Gaussian(), 0.0, shift=shift, epsrel=1e-11)
    assert b == pytest.approx(a, rel=1e-8)


@oracle_settings
@given(st.floats(0.3, 3.0))
def test_primed_variant_same_oracle_value(tau1):
    sc = derive_scales(tau1, 0.6, 1.0)
    a = brute_double_integral(SwitchingSpec(Variant.VARIANT_A, sc), Gaussian(0.8), 0.0)
    b = brute_double_integral(SwitchingSpec(Variant.VARIANT_A_PRIME, sc), Gaussian(0.8), 0.0)
    assert b == pytest.approx(a, rel=1e-8)


@oracle_settings
@given(st.floats(0.05, 0.5))
def test_sudden_limit_monotone(tau):
    # For a step much shorter than the light crossing, the dispersion grows with tau.
    p = ProbeConfig(1.0, 1.0, 1.0)
    assert dvz_step(p, tau) < dvz_step(p, 1.1 * tau)
    spec_a = SwitchingSpec.step(tau, 1.0)
    spec_b = SwitchingSpec.step(1.1 * tau, 1.0)
    g = Gaussian(2.0)
    assert brute_double_integral(spec_a, g, 0.0) < brute_double_integral(spec_b, g, 0.0)


@given(st.floats(0.001, 1e6), st.floats(0.001, 1e6), st.integers(1, 50), st.booleans())
def test_grid_round_trip(a, b, n, log):
    text = f"{a!r}:{b!r}:{n}" + (":log" if log else "")
    g = parse_grid(text)
    assert len(g) == n
    assert g[0] == pytest.approx(a)
    if n > 1:
        assert g[-1] == pytest.approx(b)
        assert np.all(np.diff(g) > 0) or np.all(np.diff(g) < 0) or a == b
