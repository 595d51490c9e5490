import math

import pytest

from vswitch.core import (
    Mode,
    ProbeConfig,
    RegimeCase,
    RegimeId,
    RegularizedValue,
    Sign,
    SwitchingSpec,
    Term,
    Variant,
    derive_scales,
    validate,
)
from vswitch.errors import (
    InconsistentScales,
    NonPositiveDistance,
    NonPositiveInput,
    NonPositiveMass,
    UnsupportedVariant,
    VariantScaleMismatch,
)


@pytest.mark.parametrize(
    "name, expected",
    [
        ("step", Variant.STEP),
        ("Lorentzian", Variant.LORENTZIAN),
        ("lorentz-plateau", Variant.LORENTZ_PLATEAU),
        ("A'", Variant.VARIANT_A_PRIME),
        ("variant_b", Variant.VARIANT_B),
        ("Bprime", Variant.VARIANT_B_PRIME),
        ("c", Variant.VARIANT_C),
    ],
)
def test_variant_aliases(name, expected):
    assert Variant.parse(name) is expected


def test_unknown_variant():
    with pytest.raises(UnsupportedVariant):
        Variant.parse("gaussian")


def test_mode_parse():
    assert Mode.parse("drop") is Mode.DROP_DIVERGENCE
    assert Mode.parse("ComptonCutoff") is Mode.COMPTON_CUTOFF
    assert Mode.parse(Mode.COMPTON_CUTOFF) is Mode.COMPTON_CUTOFF
    with pytest.raises(ValueError):
        Mode.parse("dimreg")


def test_derived_scales():
    sc = derive_scales(2.0, 3.0, 0.5)
    assert sc.mu == pytest.approx(3.0 / (2.0 * math.pi))
    assert sc.sigma1 == pytest.approx(0.5)
    assert sc.sigma2 == pytest.approx(sc.sigma1 / sc.mu)
    assert sc.tau_lorentz == pytest.approx(3.0 / math.pi)


@pytest.mark.parametrize("args", [(0.0, 1.0, 1.0), (1.0, -1.0, 1.0), (1.0, 1.0, 0.0), (math.nan, 1.0, 1.0)])
def test_derive_scales_rejects(args):
    with pytest.raises(NonPositiveInput):
        derive_scales(*args)


def test_lorentzian_spec_bookkeeping():
    spec = SwitchingSpec.lorentzian(2.0, 1.0)
    assert spec.scales.tau1 == 0.0
    assert spec.tau == pytest.approx(2.0)


def test_regularized_arithmetic():
    a = RegularizedValue(1.0, 2.0)
    b = RegularizedValue(0.5, -1.0)
    assert (a + b) == RegularizedValue(1.5, 1.0)
    assert (a - b) == RegularizedValue(0.5, 3.0)
    assert (2 * a) == RegularizedValue(2.0, 4.0)
    assert a.at(0.1) == pytest.approx(12.0)
    assert RegularizedValue.regular(3.0).is_regular


def test_regime_case_invariants():
    RegimeCase(RegimeId.IV, Term.MS, Sign.NEGATIVE)
    with pytest.raises(ValueError):
        RegimeCase(RegimeId.IV, Term.MS, Sign.POSITIVE)
    with pytest.raises(ValueError):
        RegimeCase(RegimeId.I, Term.S, Sign.POSITIVE)


class TestValidate:
    def test_accepts_consistent(self):
        p = ProbeConfig(1.0, 1.0, 1.0)
        s = SwitchingSpec.plateau(3.0, 1.0, 1.0)
        assert validate(p, s) == (p, s)

    def test_mass(self):
        with pytest.raises(NonPositiveMass):
            validate(ProbeConfig(1.0, 0.0, 1.0), SwitchingSpec.step(1.0, 1.0))

    def test_distance(self):
        with pytest.raises(NonPositiveDistance):
            validate(ProbeConfig(1.0, 1.0, -1.0), SwitchingSpec.step(1.0, 1.0))

    def test_distance_mismatch(self):
        with pytest.raises(InconsistentScales):
            validate(ProbeConfig(1.0, 1.0, 2.0), SwitchingSpec.step(1.0, 1.0))

    def test_step_with_tails(self):
        spec = SwitchingSpec(Variant.STEP, derive_scales(1.0, 2.0, 1.0))
        with pytest.raises(VariantScaleMismatch):
            validate(ProbeConfig(1.0, 1.0, 1.0), spec)
