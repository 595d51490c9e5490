import math

import pytest

from vswitch.core import Component, Mode, ProbeConfig, RegimeId, Sign, SwitchingSpec, Term, Variant
from vswitch.dispersion import (
    classify_regime,
    dispersion,
    dvxy_lorentzian,
    dvz_plateau,
    dvz_plateau_short,
    dvz_step,
    dvz_variant,
    validity_check,
)
from vswitch.errors import (
    LightConeCoincidence,
    NonPositiveInput,
    NonPositiveMass,
    ShortMeasurementBranch,
    UnsupportedVariant,
)
from vswitch.singular import evaluate

UNIT = ProbeConfig(1.0, 1.0, 1.0)


class TestDispatch:
    def test_step(self):
        b = dispersion(UNIT, SwitchingSpec.step(1.0, 1.0))
        assert b.total == pytest.approx(dvz_step(UNIT, 1.0))
        assert b.s_term.finite_part == 0.0 == b.ms_term.finite_part

    def test_lorentzian_parallel(self):
        b = dispersion(UNIT, SwitchingSpec.lorentzian(0.5, 1.0), component=Component.X)
        assert b.total == pytest.approx(dvxy_lorentzian(UNIT, 0.5))

    @pytest.mark.parametrize("tau1", [0.5, 5.0])
    def test_plateau_picks_branch(self, tau1):
        b = dispersion(UNIT, SwitchingSpec.plateau(tau1, 1.0, 1.0))
        fn = dvz_plateau_short if tau1 < 2 else dvz_plateau
        assert b.total == pytest.approx(fn(UNIT, tau1, 1.0).total)

    def test_parallel_tailed_is_oracle_only(self):
        with pytest.raises(UnsupportedVariant):
            dispersion(UNIT, SwitchingSpec.plateau(5.0, 1.0, 1.0), component=Component.Y)

    def test_variant_dispatch(self):
        spec = SwitchingSpec.of("B", 5.0, 1.0, 1.0)
        assert dispersion(UNIT, spec).total == pytest.approx(dvz_variant(Variant.VARIANT_B, UNIT, 5.0, 1.0).total)


class TestErrors:
    def test_wrong_branch(self):
        with pytest.raises(ShortMeasurementBranch):
            dvz_plateau(UNIT, 1.0, 1.0)
        with pytest.raises(ShortMeasurementBranch):
            dvz_plateau_short(UNIT, 3.0, 1.0)

    def test_light_crossing(self):
        with pytest.raises(LightConeCoincidence):
            dvz_step(UNIT, 2.0)
        with pytest.raises(LightConeCoincidence):
            classify_regime(UNIT, 2.0, 1.0)

    def test_bad_inputs(self):
        with pytest.raises(NonPositiveMass):
            dvz_step(ProbeConfig(1.0, 0.0, 1.0), 1.0)
        with pytest.raises(NonPositiveInput):
            dvz_plateau(UNIT, 5.0, -1.0)
        with pytest.raises(NonPositiveInput):
            dvz_variant("C", UNIT, 5.0, 0.0)
        with pytest.raises(UnsupportedVariant):
            dvz_variant("step", UNIT, 5.0, 1.0)


def test_total_is_sum_of_evaluated_terms():
    b = dvz_plateau(UNIT, 6.0, 1.5, Mode.COMPTON_CUTOFF)
    parts = sum(evaluate(v, b.mode, b.mass, b.tau_ref) for v in b.terms)
    assert b.total == pytest.approx(parts)
    assert b.tau_ref == 6.0


def test_untailed_plateau_is_step():
    b = dvz_plateau(UNIT, 6.0, 0.0)
    assert b.total == pytest.approx(dvz_step(UNIT, 6.0), rel=1e-12)
    assert b.s_term.finite_part == 0.0 and b.ms_term.finite_part == 0.0


def test_primed_variants_equal():
    for a, b in (("A", "A'"), ("B", "B'")):
        x = dvz_variant(a, UNIT, 5.0, 2.0)
        y = dvz_variant(b, UNIT, 5.0, 2.0)
        assert x.total == y.total


def test_estimates_present():
    b = dvz_plateau(UNIT, 20.0, 1.0)
    assert {"m_leading", "ms_bracket", "s_factor", "cancellation"} <= set(b.estimates)
    assert 0.0 <= b.estimates["cancellation"] <= 1.0


@pytest.mark.parametrize(
    "tau1, tau2, case, term, sign",
    [
        (100.0, 0.1, RegimeId.I, Term.M, Sign.POSITIVE),
        (100.0, 2.0, RegimeId.II, Term.M, Sign.POSITIVE),
        (100.0, 2.5e5, RegimeId.III, Term.S, Sign.POSITIVE),
        (100.0, 1e8, RegimeId.IV, Term.MS, Sign.NEGATIVE),
        (1.0, 0.5, RegimeId.SHORT_M, Term.M, Sign.POSITIVE),
        (1.0, 10.0, RegimeId.SHORT_S, Term.MS, Sign.POSITIVE),
    ],
)
def test_regime_table(tau1, tau2, case, term, sign):
    rc = classify_regime(UNIT, tau1, tau2)
    assert (rc.case_id, rc.dominant_term, rc.sign) == (case, term, sign)


def test_validity_check():
    rep = validity_check(UNIT, 3.0, 10.0, 1e-4)
    assert rep.delta_t == 10.0
    assert rep.ratio == pytest.approx(0.1)
    assert rep.valid
    assert not validity_check(UNIT, 3.0, 10.0, 1e-1).valid
    assert validity_check(ProbeConfig(0.0, 1.0, 1.0), 3.0, 1.0, 0.0).bound == math.inf
