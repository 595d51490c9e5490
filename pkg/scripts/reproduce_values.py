#!/usr/bin/env python3
"""Print the headline numbers of the model next to their closed forms."""

import math

from vswitch import (
    ProbeConfig,
    dvxy_lorentzian,
    dvxy_step,
    dvz_lorentzian,
    dvz_plateau,
    dvz_step,
)
from vswitch.dispersion import validity_coefficient
from vswitch.regions import f_shape

UNIT = ProbeConfig(1.0, 1.0, 1.0)


def row(name, value, reference=None):
    value = value + 0.0  # print -0.0 as 0.0
    if reference is None:
        print(f"{name:<44} {value: .12e}")
    else:
        rel = abs(value - reference) / abs(reference)
        print(f"{name:<44} {value: .12e}  ref {reference: .12e}  rel {rel:.1e}")


def main() -> None:
    row("step z: tau = z", dvz_step(UNIT, 1.0), math.log(3) / (16 * math.pi**2))
    row("step z: tau = 1e7 z (late time)", dvz_step(UNIT, 1e7), 1 / (4 * math.pi**2))
    row("step xy: tau = 1e3 z", dvxy_step(UNIT, 1e3))
    row("Lorentzian z: tau = z", dvz_lorentzian(UNIT, 1.0), 1 / (64 * math.pi**2))
    row("Lorentzian xy: tau = z (zero crossing)", dvxy_lorentzian(UNIT, 1.0))
    row("F(chi = 1)", f_shape(1.0))
    b = dvz_plateau(UNIT, 1e3, 2.0)
    m, s, ms = (t.finite_part for t in b.terms)
    row("tails/plateau at tau2 = 2z, tau1 = 1e3 z", s / m, math.pi**4 / (math.pi**2 + 4) ** 2)
    row("total/plateau at tau2 = 2z, tau1 = 1e3 z", b.total / m)
    row("validity coefficient (electron)", validity_coefficient())


if __name__ == "__main__":
    main()
