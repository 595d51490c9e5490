#!/usr/bin/env python3
"""Ratios of exact terms to their leading-order bracket estimates.

For each branch and a ladder of tail widths, print the finite parts, the
bracket value and the exact/bracket ratio stored in the breakdown
estimates, together with the cancellation ratio |total| / sum|term|.
"""

import math

from vswitch import ProbeConfig, dvz_plateau, dvz_plateau_short

PROBE = ProbeConfig(1.0, 1.0, 1.0)


def report(label, b, keys):
    est = b.estimates
    vals = "  ".join(f"{k}={est[k]:.4g}" for k in keys if k in est)
    print(f"{label:<28} total={b.total:.6e}  cancel={est['cancellation']:.2e}  {vals}")


def main() -> None:
    print("long branch, tau1 = 1e3 z: cross term vs bracket, case IV total vs bracket")
    for tau2 in (2.0, 1e3, 1e6, 1e8, 1e10):
        b = dvz_plateau(PROBE, 1e3, tau2)
        report(f"tau2={tau2:.0e}", b, ("ms_o1", "case_iv_o1", "s_factor"))

    print("\nshort branch, tau1 = 0.5 z")
    for mu in (0.01, 0.1, 1.0, 10.0, 100.0):
        b = dvz_plateau_short(PROBE, 0.5, math.pi * mu * 0.5)
        report(f"mu={mu:g} (mu*sigma1={4 * mu:g})", b, ("ms_o1", "total_o1"))


if __name__ == "__main__":
    main()
