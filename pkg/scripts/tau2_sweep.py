#!/usr/bin/env python3
"""Normal dispersion against tail width at a long plateau.

Prints tau2/z, the three finite parts, the total and total/m_term for
tau1 = 100 z.  Usage: python3 scripts/tau2_sweep.py [--tau1 100] [--points 21]
"""

import argparse

import numpy as np

from vswitch import ProbeConfig, dvz_plateau


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--tau1", type=float, default=100.0)
    ap.add_argument("--points", type=int, default=21)
    ap.add_argument("--tau2-max", type=float, default=10.0)
    args = ap.parse_args()

    probe = ProbeConfig(1.0, 1.0, 1.0)
    print(f"{'tau2':>8} {'m':>13} {'s':>13} {'ms':>13} {'total':>13} {'total/m':>9}")
    for tau2 in np.linspace(0.0, args.tau2_max, args.points):
        b = dvz_plateau(probe, args.tau1, float(tau2))
        m, s, ms = (t.finite_part for t in b.terms)
        print(f"{tau2:8.3f} {m:13.6e} {s:13.6e} {ms:13.6e} {b.total:13.6e} {b.total / m:9.4f}")


if __name__ == "__main__":
    main()
