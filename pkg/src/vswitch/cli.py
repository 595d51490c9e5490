"""Command-line front end.

Verbs::

    vswitch compute     one point, JSON report on stdout, summary on stderr
    vswitch sweep       one axis (tau1, tau2 or z) over a grid, CSV or JSON
    vswitch regime-map  regime labels over a (tau1, tau2) grid
    vswitch check       pipeline against the brute-force oracle at one point

Parameters come from an optional flat JSON config file (keys ``e``, ``m``,
``z``, ``variant``, ``tau1``, ``tau2``, ``mode``, ``component``, ``rho``)
and are overridden by command-line flags.  Grids are written
``start:stop:count``, with an optional ``:log`` suffix for geometric
spacing.  ``VSWITCH_THREADS`` caps the number of worker processes used by
sweeps.

Exit codes: 0 success, 1 failed check, 2 configuration error, 3 numerical
error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from typing import Any, Sequence

import numpy as np

from . import __version__
from .core import Component, DispersionBreakdown, Mode, ProbeConfig, RegimeId, SwitchingSpec, Variant
from .dispersion import classify_regime, dispersion, validity_check
from .errors import ConfigError, EmptyGrid, NonPositiveInput, NumericError, UnsupportedVariant
from .kernels import Kernel, KernelComponent
from .oracle import brute_double_integral, fit_regularized, oracle_breakdown
from .singular import evaluate

EXIT_OK, EXIT_CHECK_FAILED, EXIT_CONFIG, EXIT_NUMERIC = 0, 1, 2, 3

_KEYS = ("e", "m", "z", "variant", "tau1", "tau2", "mode", "component", "rho")
_DEFAULTS: dict[str, Any] = {
    "e": 1.0,
    "m": 1.0,
    "z": 1.0,
    "variant": "step",
    "tau1": None,
    "tau2": 0.0,
    "mode": "drop",
    "component": "z",
    "rho": 0.01,
}
REGULAR_TOL = 1e-6
SINGULAR_TOL = 1e-2


# -- configuration --------------------------------------------------------------------

@dataclass(frozen=True)
class PointConfig:
    """Everything needed to evaluate one parameter point."""

    e: float
    m: float
    z: float
    variant: Variant
    tau1: float
    tau2: float
    mode: Mode
    component: Component
    rho: float

    @property
    def probe(self) -> ProbeConfig:
        return ProbeConfig(self.e, self.m, self.z)

    def spec(self) -> SwitchingSpec:
        variant = self.variant
        if variant is Variant.LORENTZ_PLATEAU and self.tau2 == 0.0:
            variant = Variant.STEP
        return SwitchingSpec.of(variant, self.tau1, self.tau2, self.z)


def _as_float(key: str, value: Any) -> float:
    try:
        return float(value)
    except (TypeError, ValueError):
        raise NonPositiveInput(f"{key} must be a number, got {value!r}") from None


def _parse_component(value: str) -> Component:
    v = str(value).strip().lower()
    if v == "z":
        return Component.Z
    if v in ("xy", "x", "y"):
        return Component.X
    raise UnsupportedVariant(f"unknown component {value!r}; use z or xy")


def load_config(path: str | None, overrides: dict[str, Any]) -> PointConfig:
    """Merge defaults, the config file and flag overrides into a point."""
    raw = dict(_DEFAULTS)
    if path:
        try:
            with open(path, encoding="utf-8") as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise NonPositiveInput(f"cannot read config {path!r}: {exc}") from None
        if not isinstance(data, dict):
            raise NonPositiveInput("config file must hold a flat JSON object")
        unknown = sorted(set(data) - set(_KEYS))
        if unknown:
            raise NonPositiveInput(f"unknown config keys: {', '.join(unknown)}")
        raw.update(data)
    raw.update({k: v for k, v in overrides.items() if v is not None})
    if raw["tau1"] is None:
        raise NonPositiveInput("tau1 is required (flag --tau1 or config key)")
    return PointConfig(
        e=_as_float("e", raw["e"]),
        m=_as_float("m", raw["m"]),
        z=_as_float("z", raw["z"]),
        variant=Variant.parse(str(raw["variant"])),
        tau1=_as_float("tau1", raw["tau1"]),
        tau2=_as_float("tau2", raw["tau2"]),
        mode=Mode.parse(str(raw["mode"])),
        component=_parse_component(raw["component"]),
        rho=_as_float("rho", raw["rho"]),
    )


def parse_grid(text: str) -> np.ndarray:
    """``start:stop:count`` or ``start:stop:count:log``."""
    parts = text.split(":")
    if len(parts) not in (3, 4) or (len(parts) == 4 and parts[3] != "log"):
        raise NonPositiveInput(f"grid must be start:stop:count[:log], got {text!r}")
    start, stop = _as_float("grid start", parts[0]), _as_float("grid stop", parts[1])
    try:
        count = int(parts[2])
    except ValueError:
        raise NonPositiveInput(f"grid count must be an integer, got {parts[2]!r}") from None
    if count <= 0:
        raise EmptyGrid(f"grid {text!r} has no points")
    if len(parts) == 4:
        if start <= 0 or stop <= 0:
            raise NonPositiveInput("a log grid needs positive end points")
        return np.geomspace(start, stop, count)
    return np.linspace(start, stop, count)


# -- evaluation ----------------------------------------------------------------------------

def _breakdown(cfg: PointConfig) -> DispersionBreakdown:
    spec = cfg.spec()
    if cfg.component is not Component.Z and spec.variant not in (Variant.STEP, Variant.LORENTZIAN):
        return oracle_breakdown(cfg.probe, spec, cfg.mode, cfg.component)
    return dispersion(cfg.probe, spec, cfg.mode, cfg.component)


def _regime(cfg: PointConfig) -> RegimeId | None:
    spec = cfg.spec()
    if spec.variant is Variant.LORENTZIAN:
        return None
    return classify_regime(cfg.probe, cfg.tau1, cfg.tau2 if spec.variant is not Variant.STEP else 0.0).case_id


def _bracket(regime: RegimeId | None, estimates: dict[str, float]) -> float | None:
    """Order-of-magnitude estimate of the total, where the regime has one."""
    if regime is RegimeId.IV:
        return estimates.get("case_iv_bracket")
    if regime in (RegimeId.III, RegimeId.SHORT_S, RegimeId.SHORT_M):
        return estimates.get("total_bracket")
    return None


def _pair(v) -> dict[str, float]:
    return {"pole": v.pole_coeff, "finite": v.finite_part}


def point_report(cfg: PointConfig) -> dict[str, Any]:
    """Full report for one point (the JSON body of ``compute``)."""
    spec = cfg.spec()
    b = _breakdown(cfg)
    regime = _regime(cfg)
    totals = {
        mode.value: sum(evaluate(v, mode, cfg.m, b.tau_ref) for v in b.terms) for mode in (Mode.DROP_DIVERGENCE, Mode.COMPTON_CUTOFF)
    }
    second = 0.0 if spec.variant is Variant.LORENTZIAN else spec.scales.tau2
    vr = validity_check(cfg.probe, spec.tau, second, b.total)
    bracket = _bracket(regime, b.estimates)
    return {
        "variant": spec.variant.value,
        "component": "z" if cfg.component is Component.Z else "xy",
        "e": cfg.e,
        "m": cfg.m,
        "z": cfg.z,
        "tau1": cfg.tau1,
        "tau2": cfg.tau2,
        "m_term": _pair(b.m_term),
        "s_term": _pair(b.s_term),
        "ms_term": _pair(b.ms_term),
        "total": b.total,
        "mode": b.mode.value,
        "totals": totals,
        "regime": regime.value if regime else None,
        "validity": {"valid": vr.valid, "bound": vr.bound, "ratio": vr.ratio, "delta_t": vr.delta_t},
        "bracket": {"value": bracket, "estimate": True} if bracket is not None else None,
        "estimates": {k: {"value": v, "estimate": True} for k, v in sorted(b.estimates.items())},
    }


CSV_COLUMNS = (
    "axis",
    "value",
    "m_pole",
    "m_finite",
    "s_pole",
    "s_finite",
    "ms_pole",
    "ms_finite",
    "total_drop",
    "total_compton",
    "regime",
    "bracket",
    "estimate",
)


def _row(axis: str, value: float, rep: dict[str, Any]) -> dict[str, Any]:
    br = rep["bracket"]
    return {
        "axis": axis,
        "value": value,
        "m_pole": rep["m_term"]["pole"],
        "m_finite": rep["m_term"]["finite"],
        "s_pole": rep["s_term"]["pole"],
        "s_finite": rep["s_term"]["finite"],
        "ms_pole": rep["ms_term"]["pole"],
        "ms_finite": rep["ms_term"]["finite"],
        "total_drop": rep["totals"]["drop"],
        "total_compton": rep["totals"]["compton"],
        "regime": rep["regime"] or "",
        "bracket": br["value"] if br else None,
        "estimate": br is not None,
    }


def _sweep_task(args: tuple[PointConfig, str, float]) -> dict[str, Any]:
    cfg, axis, value = args
    pt = replace(cfg, **{axis: float(value)})
    return _row(axis, float(value), point_report(pt))


def _workers(n: int) -> int:
    env = os.environ.get("VSWITCH_THREADS")
    cap = os.cpu_count() or 1
    if env:
        try:
            cap = max(1, int(env))
        except ValueError:
            raise NonPositiveInput(f"VSWITCH_THREADS must be an integer, got {env!r}") from None
    return max(1, min(cap, n))


def run_sweep(cfg: PointConfig, axis: str, grid: Sequence[float]) -> list[dict[str, Any]]:
    """Evaluate ``cfg`` along ``axis``; rows come back in grid order."""
    if axis not in ("tau1", "tau2", "z"):
        raise NonPositiveInput(f"axis must be tau1, tau2 or z, got {axis!r}")
    if len(grid) == 0:
        raise EmptyGrid("empty grid")
    tasks = [(cfg, axis, float(v)) for v in grid]
    n = _workers(len(tasks))
    if n == 1:
        return [_sweep_task(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=n) as pool:
        return list(pool.map(_sweep_task, tasks))


def run_regime_map(cfg: PointConfig, tau1_grid: Sequence[float], tau2_grid: Sequence[float]) -> list[dict[str, Any]]:
    if len(tau1_grid) == 0 or len(tau2_grid) == 0:
        raise EmptyGrid("empty grid")
    rows = []
    for t1 in tau1_grid:
        for t2 in tau2_grid:
            case = classify_regime(cfg.probe, float(t1), float(t2))
            rows.append(
                {
                    "tau1": float(t1),
                    "tau2": float(t2),
                    "regime": case.case_id.value,
                    "dominant": case.dominant_term.value,
                    "sign": case.sign.value,
                }
            )
    return rows


def run_check(cfg: PointConfig, tol: float | None = None) -> dict[str, Any]:
    """Compare the pipeline total against the oracle at one point."""
    spec = cfg.spec()
    if cfg.component is not Component.Z and spec.variant not in (Variant.STEP, Variant.LORENTZIAN):
        raise UnsupportedVariant("the parallel component of tailed weights has no pipeline value to check")
    b = dispersion(cfg.probe, spec, Mode.DROP_DIVERGENCE, cfg.component)
    kc = KernelComponent.ZZ if cfg.component is Component.Z else KernelComponent.XX
    kern = Kernel(kc, cfg.probe)
    pipe_pole = sum(v.pole_coeff for v in b.terms)
    pipe_finite = b.total
    regular = spec.variant is Variant.STEP and cfg.tau1 < 2.0 * cfg.z
    if regular:
        o_pole, o_finite, resid = 0.0, brute_double_integral(spec, kern, 0.0), 0.0
    else:
        rhos = (cfg.rho, cfg.rho / 2.0, cfg.rho / 4.0)
        fit = fit_regularized(spec, kern, rhos)
        o_pole, o_finite, resid = fit.value.pole_coeff, fit.value.finite_part, fit.residual
    tolerance = tol if tol is not None else (REGULAR_TOL if regular else SINGULAR_TOL)

    def rel(a: float, b: float) -> float:
        scale = max(abs(a), abs(b))
        return 0.0 if scale == 0.0 else abs(a - b) / scale

    d_finite = rel(pipe_finite, o_finite)
    d_pole = rel(pipe_pole, o_pole)
    passed = d_finite <= tolerance and d_pole <= tolerance
    return {
        "variant": spec.variant.value,
        "regular": regular,
        "pipeline": {"pole": pipe_pole, "finite": pipe_finite},
        "oracle": {"pole": o_pole, "finite": o_finite, "fit_residual": resid},
        "discrepancy": {"pole": d_pole, "finite": d_finite},
        "tolerance": tolerance,
        "pass": passed,
    }


# -- output ---------------------------------------------------------------------------

def _fmt(v: Any) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "1" if v else "0"
    if isinstance(v, float):
        return format(v, ".17g")
    return str(v)


def to_csv(rows: list[dict[str, Any]], columns: Sequence[str]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow([_fmt(r[c]) for c in columns])
    return buf.getvalue()


def _json_safe(obj: Any) -> Any:
    if isinstance(obj, float) and not math.isfinite(obj):
        return str(obj)
    if isinstance(obj, dict):
        return {k: _json_safe(v) for k, v in obj.items()}
    if isinstance(obj, list):
        return [_json_safe(v) for v in obj]
    return obj


def to_json(obj: Any) -> str:
    return json.dumps(_json_safe(obj), indent=2) + "\n"


def _summary(rep: dict[str, Any]) -> str:
    return (
        f"{rep['variant']} z={rep['z']:g} tau1={rep['tau1']:g} tau2={rep['tau2']:g} "
        f"component={rep['component']} mode={rep['mode']} total={rep['total']:.9g} "
        f"regime={rep['regime'] or '-'} valid={'yes' if rep['validity']['valid'] else 'no'}"
    )


# -- argument parsing ---------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="PATH")
    common.add_argument("--variant")
    common.add_argument("--tau1", type=float)
    common.add_argument("--tau2", type=float)
    common.add_argument("--z", type=float)
    common.add_argument("--e", type=float)
    common.add_argument("--m", type=float)
    common.add_argument("--mode", choices=["drop", "compton"])
    common.add_argument("--component", choices=["z", "xy"])
    common.add_argument("--rho", type=float)
    common.add_argument("--format", choices=["csv", "json"])

    p = argparse.ArgumentParser(prog="vswitch", description="Velocity dispersion near a reflecting plane.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="verb", required=True)
    sub.add_parser("compute", parents=[common], help="evaluate one point")
    sw = sub.add_parser("sweep", parents=[common], help="sweep one axis")
    sw.add_argument("--axis", required=True, choices=["tau1", "tau2", "z"])
    sw.add_argument("--grid", required=True, metavar="START:STOP:COUNT[:log]")
    rm = sub.add_parser("regime-map", parents=[common], help="regime labels on a (tau1, tau2) grid")
    rm.add_argument("--grid", required=True, metavar="START:STOP:COUNT[:log]", help="tau1 grid")
    rm.add_argument("--grid2", required=True, metavar="START:STOP:COUNT[:log]", help="tau2 grid")
    ck = sub.add_parser("check", parents=[common], help="compare pipeline and oracle at one point")
    ck.add_argument("--tol", type=float, help="relative tolerance (default 1e-6 regular, 1e-2 singular)")
    return p


def _overrides(ns: argparse.Namespace) -> dict[str, Any]:
    return {k: getattr(ns, k, None) for k in _KEYS}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    out = sys.stdout
    try:
        overrides = _overrides(ns)
        if ns.verb == "regime-map" and overrides.get("tau1") is None:
            overrides["tau1"] = 1.0  # placeholder; the grid supplies tau1
        if ns.verb == "sweep" and ns.axis == "tau1" and overrides.get("tau1") is None:
            overrides["tau1"] = 1.0
        cfg = load_config(ns.config, overrides)
        if ns.verb == "compute":
            rep = point_report(cfg)
            if ns.format == "csv":
                out.write(to_csv([_row("tau1", cfg.tau1, rep)], CSV_COLUMNS))
            else:
                out.write(to_json(rep))
            print(_summary(rep), file=sys.stderr)
            return EXIT_OK
        if ns.verb == "sweep":
            rows = run_sweep(cfg, ns.axis, parse_grid(ns.grid))
            out.write(to_json(rows) if ns.format == "json" else to_csv(rows, CSV_COLUMNS))
            print(f"sweep over {ns.axis}: {len(rows)} points", file=sys.stderr)
            return EXIT_OK
        if ns.verb == "regime-map":
            rows = run_regime_map(cfg, parse_grid(ns.grid), parse_grid(ns.grid2))
            cols = ("tau1", "tau2", "regime", "dominant", "sign")
            out.write(to_json(rows) if ns.format == "json" else to_csv(rows, cols))
            return EXIT_OK
        rep = run_check(cfg, ns.tol)
        out.write(to_json(rep))
        verdict = "PASS" if rep["pass"] else "FAIL"
        print(
            f"check {verdict}: finite discrepancy {rep['discrepancy']['finite']:.3e}, "
            f"pole discrepancy {rep['discrepancy']['pole']:.3e}, tolerance {rep['tolerance']:g}",
            file=sys.stderr,
        )
        return EXIT_OK if rep["pass"] else EXIT_CHECK_FAILED
    except ConfigError as exc:
        print(f"vswitch: configuration error ({type(exc).__name__}): {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except NumericError as exc:
        print(f"vswitch: numerical error ({type(exc).__name__}): {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
