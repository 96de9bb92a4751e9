"""Command-line front end.

Subcommands: params | attenuate | tdelta | figure1 | validate.  Every command
accepts --config <file.json> plus flag overrides (flags win).  Times and
lengths accept SI suffixes (mm, um, ns, us, ...); bare numbers are SI units.

Exit codes: 0 success, 1 validation failure, 2 configuration error,
3 unsupported method/waveform combination.
"""

from __future__ import annotations

import argparse
import json
import re
import sys

import numpy as np

from .abel import (ResolventHorizonError, resolvent_for_waveform,
                   solve_second_kind)
from .analysis import (DeltaUnreachable, TDeltaQuery, UnsupportedCombination,
                       figure1_data, find_t_delta, sweep_t_delta)
from .closedform import Resistive, StrongSkin, usigma_resistive, usigma_step_skin
from .params import (ConfigError, Coaxial, ElectrodeMaterial, LineSpec,
                     Regime, Stripline, derive_constants, skin_regime)
from .sampling import CSV_FLOAT_FMT, TimeGrid
from .waveform import (Sampled, Step, Trapezoid, UnsupportedWaveform,
                       load_waveform_csv, validate_monotone)
from .validation import run_checks

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_CONFIG = 2
EXIT_UNSUPPORTED = 3

_UNIT_SCALE = {
    "s": 1.0, "ms": 1e-3, "us": 1e-6, "ns": 1e-9, "ps": 1e-12,
    "m": 1.0, "cm": 1e-2, "mm": 1e-3, "um": 1e-6, "nm": 1e-9,
}
_QTY_RE = re.compile(r"^\s*([-+0-9.eE]+)\s*([a-z]*)\s*$")


def parse_quantity(text) -> float:
    """'3.2ns' -> 3.2e-9; bare numbers pass through as SI."""
    if isinstance(text, (int, float)):
        return float(text)
    m = _QTY_RE.match(text)
    if not m:
        raise ConfigError(f"cannot parse quantity {text!r}")
    value, unit = m.groups()
    try:
        num = float(value)
    except ValueError as exc:
        raise ConfigError(f"cannot parse quantity {text!r}") from exc
    if not unit:
        return num
    if unit not in _UNIT_SCALE:
        raise ConfigError(f"unknown unit suffix {unit!r} in {text!r}")
    return num * _UNIT_SCALE[unit]


def _fmt(x: float) -> str:
    return CSV_FLOAT_FMT.format(x)


def _load_config(path) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from exc


def _setting(args, cfg: dict, flag: str, cfg_path: tuple, default=None):
    """Flag value if given, else the config file value, else default."""
    val = getattr(args, flag, None)
    if val is not None:
        return val
    node = cfg
    for key in cfg_path:
        if not isinstance(node, dict) or key not in node:
            return default
        node = node[key]
    return node


def _line_from(args, cfg) -> LineSpec | None:
    r_outer = _setting(args, cfg, "r_outer", ("line", "geometry", "r_outer"))
    r_inner = _setting(args, cfg, "r_inner", ("line", "geometry", "r_inner"))
    gap = _setting(args, cfg, "gap", ("line", "geometry", "gap"))
    sigma = _setting(args, cfg, "conductivity", ("line", "material", "conductivity"))
    thickness = _setting(args, cfg, "thickness", ("line", "material", "thickness"))
    r_override = _setting(args, cfg, "resistance_override",
                          ("line", "resistance_override"))
    if gap is None and r_outer is None and r_inner is None:
        return None
    if sigma is None:
        raise ConfigError("line geometry given but material conductivity missing")
    if gap is not None:
        geometry = Stripline(parse_quantity(gap))
    else:
        if r_outer is None or r_inner is None:
            raise ConfigError("coaxial geometry needs both r_outer and r_inner")
        geometry = Coaxial(parse_quantity(r_outer), parse_quantity(r_inner))
    material = ElectrodeMaterial(
        float(sigma),
        parse_quantity(thickness) if thickness is not None else None,
    )
    override = float(r_override) if r_override is not None else None
    return LineSpec(geometry, material, override)


def _waveform_from(args, cfg):
    kind = _setting(args, cfg, "waveform", ("waveform", "type"), "step")
    amplitude = _setting(args, cfg, "amplitude", ("waveform", "amplitude"), 1.0)
    amplitude = float(amplitude)
    if kind == "step":
        return Step(amplitude)
    if kind == "trapezoid":
        rise = _setting(args, cfg, "rise_time", ("waveform", "rise_time"))
        if rise is None:
            raise ConfigError("trapezoid waveform needs --rise-time")
        return Trapezoid(amplitude, parse_quantity(rise))
    path = kind if kind.endswith(".csv") else _setting(
        args, cfg, None, ("waveform", "path"))
    if not path:
        raise ConfigError(f"unknown waveform {kind!r} (step, trapezoid, or a .csv path)")
    try:
        w = load_waveform_csv(path)
    except OSError as exc:
        raise ConfigError(f"cannot read waveform file {path}: {exc}") from exc
    check = validate_monotone(w)
    if not check.ok:
        raise ConfigError(f"waveform in {path} is not a monotone rise: {check.message}")
    return w


def _time_scales(args, cfg):
    """(t_sigma, t_R), from direct flags or derived from the line."""
    t_sigma = _setting(args, cfg, "t_sigma", ("t_sigma",))
    t_r = _setting(args, cfg, "t_r", ("t_R",))
    t_sigma = parse_quantity(t_sigma) if t_sigma is not None else None
    t_r = parse_quantity(t_r) if t_r is not None else None
    line = _line_from(args, cfg)
    consts = derive_constants(line) if line is not None else None
    if t_sigma is None and consts is not None:
        t_sigma = consts.t_sigma
    if t_r is None and consts is not None:
        t_r = consts.t_R
    return t_sigma, t_r, line, consts


def _open_output(args):
    path = getattr(args, "output", None)
    if path:
        return open(path, "w", newline="\n"), True
    return sys.stdout, False


def _write_comments(fh, meta: dict):
    for key, val in meta.items():
        fh.write(f"# {key}: {val}\n")


def cmd_params(args) -> int:
    cfg = _load_config(args.config) if args.config else {}
    line = _line_from(args, cfg)
    if line is None:
        raise ConfigError("params needs a line geometry (coax radii or stripline gap)")
    consts = derive_constants(line)
    payload = consts.to_dict()
    if line.material.thickness is not None:
        regime_at = parse_quantity(args.at) if args.at else None
        if regime_at is not None:
            payload["regime_at_t"] = skin_regime(regime_at, line.material).value
    text = json.dumps(payload, indent=2)
    fh, close = _open_output(args)
    fh.write(text + "\n")
    if close:
        fh.close()
    return EXIT_OK


def _resolve_regime(args, cfg, line, t_max) -> str:
    regime = _setting(args, cfg, "regime", ("regime",), "auto")
    if regime in ("skin", "resistive"):
        return regime
    if regime != "auto":
        raise ConfigError(f"unknown regime {regime!r} (skin, resistive, auto)")
    if line is None:
        raise ConfigError("regime 'auto' needs a line spec; or pass --regime")
    r = skin_regime(t_max, line.material)
    if r is Regime.INDETERMINATE:
        raise ConfigError(
            "electrode thickness is within the gray zone at t_max; pass "
            "--regime skin or --regime resistive explicitly"
        )
    return "skin" if r is Regime.STRONG_SKIN else "resistive"


def cmd_attenuate(args) -> int:
    cfg = _load_config(args.config) if args.config else {}
    w = _waveform_from(args, cfg)
    t_sigma, t_r, line, _ = _time_scales(args, cfg)
    method = _setting(args, cfg, "method", ("method",), "auto")
    n = int(_setting(args, cfg, "n", ("grid", "n"), 4096))
    t_max = _setting(args, cfg, "t_max", ("grid", "t_max"))

    scale_hint = t_sigma or t_r
    if t_max is None:
        if scale_hint is None:
            raise ConfigError("need --t-max, or a line/time-constant to infer it")
        t_max = 3.0 * scale_hint
    else:
        t_max = parse_quantity(t_max)
    regime = _resolve_regime(args, cfg, line, t_max)

    if regime == "skin":
        if t_sigma is None:
            raise ConfigError("strong-skin regime needs t_sigma (line or --t-sigma)")
        if method == "auto":
            method = "closed-form" if isinstance(w, Step) else "second-kind"
    else:
        if t_r is None:
            raise ConfigError("resistive regime needs t_R (thickness, "
                              "resistance override, or --t-r)")
        if method == "auto":
            method = "closed-form"

    knot = w.rise_time if isinstance(w, Trapezoid) and w.rise_time < t_max else None
    grid = TimeGrid.with_knot(n, t_max, knot) if knot else TimeGrid.uniform(n, t_max)
    meta = {"method": method, "regime": regime, "n_points": len(grid),
            "t_max_s": _fmt(t_max)}
    residual = None

    if regime == "resistive":
        if method != "closed-form":
            raise UnsupportedCombination(
                f"method {method!r} applies to the strong-skin regime; the "
                "resistive regime uses its closed forms")
        values = np.asarray(usigma_resistive(w, t_r, grid.points))
        meta["t_R_s"] = _fmt(t_r)
    else:
        meta["t_sigma_s"] = _fmt(t_sigma)
        if method == "closed-form":
            if not isinstance(w, Step):
                raise UnsupportedCombination(
                    "closed-form strong-skin attenuation exists for the step "
                    "drive only; use --method second-kind or resolvent")
            values = np.asarray(usigma_step_skin(grid.points, t_sigma, w.amplitude))
        elif method == "second-kind":
            rep = solve_second_kind(w, t_sigma, grid)
            values = rep.curve.values
            residual = rep.max_step_residual
        elif method == "resolvent":
            if isinstance(w, Sampled):
                raise UnsupportedCombination(
                    "the resolvent route requires a built-in waveform")
            try:
                rep = resolvent_for_waveform(w, t_sigma, grid.points)
            except ResolventHorizonError as exc:
                raise UnsupportedCombination(str(exc)) from exc
            values = rep.curve.values
            residual = rep.max_step_residual
        else:
            raise ConfigError(f"unknown method {method!r}")

    if residual is not None:
        meta["max_step_residual"] = f"{residual:.3e}"
    amp = w.amplitude if not isinstance(w, Sampled) else float(np.max(w.values))
    over_v = values / amp if amp > 0.0 else np.zeros_like(values)
    fh, close = _open_output(args)
    _write_comments(fh, meta)
    fh.write("t_s,Usigma_V,Usigma_over_V\n")
    for t, v, rel in zip(grid.points, values, over_v):
        fh.write(f"{_fmt(t)},{_fmt(v)},{_fmt(rel)}\n")
    if close:
        fh.close()
    return EXIT_OK


def _parse_list(text, parser=float):
    return [parser(tok) for tok in str(text).split(",") if tok.strip()]


def cmd_tdelta(args) -> int:
    cfg = _load_config(args.config) if args.config else {}
    t_sigma, _, _, _ = _time_scales(args, cfg)
    if t_sigma is None:
        raise ConfigError("tdelta needs t_sigma (line spec or --t-sigma)")
    deltas = _parse_list(_setting(args, cfg, "deltas", ("deltas",),
                                  "0.05,0.1,0.2,0.3"))
    t0_list = _parse_list(_setting(args, cfg, "t0_list", ("t0_list",)) or "",
                          parse_quantity)
    if not t0_list:
        t0_list = [r * t_sigma for r in (1e-3, 1e-2, 1e-1, 1.0)]
    horizon = _setting(args, cfg, "horizon", ("horizon",))
    horizon = parse_quantity(horizon) if horizon is not None else None
    rows = sweep_t_delta(t0_list, deltas, t_sigma, horizon)
    fh, close = _open_output(args)
    _write_comments(fh, {"t_sigma_s": _fmt(t_sigma), "method": "second-kind"})
    fh.write("t_0_s,delta,t_delta_s\n")
    reached = 0
    for row in rows:
        if row.t_delta is None:
            fh.write(f"{_fmt(row.t_0)},{_fmt(row.delta)},unreached\n")
        else:
            fh.write(f"{_fmt(row.t_0)},{_fmt(row.delta)},{_fmt(row.t_delta)}\n")
            reached += 1
    if close:
        fh.close()
    return EXIT_OK if reached else EXIT_VALIDATION


def cmd_figure1(args) -> int:
    cfg = _load_config(args.config) if args.config else {}
    t_sigma, _, _, _ = _time_scales(args, cfg)
    if t_sigma is None:
        t_sigma = 1.0  # ratios and normalized columns: the scale cancels
    ratios = _parse_list(_setting(args, cfg, "ratios", ("ratios",),
                                  "1e-3,1e-2,1e-1,1"))
    n = int(_setting(args, cfg, "n", ("grid", "n"), 1024))
    t_max = _setting(args, cfg, "t_max", ("grid", "t_max"))
    t_max = parse_quantity(t_max) if t_max is not None else 2.0 * t_sigma
    blocks = figure1_data(ratios, TimeGrid.uniform(n, t_max), t_sigma)
    fh, close = _open_output(args)
    _write_comments(fh, {"t_sigma_s": _fmt(t_sigma), "n_points": n + 1})
    fh.write("t_over_tsigma,F_over_V,Usigma_resolvent,Usigma_numeric\n")
    for blk in blocks:
        fh.write(f"# t0_over_tsigma: {blk.t0_over_tsigma:g}\n")
        for row in zip(blk.t_over_tsigma, blk.f_over_v,
                       blk.usigma_resolvent, blk.usigma_numeric):
            fh.write(",".join(_fmt(v) for v in row) + "\n")
    if close:
        fh.close()
    return EXIT_OK


def cmd_validate(args) -> int:
    only = _parse_list(args.only, str) if args.only else None
    results = run_checks(only=only, t_sigma_error=args.inject_tsigma_error or 0.0)
    payload = [r.to_dict() for r in results]
    fh, close = _open_output(args)
    json.dump(payload, fh, indent=2)
    fh.write("\n")
    if close:
        fh.close()
    for r in results:
        print(f"{'PASS' if r.passed else 'FAIL'} {r.name}", file=sys.stderr)
    return EXIT_OK if all(r.passed for r in results) else EXIT_VALIDATION


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pulsedrop",
        description="Ohmic attenuation of monotone video pulses in "
                    "coaxial and stripline transmission lines.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--config", help="JSON config file; flags override it")
        p.add_argument("--output", help="write to this file instead of stdout")

    def add_line(p):
        p.add_argument("--r-outer", dest="r_outer", help="coax outer radius (e.g. 3mm)")
        p.add_argument("--r-inner", dest="r_inner", help="coax inner radius")
        p.add_argument("--gap", help="stripline electrode gap")
        p.add_argument("--conductivity", type=float, help="electrode conductivity, S/m")
        p.add_argument("--thickness", help="electrode thickness (e.g. 20um)")
        p.add_argument("--resistance-override", dest="resistance_override",
                       type=float, help="per-length resistance of both electrodes, ohm/m")

    def add_solver(p):
        p.add_argument("--t-sigma", dest="t_sigma", help="skin attenuation time, overrides the line")
        p.add_argument("--t-r", dest="t_r", help="resistive time constant, overrides the line")
        p.add_argument("--n", type=int, help="grid intervals (default 4096)")
        p.add_argument("--t-max", dest="t_max", help="grid end time")

    p = sub.add_parser("params", help="derive line constants")
    add_common(p)
    add_line(p)
    p.add_argument("--at", help="also classify the regime at this time")
    p.set_defaults(func=cmd_params)

    p = sub.add_parser("attenuate", help="attenuation curve U_sigma(t)")
    add_common(p)
    add_line(p)
    add_solver(p)
    p.add_argument("--waveform", help="step | trapezoid | <file.csv>")
    p.add_argument("--amplitude", type=float, help="drive amplitude, volts")
    p.add_argument("--rise-time", dest="rise_time", help="trapezoid rise time")
    p.add_argument("--regime", help="skin | resistive | auto")
    p.add_argument("--method", help="closed-form | second-kind | resolvent | auto")
    p.set_defaults(func=cmd_attenuate)

    p = sub.add_parser("tdelta", help="time for U_sigma/V to reach each delta")
    add_common(p)
    add_line(p)
    p.add_argument("--t-sigma", dest="t_sigma")
    p.add_argument("--deltas", help="comma list, e.g. 0.05,0.1,0.2,0.3")
    p.add_argument("--t0-list", dest="t0_list", help="comma list of rise times")
    p.add_argument("--horizon", help="search horizon (default 1e3 * t_sigma)")
    p.set_defaults(func=cmd_tdelta)

    p = sub.add_parser("figure1", help="attenuation tables for several rise-time ratios")
    add_common(p)
    add_line(p)
    p.add_argument("--t-sigma", dest="t_sigma")
    p.add_argument("--ratios", help="comma list of t0/t_sigma ratios")
    p.add_argument("--n", type=int)
    p.add_argument("--t-max", dest="t_max")
    p.set_defaults(func=cmd_figure1)

    p = sub.add_parser("validate", help="run the self-validation suite")
    add_common(p)
    p.add_argument("--only", help="comma list of check groups to run")
    p.add_argument("--inject-tsigma-error", dest="inject_tsigma_error", type=float,
                   help=argparse.SUPPRESS)  # test hook: perturb the cross-path check
    p.set_defaults(func=cmd_validate)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (UnsupportedCombination, UnsupportedWaveform) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except DeltaUnreachable as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
