"""Command-line front end.

    vlc-preeq design   [--config FILE] [--h H] [--out PATH]
    vlc-preeq response [--config FILE] [--points N] [--fmax HZ] [--out PATH]
    vlc-preeq sweep    [--config FILE] [--out PATH]
    vlc-preeq validate [--config FILE] [--out PATH]
    vlc-preeq compare  [--config FILE] [--out PATH]

Exit status: 0 success, 1 validation threshold failure, 2 configuration error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass, field, fields, replace
from pathlib import Path

import numpy as np

from .bench import conventions, default_h_values, sweep_attenuation
from .circuits import (
    EqualizerParams,
    LedParams,
    derive_equalizer_model,
    derive_led_model,
    equalizer_s21,
    led_s21,
    response_db,
)
from .linkmodel import (
    GainConvention,
    IntegrationControl,
    LinkConfig,
    analytic_bandwidth,
    end_to_end_gain,
    link_response,
)
from .optimizer import GridSpec, design

POLE_NMSE_LIMIT = 0.03
CAPACITY_NMSE_LIMIT = 0.05

EXIT_OK, EXIT_THRESHOLD, EXIT_CONFIG = 0, 1, 2


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class SweepSettings:
    h_min: float = 1e-3
    h_max: float = 1.0
    steps: int = 30
    log_spacing: bool = True

    def h_values(self) -> list[float]:
        return default_h_values(self.h_min, self.h_max, self.steps, self.log_spacing)


@dataclass(frozen=True)
class RunConfig:
    led: LedParams = field(default_factory=lambda: LedParams(1.0, 0.5, 10.8e-9, 28.6e-9))
    link: LinkConfig = field(default_factory=LinkConfig)
    sweep: SweepSettings = field(default_factory=SweepSettings)
    integration: IntegrationControl = field(default_factory=IntegrationControl)
    grid: GridSpec = field(default_factory=GridSpec)


# flat JSON key -> (section, attribute)
_FIELDS = {
    "r_s": ("led", "r_s"),
    "r_l": ("led", "r_l"),
    "c_w": ("led", "c_w"),
    "l_b": ("led", "l_b"),
    **{f.name: ("link", f.name) for f in fields(LinkConfig)},
    "h_min": ("sweep", "h_min"),
    "h_max": ("sweep", "h_max"),
    "steps": ("sweep", "steps"),
    "log_spacing": ("sweep", "log_spacing"),
    "quad_rtol": ("integration", "rtol"),
    "quad_max_depth": ("integration", "max_depth"),
    "grid_points": ("grid", "points"),
    "grid_rtol": ("grid", "rtol"),
}
_SIGNED = {"k_pa_db", "k_lna_db", "n0_dbm_per_hz"}
_INTS = {"steps", "quad_max_depth", "grid_points"}


def _num_ok(v) -> bool:
    return isinstance(v, (int, float)) and not isinstance(v, bool) and math.isfinite(v)


def build_config(raw: dict) -> RunConfig:
    """Validate a flat mapping and fill unspecified fields with defaults."""
    if not isinstance(raw, dict):
        raise ConfigError("config must be a flat JSON object")
    unknown = sorted(set(raw) - set(_FIELDS))
    problems = [f"unknown field '{k}'" for k in unknown]

    for key, value in raw.items():
        if key in unknown:
            continue
        if key == "gain_convention":
            if value not in {c.value for c in GainConvention}:
                problems.append(f"gain_convention: expected 'power' or 'amplitude', got {value!r}")
        elif key == "log_spacing":
            if not isinstance(value, bool):
                problems.append("log_spacing: expected true/false")
        elif not _num_ok(value):
            problems.append(f"{key}: expected a finite number, got {value!r}")
        elif key in _INTS and int(value) != value:
            problems.append(f"{key}: expected an integer, got {value!r}")
        elif key not in _SIGNED and value <= 0:
            problems.append(f"{key}: must be > 0, got {value!r}")

    if not problems:
        sections: dict[str, dict] = {"led": {}, "link": {}, "sweep": {}, "integration": {}, "grid": {}}
        for key, value in raw.items():
            sec, attr = _FIELDS[key]
            sections[sec][attr] = int(value) if key in _INTS else value
        base = RunConfig()
        cfg = RunConfig(
            led=replace(base.led, **sections["led"]),
            link=replace(base.link, **sections["link"]),
            sweep=replace(base.sweep, **sections["sweep"]),
            integration=replace(base.integration, **sections["integration"]),
            grid=replace(base.grid, **sections["grid"]),
        )
        if not cfg.sweep.h_min < cfg.sweep.h_max:
            problems.append("h_min must be < h_max")
        if cfg.sweep.steps < 2:
            problems.append("steps must be >= 2")
        if cfg.grid.points < 3:
            problems.append("grid_points must be >= 3")
        if not problems:
            return cfg
    raise ConfigError("invalid configuration: " + "; ".join(problems))


def load_config(path: str | Path | None) -> RunConfig:
    if path is None:
        return RunConfig()
    text = Path(path).read_text()
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    return build_config(raw)


def _fmt(v) -> str:
    if isinstance(v, str):
        return v
    return f"{float(v):.11e}"


def write_csv(header: list[str], rows: list[list], out) -> None:
    w = csv.writer(out, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([_fmt(v) for v in r])


def _components(p: EqualizerParams) -> dict:
    return {
        "r1": "bypass" if p.r1 is None else p.r1,
        "l_e": "bypass" if p.l_e is None else p.l_e,
        "r2": "short" if p.r2 == 0 else p.r2,
        "c_e": "short" if p.c_e is None else p.c_e,
    }


def cmd_design(cfg: RunConfig, h: float | None = None) -> dict:
    link = cfg.link if h is None else cfg.link.with_h(h)
    led = derive_led_model(cfg.led, link.r_g)
    d = design(link, led)
    h1, h2 = d.thresholds
    return {
        "regime": d.regime.value,
        "h": link.h,
        "alpha": d.alpha,
        "thresholds": {"h1": h1, "h2": h2},
        "led": {"f_p1_hz": led.f_p1_led, "f_p2_hz": led.f_p2_led, "k_led": led.k_led},
        "poles_closed_hz": {"x": d.poles_closed.x, "y": d.poles_closed.y},
        "poles_refined_hz": {"x": d.poles_refined.x, "y": d.poles_refined.y},
        "poles_exact_root_hz": {"x": d.poles_root.x, "y": d.poles_root.y},
        "components_closed": _components(d.params),
        "components": _components(d.params_refined),
        "bandwidth_hz": analytic_bandwidth(d.poles_refined),
        "k_c": end_to_end_gain(link, led, d.poles_refined),
        "capacity_formula_bps": d.capacity_formula,
        "capacity_closed_bps": d.capacity_closed,
        "capacity_refined_bps": d.capacity_refined,
        "conventions": conventions(link),
    }


def cmd_response(cfg: RunConfig, points: int = 200, f_max: float = 1e10) -> tuple[list[str], list[list]]:
    if points < 2:
        raise ConfigError("points must be >= 2")
    if not f_max > 0:
        raise ConfigError("fmax must be > 0")
    led = derive_led_model(cfg.led, cfg.link.r_g)
    d = design(cfg.link, led)
    eq = derive_equalizer_model(d.params_refined, cfg.link.r_g)
    rows = []
    for f in np.geomspace(f_max * 1e-4, f_max, points):
        f = float(f)
        rows.append(
            [
                f,
                response_db(led_s21(led, f)),
                response_db(equalizer_s21(eq, f)),
                response_db(link_response(f, cfg.link, led, eq)),
            ]
        )
    return ["f_hz", "led_db", "eq_db", "link_db"], rows


def _sweep(cfg: RunConfig):
    led = derive_led_model(cfg.led, cfg.link.r_g)
    return sweep_attenuation(cfg.link, led, cfg.sweep.h_values(), cfg.grid)


SWEEP_COLUMNS = [
    "h",
    "regime",
    "x_closed",
    "y_closed",
    "x_refined",
    "y_refined",
    "x_oracle",
    "y_oracle",
    "c_formula",
    "c_closed",
    "c_refined",
    "c_oracle",
    "c_bce",
    "c_noeq",
    "bandwidth_opt",
]


def cmd_sweep(cfg: RunConfig) -> tuple[list[str], list[list]]:
    res = _sweep(cfg)
    rows = [[r.as_dict()[c] for c in SWEEP_COLUMNS] for r in res.rows]
    return SWEEP_COLUMNS, rows


def cmd_validate(cfg: RunConfig) -> tuple[dict, int]:
    res = _sweep(cfg)
    pole_ok = res.pole_nmse <= POLE_NMSE_LIMIT
    cap_ok = res.capacity_nmse <= CAPACITY_NMSE_LIMIT
    report = {
        "pole_nmse": res.pole_nmse,
        "pole_nmse_limit": POLE_NMSE_LIMIT,
        "pole_pass": pole_ok,
        "capacity_nmse": res.capacity_nmse,
        "capacity_nmse_limit": CAPACITY_NMSE_LIMIT,
        "capacity_pass": cap_ok,
        "capacity_nmse_at_closed_poles": res.capacity_nmse_at_poles,
        "passed": pole_ok and cap_ok,
        "h_values": [r.h for r in res.rows],
        "metadata": res.metadata,
    }
    return report, EXIT_OK if report["passed"] else EXIT_THRESHOLD


def cmd_compare(cfg: RunConfig) -> tuple[list[str], list[list]]:
    res = _sweep(cfg)
    header = ["h", "regime", "c_cce", "c_bce", "c_noeq", "c_oracle", "bandwidth_cce_hz"]
    rows = [[r.h, r.regime.value, r.c_refined, r.c_bce, r.c_noeq, r.c_oracle, r.bandwidth_opt] for r in res.rows]
    return header, rows


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    write_csv(header, rows, buf)
    return buf.getvalue()


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="flat JSON config; missing fields take defaults")
    common.add_argument("--out", help="write output here instead of stdout")

    parser = argparse.ArgumentParser(
        prog="vlc-preeq", description="Capacity-optimal analog pre-equalizer design for IMDD links."
    )
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("design", parents=[common], help="optimal design at one attenuation (JSON)")
    p.add_argument("--h", type=float, help="override the channel attenuation")
    p = sub.add_parser("response", parents=[common], help="LED / equalizer / link responses (CSV)")
    p.add_argument("--points", type=int, default=200)
    p.add_argument("--fmax", type=float, default=1e10)
    sub.add_parser("sweep", parents=[common], help="attenuation sweep with oracle (CSV)")
    sub.add_parser("validate", parents=[common], help="NMSE of closed forms vs oracle (JSON)")
    sub.add_parser("compare", parents=[common], help="CCE vs BCE vs no equalizer (CSV)")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config)
        status = EXIT_OK
        if args.command == "design":
            if args.h is not None and not args.h > 0:
                raise ConfigError("h must be > 0")
            text = json.dumps(cmd_design(cfg, args.h), indent=2) + "\n"
        elif args.command == "response":
            text = _csv_text(*cmd_response(cfg, args.points, args.fmax))
        elif args.command == "sweep":
            text = _csv_text(*cmd_sweep(cfg))
        elif args.command == "validate":
            report, status = cmd_validate(cfg)
            text = json.dumps(report, indent=2) + "\n"
        else:
            text = _csv_text(*cmd_compare(cfg))
    except (ConfigError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    _emit(text, args.out)
    return status


if __name__ == "__main__":
    raise SystemExit(main())
