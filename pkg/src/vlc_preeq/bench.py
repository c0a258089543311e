"""Benchmark schemes and attenuation sweeps.

Three pole placements are compared at every attenuation:

* CCE: capacity-centric, the refined optimizer output;
* BCE: bandwidth-centric, both link poles pinned at ``f_p2_led``;
* NoEqualizer: the bare LED poles.

A grid-search oracle runs alongside so the closed forms can be scored by
NMSE.
"""

from __future__ import annotations

import enum
from dataclasses import asdict, dataclass, field
from typing import Sequence

import numpy as np

from .circuits import LedModel
from .linkmodel import LinkConfig, LinkPoles, alpha, analytic_bandwidth, capacity_from_poles
from .optimizer import (
    GridSpec,
    Regime,
    design,
    grid_search_optimum,
    nmse,
    threshold_h1,
    threshold_h2,
)


class Scheme(str, enum.Enum):
    CCE = "CCE"
    BCE = "BCE"
    NO_EQUALIZER = "NoEqualizer"


def scheme_poles(s: Scheme | str, cfg: LinkConfig, led: LedModel) -> LinkPoles:
    s = Scheme(s)
    if s is Scheme.BCE:
        return LinkPoles(led.f_p2_led, led.f_p2_led)
    if s is Scheme.NO_EQUALIZER:
        return LinkPoles(led.f_p1_led, led.f_p2_led)
    return design(cfg, led).poles_refined


@dataclass(frozen=True)
class SweepRow:
    h: float
    regime: Regime
    x_closed: float
    y_closed: float
    x_refined: float
    y_refined: float
    x_oracle: float
    y_oracle: float
    c_formula: float
    c_closed: float
    c_refined: float
    c_oracle: float
    c_bce: float
    c_noeq: float
    bandwidth_opt: float

    def as_dict(self) -> dict:
        d = asdict(self)
        d["regime"] = self.regime.value
        return d


@dataclass(frozen=True)
class SweepResult:
    rows: list[SweepRow]
    pole_nmse: float
    capacity_nmse: float
    capacity_nmse_at_poles: float
    metadata: dict = field(default_factory=dict)

    def column(self, name: str) -> np.ndarray:
        return np.array([getattr(r, name) for r in self.rows], dtype=float)


def default_h_values(h_min: float = 1e-3, h_max: float = 1.0, steps: int = 30, log_spacing: bool = True) -> list[float]:
    if log_spacing:
        return [float(v) for v in np.geomspace(h_min, h_max, steps)]
    return [float(v) for v in np.linspace(h_min, h_max, steps)]


def conventions(cfg: LinkConfig) -> dict:
    return {
        "gain_convention": cfg.gain_convention.value,
        "k_pa": cfg.k_pa,
        "k_lna": cfg.k_lna,
        "n0_w_per_hz": cfg.n0,
        "mu": cfg.mu,
    }


def sweep_attenuation(
    cfg: LinkConfig, led: LedModel, h_values: Sequence[float], grid: GridSpec | None = None
) -> SweepResult:
    """One row per attenuation plus NMSE of the closed forms against the oracle.

    Pole NMSE is taken over the stacked ``(x..., y...)`` series; capacity NMSE
    scores the regime's closed-form capacity expression.
    """
    h_values = [float(h) for h in h_values]
    if not h_values:
        raise ValueError("empty h sweep")
    if any(h <= 0 for h in h_values):
        raise ValueError("attenuations must be positive")
    if any(b < a for a, b in zip(h_values, h_values[1:])):
        raise ValueError("attenuations must be sorted ascending")

    bce = scheme_poles(Scheme.BCE, cfg, led)
    noeq = scheme_poles(Scheme.NO_EQUALIZER, cfg, led)
    rows = []
    for h in h_values:
        c = cfg.with_h(h)
        d = design(c, led)
        p_or, c_or = grid_search_optimum(c, led, grid)
        rows.append(
            SweepRow(
                h=h,
                regime=d.regime,
                x_closed=d.poles_closed.x,
                y_closed=d.poles_closed.y,
                x_refined=d.poles_refined.x,
                y_refined=d.poles_refined.y,
                x_oracle=p_or.x,
                y_oracle=p_or.y,
                c_formula=d.capacity_formula,
                c_closed=d.capacity_closed,
                c_refined=d.capacity_refined,
                c_oracle=c_or,
                c_bce=capacity_from_poles(bce, d.alpha),
                c_noeq=capacity_from_poles(noeq, d.alpha),
                bandwidth_opt=analytic_bandwidth(d.poles_refined),
            )
        )

    def col(name):
        return np.array([getattr(r, name) for r in rows])

    pole_ref = np.concatenate([col("x_oracle"), col("y_oracle")])
    pole_cand = np.concatenate([col("x_closed"), col("y_closed")])
    c_oracle = col("c_oracle")
    meta = conventions(cfg)
    meta["thresholds"] = {"h1": threshold_h1(cfg, led), "h2": threshold_h2(cfg, led)}
    if np.all(c_oracle == 0):
        cap_nmse = cap_nmse_poles = float("nan")
    else:
        cap_nmse = nmse(c_oracle, col("c_formula"))
        cap_nmse_poles = nmse(c_oracle, col("c_closed"))
    return SweepResult(rows, nmse(pole_ref, pole_cand), cap_nmse, cap_nmse_poles, meta)


def symmetric_path(led: LedModel, points: int = 200, span: float = 20.0) -> list[LinkPoles]:
    return [LinkPoles(float(v), float(v)) for v in np.geomspace(led.f_p2_led, span * led.f_p2_led, points)]


def capacity_bandwidth_curve(
    cfg: LinkConfig, led: LedModel, pole_path: Sequence[LinkPoles] | None = None
) -> list[tuple[float, float]]:
    """(bandwidth, capacity) pairs along a pole path; symmetric by default."""
    path = symmetric_path(led) if pole_path is None else pole_path
    a = alpha(cfg, led)
    return [(analytic_bandwidth(p), capacity_from_poles(p, a)) for p in path]


def capacity_at_bandwidth(cfg: LinkConfig, led: LedModel, bandwidth: float) -> float:
    """Capacity of a symmetric-pole link with the given noise bandwidth."""
    x = 4.0 * bandwidth / np.pi
    return capacity_from_poles(LinkPoles(x, x), alpha(cfg, led))


def anchor_gaps(cfg: LinkConfig, led: LedModel, grid: GridSpec | None = None) -> dict:
    """Capacity gains that are sensitive to the gain / mu conventions.

    * ``gap_h0.4`` and ``gap_h0.04``: optimum minus no-equalizer capacity;
    * ``gain_vs_800MHz``: optimum at the configured ``h`` minus a symmetric
      link whose noise bandwidth is 800 MHz (baseline pole layout assumed).
    """
    out = {"conventions": conventions(cfg)}
    noeq = scheme_poles(Scheme.NO_EQUALIZER, cfg, led)
    for h in (0.4, 0.04):
        c = cfg.with_h(h)
        _, c_or = grid_search_optimum(c, led, grid)
        out[f"gap_h{h}"] = c_or - capacity_from_poles(noeq, alpha(c, led))
    _, c_opt = grid_search_optimum(cfg, led, grid)
    out["gain_vs_800MHz"] = c_opt - capacity_at_bandwidth(cfg, led, 800e6)
    out["baseline_800MHz_assumption"] = "symmetric poles x = y = 4 B / pi"
    return out
