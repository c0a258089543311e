"""Capacity-optimal placement of the equalized link poles.

Three regimes, split by the channel attenuation ``h``:

* ``h <= h2``       no equalizer; the LED poles are left as they are;
* ``h2 < h < h1``   first-order equalizer, ``y = f_p2_led``, ``x`` moves;
* ``h >= h1``       both poles lifted together, ``x = y``.

The closed forms use the ``e``-approximations of the stationarity roots.
``refine_design`` polishes them against the exact objective and
``grid_search_optimum`` is an independent brute-force oracle.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace
from typing import Sequence

import numpy as np

from .circuits import EqualizerParams, LedModel, synthesize_from_poles
from .linkmodel import (
    E,
    LN2,
    PI,
    LinkConfig,
    LinkPoles,
    alpha,
    capacity_from_poles,
    capacity_xy,
)
from .numerics import bisect_newton, golden_section_max


class Regime(str, enum.Enum):
    NO_EQUALIZER = "NoEqualizer"
    FIRST_ORDER = "FirstOrder"
    SYMMETRIC = "Symmetric"


@dataclass(frozen=True)
class LogRoot:
    """Root ``u > 1`` of ``ln u = k (u - 1) / u`` and its exp-approximation."""

    k: float
    u: float
    residual: float
    approx: float

    @property
    def approx_rel_error(self) -> float:
        return abs(self.approx - self.u) / self.u


def solve_log_equation(k: float) -> LogRoot:
    if not k > 1:
        raise ValueError("k must be > 1")

    def g(u: float) -> float:
        return math.log(u) - k * (u - 1.0) / u

    def dg(u: float) -> float:
        return 1.0 / u - k / (u * u)

    # g < 0 on (1, root) with its minimum at u = k; g(e^k) = k e^-k > 0
    u = bisect_newton(g, dg, k, math.exp(k))
    return LogRoot(k, u, abs(g(u)), math.exp(k - k / math.exp(k)))


def _gain_product(cfg: LinkConfig) -> float:
    # K_PA R_L R_P K_LNA mu, i.e. everything in alpha except h
    return cfg.k_pa * cfg.resp_led * cfg.resp_pd * cfg.k_lna * cfg.mu


def threshold_h1(cfg: LinkConfig, led: LedModel) -> float:
    """Attenuation at which the symmetric optimum reaches ``f_p2_led``."""
    p = led.params
    num = 2.0 * math.sqrt(2.0 * cfg.n0) * PI**3 * E**3 * p.c_w * p.l_b
    return num * led.f_p2_led**2.5 / _gain_product(cfg)


def threshold_h2(cfg: LinkConfig, led: LedModel) -> float:
    """Attenuation at which the first-order optimum falls to ``f_p1_led``."""
    p = led.params
    num = 4.0 * PI**3 * E**2 * math.sqrt(cfg.n0) * p.c_w * p.l_b
    return num * led.f_p1_led**1.5 * led.f_p2_led / _gain_product(cfg)


def classify_regime(h: float, h1: float, h2: float) -> Regime:
    if h <= h2:
        return Regime.NO_EQUALIZER
    if h < h1:
        return Regime.FIRST_ORDER
    return Regime.SYMMETRIC


@dataclass(frozen=True)
class DesignResult:
    """Optimal design at one attenuation.

    ``capacity_formula`` is the regime's closed-form capacity expression;
    ``capacity_closed`` is the exact objective evaluated at ``poles_closed``.
    ``poles_root`` repeats the closed form with the exact transcendental root
    in place of the ``e`` approximation. Refined fields are ``None`` until
    :func:`refine_design` runs.
    """

    regime: Regime
    h: float
    alpha: float
    thresholds: tuple[float, float]
    poles_closed: LinkPoles
    poles_root: LinkPoles
    params: EqualizerParams
    capacity_formula: float
    capacity_closed: float
    poles_refined: LinkPoles | None = None
    params_refined: EqualizerParams | None = None
    capacity_refined: float | None = None
    x_unclipped: float | None = None


def symmetric_pole(alpha_val: float) -> float:
    return (2.0 * alpha_val) ** 0.2 / E


def first_order_pole(alpha_val: float, f_p2_led: float) -> float:
    return alpha_val ** (1.0 / 3.0) / (E * f_p2_led ** (2.0 / 3.0))


def closed_form_design(cfg: LinkConfig, led: LedModel) -> DesignResult:
    a = alpha(cfg, led)
    h1, h2 = threshold_h1(cfg, led), threshold_h2(cfg, led)
    regime = classify_regime(cfg.h, h1, h2)
    f1, f2 = led.f_p1_led, led.f_p2_led
    raw = None

    if regime is Regime.SYMMETRIC:
        x = y = symmetric_pole(a)
        c_formula = 5.0 * PI * (2.0 * a) ** 0.2 / (8.0 * E * LN2)
        u = solve_log_equation(5.0).u
        xr = (2.0 * a / (u - 1.0)) ** 0.2
        root = LinkPoles(xr, xr)
    elif regime is Regime.FIRST_ORDER:
        raw = first_order_pole(a, f2)
        x, y = min(max(raw, f1), f2), f2
        c_formula = 3.0 * PI / (4.0 * LN2) * raw
        u = solve_log_equation(3.0).u
        xr = (a / (f2 * f2 * (u - 1.0))) ** (1.0 / 3.0)
        root = LinkPoles(min(max(xr, f1), f2), f2)
    else:
        x, y = f1, f2
        c_formula = capacity_from_poles(LinkPoles(f1, f2), a)
        root = LinkPoles(f1, f2)

    poles = LinkPoles(x, y)
    return DesignResult(
        regime=regime,
        h=cfg.h,
        alpha=a,
        thresholds=(h1, h2),
        poles_closed=poles,
        poles_root=root,
        params=synthesize_from_poles(x, y, led, cfg.r_g),
        capacity_formula=c_formula,
        capacity_closed=capacity_from_poles(poles, a),
        x_unclipped=raw,
    )


def refine_design(cfg: LinkConfig, led: LedModel, closed: DesignResult, rtol: float = 1e-8) -> DesignResult:
    """Maximize the exact objective inside the closed form's regime."""
    a = closed.alpha
    f1, f2 = led.f_p1_led, led.f_p2_led

    if closed.regime is Regime.SYMMETRIC:
        x, c = golden_section_max(
            lambda t: capacity_from_poles(LinkPoles(t, t), a), f2, 100.0 * closed.poles_closed.x, rtol
        )
        poles = LinkPoles(x, x)
    elif closed.regime is Regime.FIRST_ORDER:
        x, c = golden_section_max(lambda t: capacity_from_poles(LinkPoles(t, f2), a), f1, f2, rtol)
        poles = LinkPoles(x, f2)
    else:
        poles, c = closed.poles_closed, closed.capacity_closed

    if c < closed.capacity_closed:
        poles, c = closed.poles_closed, closed.capacity_closed
    params = closed.params if poles == closed.poles_closed else synthesize_from_poles(
        poles.x, poles.y, led, cfg.r_g
    )
    return replace(closed, poles_refined=poles, params_refined=params, capacity_refined=c)


def design(cfg: LinkConfig, led: LedModel) -> DesignResult:
    return refine_design(cfg, led, closed_form_design(cfg, led))


@dataclass(frozen=True)
class GridSpec:
    points: int = 200
    rtol: float = 1e-6
    max_sweeps: int = 500


def grid_search_optimum(
    cfg: LinkConfig, led: LedModel, grid: GridSpec | None = None
) -> tuple[LinkPoles, float]:
    """Brute-force maximizer of the capacity over the feasible pole quadrant.

    A log-spaced coarse grid picks the starting cell; alternating golden-section
    line searches in x and y then refine it. Equal maxima resolve to the lowest
    x, then the lowest y.
    """
    grid = grid or GridSpec()
    a = alpha(cfg, led)
    f1, f2 = led.f_p1_led, led.f_p2_led
    if a == 0.0:
        return LinkPoles(f1, f2), 0.0

    top = max(10.0 * symmetric_pole(a), 10.0 * f2)
    xs = np.geomspace(f1, top, grid.points)
    ys = np.geomspace(f2, top, grid.points)
    z = capacity_xy(xs[:, None], ys[None, :], a)
    i, j = np.unravel_index(int(np.argmax(z)), z.shape)
    x, y = float(xs[i]), float(ys[j])
    c = float(z[i, j])

    step = xs[1] / xs[0]
    for _ in range(grid.max_sweeps):
        x_old, y_old = x, y
        x, c = golden_section_max(
            lambda t: capacity_from_poles(LinkPoles(t, y), a),
            max(f1, x / step),
            min(top, x * step),
            grid.rtol * 1e-2,
        )
        y, c = golden_section_max(
            lambda t: capacity_from_poles(LinkPoles(x, t), a),
            max(f2, y / step),
            min(top, y * step),
            grid.rtol * 1e-2,
        )
        if abs(x - x_old) <= grid.rtol * x and abs(y - y_old) <= grid.rtol * y:
            break
    return LinkPoles(x, y), c


def nmse(reference: Sequence[float], candidate: Sequence[float]) -> float:
    """Normalized mean square error ``sum((c - r)^2) / sum(r^2)``."""
    r = np.asarray(reference, dtype=float)
    c = np.asarray(candidate, dtype=float)
    if r.shape != c.shape:
        raise ValueError(f"length mismatch: {r.shape} vs {c.shape}")
    if r.size == 0:
        raise ValueError("empty series")
    den = float(np.sum(r * r))
    if den == 0.0:
        raise ValueError("reference series is identically zero")
    return float(np.sum((c - r) ** 2)) / den


def symmetric_components_circuit_form(cfg: LinkConfig, led: LedModel) -> dict[str, float]:
    """Component values of the symmetric design written in circuit terms.

    Independent of :func:`synthesize_from_poles`; used to cross-check it.
    """
    p = led.params
    rg, a2 = cfg.r_g, (2.0 * alpha(cfg, led)) ** 0.2
    den1 = 4.0 * PI * p.c_w * p.r_l * a2 - 2.0 * E * (p.r_l + 1.0)
    return {
        "r1": E * rg * (p.r_l + 1.0) / den1,
        "l_e": E * rg * p.c_w * p.r_l / den1,
        "r2": 4.0 * PI * rg * p.l_b / (p.r_s + rg) * a2 / E - 2.0 * rg,
        "c_e": E * p.l_b / (4.0 * PI * rg * p.l_b * a2 - 2.0 * E * rg * (p.r_s + rg)),
    }


def first_order_components_circuit_form(cfg: LinkConfig, led: LedModel) -> dict[str, float]:
    """Component values of the (unclipped) first-order design in circuit terms."""
    p = led.params
    rg, a3 = cfg.r_g, alpha(cfg, led) ** (1.0 / 3.0)
    rsg = (p.r_s + rg) ** (2.0 / 3.0)
    den = a3 * (2.0 * PI * p.l_b) ** (2.0 / 3.0) * 2.0 * PI * p.c_w * p.r_l - E * rsg * (p.r_l + 1.0)
    return {
        "r1": 0.5 * rg * E * rsg * (p.r_l + 1.0) / den,
        "l_e": 0.5 * E * p.c_w * p.r_l * rg * rsg / den,
        "r2": 0.0,
    }
