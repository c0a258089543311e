"""End-to-end IMDD link: frequency response, noise-equivalent bandwidth,
DC channel coefficient and capacity.

The capacity used throughout is the IMDD lower bound

    C = B/2 * log2( K_C^2 mu^2 / (8 pi e B N0) + 1 )

which, once the equalizer zeros cancel the LED poles, collapses to a function
of the two surviving link poles ``(x, y)`` and one aggregate ``alpha``:

    C = pi/4 * x y / (x + y) * log2( alpha (x + y) / (x^3 y^3) + 1 ).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace
from typing import Callable

import numpy as np

from .circuits import (
    EqualizerModel,
    LedModel,
    equalizer_scattering,
    equalizer_s21,
    is_matched,
    led_scattering,
    led_s21,
)
from .numerics import adaptive_simpson
from .twoport import ScatteringMatrix, cascade, forward_gain, scattering_to_transfer

PI = math.pi
E = math.e
LN2 = math.log(2.0)


class GainConvention(str, enum.Enum):
    POWER = "power"  # 10**(dB/10)
    AMPLITUDE = "amplitude"  # 10**(dB/20)


class ZeroPoleMismatchError(ValueError):
    """Equalizer zeros do not cancel the LED poles."""


def db_to_linear(db: float, convention: GainConvention | str = GainConvention.POWER) -> float:
    convention = GainConvention(convention)
    return 10.0 ** (db / (10.0 if convention is GainConvention.POWER else 20.0))


def dbm_per_hz_to_w_per_hz(dbm: float) -> float:
    return 10.0 ** (dbm / 10.0) * 1e-3


@dataclass(frozen=True)
class LinkConfig:
    """Front-end gains, responsivities, channel attenuation and noise level.

    Gains are given in dB and linearized through ``gain_convention``; the
    noise density is in dBm/Hz. ``mu`` is the optical intensity constraint
    scale entering the capacity bound.
    """

    r_g: float = 50.0
    k_pa_db: float = 30.0
    k_lna_db: float = 30.0
    gain_convention: GainConvention = GainConvention.POWER
    resp_led: float = 1.0
    resp_pd: float = 1.0
    h: float = 0.5
    n0_dbm_per_hz: float = -50.0
    mu: float = 1.0

    def __post_init__(self) -> None:
        object.__setattr__(self, "gain_convention", GainConvention(self.gain_convention))

    @property
    def k_pa(self) -> float:
        return db_to_linear(self.k_pa_db, self.gain_convention)

    @property
    def k_lna(self) -> float:
        return db_to_linear(self.k_lna_db, self.gain_convention)

    @property
    def n0(self) -> float:
        """Noise power spectral density in W/Hz."""
        return dbm_per_hz_to_w_per_hz(self.n0_dbm_per_hz)

    @property
    def front_end_gain(self) -> float:
        """``R_L h R_P K_LNA K_PA``: everything but the LED and equalizer."""
        return self.resp_led * self.h * self.resp_pd * self.k_lna * self.k_pa

    def with_h(self, h: float) -> "LinkConfig":
        return replace(self, h=h)


@dataclass(frozen=True)
class LinkPoles:
    x: float
    y: float

    def __post_init__(self) -> None:
        if not (self.x > 0 and self.y > 0):
            raise ValueError(f"link poles must be positive, got ({self.x}, {self.y})")


def link_poles(led: LedModel, eq: EqualizerModel) -> LinkPoles:
    """Surviving poles of a zero-pole matched chain; an absent stage leaves the
    corresponding LED pole uncompensated."""
    x = eq.f_p1_eq if eq.stage1_present else led.f_p1_led
    y = eq.f_p2_eq if eq.stage2_present else led.f_p2_led
    return LinkPoles(x, y)


def link_response(f: float, cfg: LinkConfig, led: LedModel, eq: EqualizerModel) -> complex:
    """Closed-form H(f) of a matched chain: DC gain over the two link poles."""
    if not is_matched(led, eq):
        raise ZeroPoleMismatchError("equalizer zeros do not match the LED poles")
    poles = link_poles(led, eq)
    k = cfg.front_end_gain * eq.k_eq * led.k_led
    return k / ((1j * f / poles.x + 1) * (1j * f / poles.y + 1))


def link_response_cascade(
    f: float,
    cfg: LinkConfig,
    led: LedModel,
    eq: EqualizerModel,
    led_reflections: tuple[complex, complex] = (0j, 0j),
    eq_reflections: tuple[complex, complex] = (0j, 0j),
) -> complex:
    """H(f) through the full transfer-matrix product Eq -> PA -> LED.

    Works for any equalizer (matched or not). The ideal unilateral PA blocks
    the reflection terms from reaching T11, so the result is insensitive to
    the reflection coefficients supplied.
    """
    stages = [
        scattering_to_transfer(equalizer_scattering(eq, f, *eq_reflections)),
        scattering_to_transfer(ScatteringMatrix.amplifier(cfg.k_pa)),
        scattering_to_transfer(led_scattering(led, f, *led_reflections)),
    ]
    s21 = forward_gain(cascade(stages))
    return cfg.resp_led * cfg.h * cfg.resp_pd * cfg.k_lna * s21


def analytic_bandwidth(poles: LinkPoles) -> float:
    """Noise-equivalent bandwidth of a two-pole low-pass, in Hz."""
    return 0.5 * PI * poles.x * poles.y / (poles.x + poles.y)


@dataclass(frozen=True)
class IntegrationControl:
    rtol: float = 1e-6
    max_depth: int = 40
    span: float = 1e3  # integrate to span * max(pole), analytic tail beyond


def noise_bandwidth(
    power_gain: Callable[[float], float],
    f_max: float,
    peak: float,
    tail_coeff: float = 0.0,
    rtol: float = 1e-6,
    max_depth: int = 40,
) -> float:
    """``(1/peak) * integral_0^inf power_gain df``.

    ``[0, f_max]`` is integrated by adaptive Simpson; beyond ``f_max`` the
    integrand is taken as ``tail_coeff / f**4`` and integrated analytically.
    """
    # scale of the answer sets the absolute tolerance
    rough = adaptive_simpson(power_gain, 0.0, f_max, tol=1e-2 * peak * f_max, max_depth=max_depth)
    tol = rtol * max(rough, 1e-300) * 0.1
    body = adaptive_simpson(power_gain, 0.0, f_max, tol=tol, max_depth=max_depth)
    tail = tail_coeff / (3.0 * f_max**3)
    return (body + tail) / peak


def numeric_bandwidth_from_poles(poles: LinkPoles, control: IntegrationControl | None = None) -> float:
    control = control or IntegrationControl()
    x2, y2 = poles.x**2, poles.y**2

    def g(f: float) -> float:
        f2 = f * f
        return 1.0 / ((1.0 + f2 / x2) * (1.0 + f2 / y2))

    return noise_bandwidth(
        g,
        control.span * max(poles.x, poles.y),
        1.0,
        tail_coeff=x2 * y2,
        rtol=control.rtol,
        max_depth=control.max_depth,
    )


def numeric_bandwidth(
    cfg: LinkConfig,
    led: LedModel,
    eq: EqualizerModel,
    control: IntegrationControl | None = None,
) -> float:
    """Noise-equivalent bandwidth of |H(f)|^2 for an LED + equalizer chain.

    The integrand is the full product of LED and equalizer responses, not the
    reduced two-pole form, so unmatched chains are handled too. The peak of
    |H|^2 is located on a log-spaced probe that includes DC.
    """
    control = control or IntegrationControl()
    k = cfg.front_end_gain

    def g(f: float) -> float:
        return abs(k * led_s21(led, f) * equalizer_s21(eq, f)) ** 2

    corners = [led.f_p1_led, led.f_p2_led]
    corners += [v for v in (eq.f_z1, eq.f_p1_eq, eq.f_z2, eq.f_p2_eq) if v is not None]
    f_max = control.span * max(corners)
    probe = np.geomspace(min(corners) * 1e-3, f_max, 2001)
    peak = max(g(0.0), max(g(f) for f in probe))
    return noise_bandwidth(
        g,
        f_max,
        peak,
        tail_coeff=_tail_coeff(led, eq),
        rtol=control.rtol,
        max_depth=control.max_depth,
    )


def _tail_coeff(led: LedModel, eq: EqualizerModel) -> float:
    # |H(f)|^2 / |H(0)|^2 -> (prod poles / prod zeros)^2 / f^4 as f -> inf
    c = led.f_p1_led * led.f_p2_led
    if eq.stage1_present:
        c *= eq.f_p1_eq / eq.f_z1
    if eq.stage2_present:
        c *= eq.f_p2_eq / eq.f_z2
    return c * c


def end_to_end_gain(cfg: LinkConfig, led: LedModel, poles: LinkPoles) -> float:
    """DC channel coefficient K_C of a matched chain with link poles ``poles``."""
    p = led.params
    return cfg.front_end_gain / (2.0 * PI**2 * p.c_w * p.l_b * poles.x * poles.y)


def alpha(cfg: LinkConfig, led: LedModel) -> float:
    """SNR aggregate of the reduced capacity objective (units Hz^5)."""
    p = led.params
    num = (cfg.front_end_gain * cfg.mu) ** 2
    return num / (4.0 * PI**2 * E * cfg.n0 * (2.0 * PI**2 * p.c_w * p.l_b) ** 2)


def capacity_from_bk(bandwidth: float, k_c: float, cfg: LinkConfig) -> float:
    if not bandwidth > 0:
        raise ValueError("bandwidth must be > 0")
    snr = k_c**2 * cfg.mu**2 / (8.0 * PI * E * bandwidth * cfg.n0)
    return 0.5 * bandwidth * math.log2(snr + 1.0)


def capacity_xy(x, y, alpha_val):
    """Reduced capacity objective in bit/s; numpy-broadcastable."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    s = x + y
    out = 0.25 * PI * x * y / s * np.log1p(alpha_val * s / (x**3 * y**3)) / LN2
    return out if out.ndim else float(out)


def capacity_from_poles(poles: LinkPoles, alpha_val: float) -> float:
    if alpha_val < 0:
        raise ValueError("alpha must be >= 0")
    x, y = poles.x, poles.y
    s = x + y
    return 0.25 * PI * x * y / s * math.log1p(alpha_val * s / (x**3 * y**3)) / LN2
