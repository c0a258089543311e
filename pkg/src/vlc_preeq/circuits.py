"""LED equivalent circuit, second-order shelving equalizer, zero-pole matching
and component synthesis.

All corner frequencies are kept in Hz; every ``omega`` expression of the
circuit analysis is divided by ``2*pi`` here and nowhere else.

Note on units: the LED internal resistance enters as ``(r_l + 1)`` with the
``1`` taken as one ohm, exactly as the circuit model writes it. With the
usual ``r_l = 0.5`` this reproduces the tabulated corner frequencies.

An absent equalizer stage is never encoded as a huge resistance. Stage 1
absent means ``r1 is None`` (R1 -> infinity, the inductor branch is bypassed);
stage 2 absent means ``r2 == 0`` (C_e short-circuited).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .twoport import ScatteringMatrix

TWO_PI = 2.0 * math.pi


class PoleBelowZeroError(ValueError):
    """Requested equalizer pole lies below the zero it has to cancel."""


def _require_positive(**fields: float) -> None:
    bad = [k for k, v in fields.items() if not (v > 0 and math.isfinite(v))]
    if bad:
        raise ValueError(f"parameters must be finite and > 0: {', '.join(bad)}")


@dataclass(frozen=True)
class LedParams:
    """Second-order LED equivalent circuit (ohm, ohm, F, H)."""

    r_s: float
    r_l: float
    c_w: float
    l_b: float

    def __post_init__(self) -> None:
        _require_positive(r_s=self.r_s, r_l=self.r_l, c_w=self.c_w, l_b=self.l_b)


@dataclass(frozen=True)
class LedModel:
    params: LedParams
    r_g: float
    f_p1_led: float
    f_p2_led: float
    k_led: float
    swapped: bool = False


@dataclass(frozen=True)
class EqualizerParams:
    """Component values of the two-stage shelving equalizer.

    ``r1=None`` bypasses stage 1 (no ``l_e``); ``r2=0`` shorts stage 2 (no
    ``c_e``).
    """

    r1: float | None
    r2: float
    l_e: float | None = None
    c_e: float | None = None

    def __post_init__(self) -> None:
        if self.r2 < 0:
            raise ValueError("r2 must be >= 0")
        if self.r1 is not None:
            if self.l_e is None:
                raise ValueError("stage 1 present (r1 set) but l_e missing")
            _require_positive(r1=self.r1, l_e=self.l_e)
        if self.r2 > 0:
            if self.c_e is None:
                raise ValueError("stage 2 present (r2 > 0) but c_e missing")
            _require_positive(r2=self.r2, c_e=self.c_e)

    @property
    def stage1_present(self) -> bool:
        return self.r1 is not None

    @property
    def stage2_present(self) -> bool:
        return self.r2 > 0

    @classmethod
    def bypass(cls) -> "EqualizerParams":
        return cls(r1=None, r2=0.0)


@dataclass(frozen=True)
class EqualizerModel:
    params: EqualizerParams
    r_g: float
    f_z1: float | None
    f_p1_eq: float | None
    f_z2: float | None
    f_p2_eq: float | None
    k_eq: float

    @property
    def stage1_present(self) -> bool:
        return self.params.stage1_present

    @property
    def stage2_present(self) -> bool:
        return self.params.stage2_present


def derive_led_model(p: LedParams, r_g: float) -> LedModel:
    _require_positive(r_g=r_g)
    f1 = (p.r_l + 1.0) / (TWO_PI * p.c_w * p.r_l)
    f2 = (p.r_s + r_g) / (TWO_PI * p.l_b)
    k = 2.0 * p.r_l / ((p.r_s + r_g) * (p.r_l + 1.0))
    swapped = f1 > f2
    if swapped:
        f1, f2 = f2, f1
    return LedModel(p, r_g, f1, f2, k, swapped)


def led_s21(m: LedModel, f: float) -> complex:
    return m.k_led / ((1 + 1j * f / m.f_p1_led) * (1 + 1j * f / m.f_p2_led))


def derive_equalizer_model(p: EqualizerParams, r_g: float) -> EqualizerModel:
    _require_positive(r_g=r_g)
    k = 1.0
    f_z1 = f_p1 = f_z2 = f_p2 = None
    if p.stage1_present:
        f_z1 = p.r1 / (TWO_PI * p.l_e)
        f_p1 = (2.0 * p.r1 + r_g) / (2.0 * TWO_PI * p.l_e)
        k *= f_z1 / f_p1
    if p.stage2_present:
        f_z2 = 1.0 / (TWO_PI * p.c_e * p.r2)
        f_p2 = (2.0 * r_g + p.r2) / (2.0 * TWO_PI * r_g * p.c_e * p.r2)
        k *= f_z2 / f_p2
    return EqualizerModel(p, r_g, f_z1, f_p1, f_z2, f_p2, k)


def equalizer_s21(m: EqualizerModel, f: float) -> complex:
    h = complex(m.k_eq)
    if m.stage1_present:
        h *= (1 + 1j * f / m.f_z1) / (1 + 1j * f / m.f_p1_eq)
    if m.stage2_present:
        h *= (1 + 1j * f / m.f_z2) / (1 + 1j * f / m.f_p2_eq)
    return h


def equalizer_gain_from_components(p: EqualizerParams, r_g: float) -> float:
    """DC gain written directly in component values (independent of the
    zero/pole route): ``4 R_g R1 / (2 R1 + R_g) / (2 R_g + R2)``, with the
    absent-stage factors normalized to one."""
    k = 1.0
    if p.stage1_present:
        k *= 2.0 * p.r1 / (2.0 * p.r1 + r_g)
    if p.stage2_present:
        k *= 2.0 * r_g / (2.0 * r_g + p.r2)
    return k


def match_zeros_to_led(
    led: LedModel, r1: float | None, r2: float, r_g: float | None = None
) -> EqualizerParams:
    """Pick ``l_e`` and ``c_e`` so the equalizer zeros sit on the LED poles.

    ``l_e = r1 C_w r_L / (r_L + 1)`` and ``c_e = L_b / (r2 (R_s + R_g))``.
    """
    if r1 is not None:
        _require_positive(r1=r1)
    if r2 < 0:
        raise ValueError("r2 must be >= 0")
    r_g = led.r_g if r_g is None else r_g
    p = led.params
    if led.swapped:
        # circuit forms no longer map to (first, second) pole; use the poles
        l_e = None if r1 is None else r1 / (TWO_PI * led.f_p1_led)
        c_e = None if r2 == 0 else 1.0 / (TWO_PI * led.f_p2_led * r2)
    else:
        l_e = None if r1 is None else r1 * p.c_w * p.r_l / (p.r_l + 1.0)
        c_e = None if r2 == 0 else p.l_b / (r2 * (p.r_s + r_g))
    return EqualizerParams(r1=r1, r2=r2, l_e=l_e, c_e=c_e)


def synthesize_from_poles(
    x: float, y: float, led: LedModel, r_g: float | None = None
) -> EqualizerParams:
    """Component values that put the link poles at ``(x, y)`` Hz.

    ``x == f_p1_led`` bypasses stage 1 and ``y == f_p2_led`` shorts stage 2.
    """
    r_g = led.r_g if r_g is None else r_g
    if x < led.f_p1_led:
        raise PoleBelowZeroError(f"x = {x:.6g} Hz below LED pole {led.f_p1_led:.6g} Hz")
    if y < led.f_p2_led:
        raise PoleBelowZeroError(f"y = {y:.6g} Hz below LED pole {led.f_p2_led:.6g} Hz")
    r1 = None if x == led.f_p1_led else r_g / (2.0 * (x / led.f_p1_led - 1.0))
    r2 = 0.0 if y == led.f_p2_led else 2.0 * r_g * (y / led.f_p2_led - 1.0)
    return match_zeros_to_led(led, r1, r2, r_g)


def led_scattering(m: LedModel, f: float, s11: complex = 0j, s22: complex = 0j) -> ScatteringMatrix:
    """LED as a reciprocal two-port (S12 = S21); reflections default to matched."""
    s21 = led_s21(m, f)
    return ScatteringMatrix(s11, s21, s21, s22)


def equalizer_scattering(
    m: EqualizerModel, f: float, s11: complex = 0j, s22: complex = 0j
) -> ScatteringMatrix:
    s21 = equalizer_s21(m, f)
    return ScatteringMatrix(s11, s21, s21, s22)


def response_db(h: complex | np.ndarray) -> float | np.ndarray:
    return 20.0 * np.log10(np.abs(h))


def is_matched(led: LedModel, eq: EqualizerModel, rtol: float = 1e-6) -> bool:
    """True when every present equalizer zero sits on its LED pole."""
    ok = True
    if eq.stage1_present:
        ok &= abs(eq.f_z1 - led.f_p1_led) <= rtol * led.f_p1_led
    if eq.stage2_present:
        ok &= abs(eq.f_z2 - led.f_p2_led) <= rtol * led.f_p2_led
    return bool(ok)


__all__ = [
    "LedParams",
    "LedModel",
    "EqualizerParams",
    "EqualizerModel",
    "PoleBelowZeroError",
    "derive_led_model",
    "led_s21",
    "derive_equalizer_model",
    "equalizer_s21",
    "equalizer_gain_from_components",
    "match_zeros_to_led",
    "synthesize_from_poles",
    "led_scattering",
    "equalizer_scattering",
    "response_db",
    "is_matched",
]
