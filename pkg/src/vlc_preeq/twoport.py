"""Per-frequency 2x2 scattering / transfer matrix algebra for two-port chains.

A transfer matrix is built so that a chain of two-ports composes by plain
matrix multiplication in signal order::

    T = [[ 1/S21,  -S22/S21            ],
         [ S11/S21, (S12 S21 - S11 S22)/S21 ]]

and the forward transmission of the chain is ``1 / T11``.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from functools import reduce
from typing import Sequence

import numpy as np

DEGENERACY_TOL = 1e-12


class DegenerateNetworkError(ValueError):
    """The network has (numerically) no forward transmission."""


def _check_finite(*values: complex) -> None:
    for v in values:
        if not cmath.isfinite(v):
            raise ValueError(f"non-finite matrix entry: {v!r}")


@dataclass(frozen=True)
class ScatteringMatrix:
    s11: complex
    s12: complex
    s21: complex
    s22: complex

    def __post_init__(self) -> None:
        _check_finite(self.s11, self.s12, self.s21, self.s22)

    @classmethod
    def amplifier(cls, gain: complex) -> "ScatteringMatrix":
        """Ideal matched unilateral amplifier: only S21 is nonzero."""
        return cls(0j, 0j, complex(gain), 0j)

    @classmethod
    def through(cls) -> "ScatteringMatrix":
        return cls(0j, 1 + 0j, 1 + 0j, 0j)

    @classmethod
    def from_array(cls, a) -> "ScatteringMatrix":
        a = np.asarray(a, dtype=complex)
        return cls(a[0, 0], a[0, 1], a[1, 0], a[1, 1])

    def to_array(self) -> np.ndarray:
        return np.array([[self.s11, self.s12], [self.s21, self.s22]], dtype=complex)


@dataclass(frozen=True)
class TransferMatrix:
    t11: complex
    t12: complex
    t21: complex
    t22: complex

    def __post_init__(self) -> None:
        _check_finite(self.t11, self.t12, self.t21, self.t22)

    @classmethod
    def identity(cls) -> "TransferMatrix":
        return cls(1 + 0j, 0j, 0j, 1 + 0j)

    @classmethod
    def from_array(cls, a) -> "TransferMatrix":
        a = np.asarray(a, dtype=complex)
        return cls(a[0, 0], a[0, 1], a[1, 0], a[1, 1])

    def to_array(self) -> np.ndarray:
        return np.array([[self.t11, self.t12], [self.t21, self.t22]], dtype=complex)

    def __matmul__(self, other: "TransferMatrix") -> "TransferMatrix":
        return TransferMatrix(
            self.t11 * other.t11 + self.t12 * other.t21,
            self.t11 * other.t12 + self.t12 * other.t22,
            self.t21 * other.t11 + self.t22 * other.t21,
            self.t21 * other.t12 + self.t22 * other.t22,
        )


def _is_degenerate(pivot: complex, *entries: complex) -> bool:
    scale = max(abs(e) for e in entries)
    return abs(pivot) <= DEGENERACY_TOL * max(scale, 1.0)


def scattering_to_transfer(s: ScatteringMatrix) -> TransferMatrix:
    if _is_degenerate(s.s21, s.s11, s.s12, s.s21, s.s22):
        raise DegenerateNetworkError("S21 = 0: no forward transmission")
    return TransferMatrix(
        1.0 / s.s21,
        -s.s22 / s.s21,
        s.s11 / s.s21,
        (s.s12 * s.s21 - s.s11 * s.s22) / s.s21,
    )


def transfer_to_scattering(t: TransferMatrix) -> ScatteringMatrix:
    if _is_degenerate(t.t11, t.t11, t.t12, t.t21, t.t22):
        raise DegenerateNetworkError("T11 = 0: no forward transmission")
    return ScatteringMatrix(
        t.t21 / t.t11,
        t.t22 - t.t21 * t.t12 / t.t11,
        1.0 / t.t11,
        -t.t12 / t.t11,
    )


def cascade(stages: Sequence[TransferMatrix]) -> TransferMatrix:
    """Chain transfer matrices in signal order (first stage leftmost)."""
    if not stages:
        raise ValueError("cascade of an empty stage list")
    return reduce(lambda acc, t: acc @ t, stages)


def forward_gain(t: TransferMatrix) -> complex:
    """Forward transmission coefficient S21 = 1 / T11 of a (cascaded) network."""
    if _is_degenerate(t.t11, t.t11, t.t12, t.t21, t.t22):
        raise DegenerateNetworkError("T11 = 0: no forward transmission")
    return 1.0 / t.t11
