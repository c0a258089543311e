"""Capacity-optimal analog pre-equalizer design for IMDD visible-light links."""

from .circuits import (
    EqualizerModel,
    EqualizerParams,
    LedModel,
    LedParams,
    derive_equalizer_model,
    derive_led_model,
    equalizer_s21,
    led_s21,
    match_zeros_to_led,
    synthesize_from_poles,
)
from .linkmodel import (
    GainConvention,
    IntegrationControl,
    LinkConfig,
    LinkPoles,
    alpha,
    analytic_bandwidth,
    capacity_from_bk,
    capacity_from_poles,
    end_to_end_gain,
    link_response,
    numeric_bandwidth,
)
from .twoport import (
    ScatteringMatrix,
    TransferMatrix,
    cascade,
    forward_gain,
    scattering_to_transfer,
    transfer_to_scattering,
)

DEFAULT_LED = LedParams(r_s=1.0, r_l=0.5, c_w=10.8e-9, l_b=28.6e-9)

__version__ = "0.1.0"
