"""
LED response and what an equalizer buys
=======================================

Derives the LED corner frequencies from the equivalent circuit, prints a few
points of its magnitude response and then lets a two-stage equalizer move the
link poles up.
"""

import numpy as np

from vlc_preeq import DEFAULT_LED, LinkConfig, derive_led_model, derive_equalizer_model, synthesize_from_poles
from vlc_preeq.circuits import led_s21, response_db
from vlc_preeq.linkmodel import LinkPoles, analytic_bandwidth, link_response, numeric_bandwidth

led = derive_led_model(DEFAULT_LED, r_g=50.0)
print(f"LED poles: {led.f_p1_led / 1e6:.2f} MHz and {led.f_p2_led / 1e6:.2f} MHz, DC gain {led.k_led:.5f}")

for f in np.geomspace(1e6, 1e10, 9):
    print(f"  {f / 1e6:10.1f} MHz  {response_db(led_s21(led, f)):8.2f} dB")

# push both poles to 400 MHz
eq = derive_equalizer_model(synthesize_from_poles(400e6, 400e6, led), 50.0)
p = eq.params
print(f"\nequalizer: R1={p.r1:.3f} ohm, Le={p.l_e * 1e9:.3f} nH, R2={p.r2:.2f} ohm, Ce={p.c_e * 1e12:.3f} pF")

cfg = LinkConfig()
print(f"DC link gain {abs(link_response(0.0, cfg, led, eq)):.1f}")
print(f"noise bandwidth, two-pole formula: {analytic_bandwidth(LinkPoles(400e6, 400e6)) / 1e6:.2f} MHz")
print(f"noise bandwidth, quadrature:       {numeric_bandwidth(cfg, led, eq) / 1e6:.2f} MHz")
