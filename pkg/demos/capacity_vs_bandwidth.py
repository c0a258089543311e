"""
Capacity against bandwidth
==========================

Lifting both poles widens the band but every decade of bandwidth costs gain,
so capacity peaks and then falls. Walk the symmetric pole path and find the
peak.
"""

from vlc_preeq import DEFAULT_LED, LinkConfig, derive_led_model
from vlc_preeq.bench import capacity_at_bandwidth, capacity_bandwidth_curve, symmetric_path
from vlc_preeq.optimizer import design

led = derive_led_model(DEFAULT_LED, 50.0)
cfg = LinkConfig(h=0.5)

curve = capacity_bandwidth_curve(cfg, led, symmetric_path(led, points=60, span=10.0))
for b, c in curve[::6]:
    print(f"B = {b / 1e6:7.1f} MHz   C = {c / 1e9:.3f} Gbit/s")

b_peak, c_peak = max(curve, key=lambda t: t[1])
print(f"\npeak on the path: {c_peak / 1e9:.3f} Gbit/s at {b_peak / 1e6:.0f} MHz")

d = design(cfg, led)
print(f"optimizer:        {d.capacity_refined / 1e9:.3f} Gbit/s, poles at {d.poles_refined.x / 1e6:.1f} MHz")
print(f"800 MHz link:     {capacity_at_bandwidth(cfg, led, 800e6) / 1e9:.3f} Gbit/s")
