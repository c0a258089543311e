"""Acceptance criteria, one test each.

Every test records a single ``PASS``/``FAIL`` line with the measured value and
the pinned tolerance before asserting; the lines are printed together at the
end of the run.
"""

import time

import numpy as np
import pytest

from vlc_preeq import DEFAULT_LED, derive_led_model
from vlc_preeq.bench import Scheme, default_h_values, scheme_poles, sweep_attenuation
from vlc_preeq.circuits import derive_equalizer_model, synthesize_from_poles
from vlc_preeq.cli import main
from vlc_preeq.linkmodel import (
    LinkConfig,
    LinkPoles,
    alpha,
    analytic_bandwidth,
    capacity_from_bk,
    capacity_from_poles,
    link_response,
    link_response_cascade,
    numeric_bandwidth_from_poles,
)
from vlc_preeq.optimizer import grid_search_optimum, solve_log_equation, threshold_h1, threshold_h2

LED = derive_led_model(DEFAULT_LED, 50.0)
CFG = LinkConfig()


@pytest.fixture
def report(record_property):
    def _report(n: int, ok: bool, text: str) -> None:
        record_property("acceptance", f"{'PASS' if ok else 'FAIL'} criterion {n}: {text}")

    return _report


@pytest.fixture(scope="module")
def sweep():
    t0 = time.perf_counter()
    res = sweep_attenuation(CFG, LED, default_h_values(1e-3, 1.0, 30))
    return res, time.perf_counter() - t0


def test_1_bandwidth_oracle(report):
    rng = np.random.default_rng(2024)
    t0 = time.perf_counter()
    worst = 0.0
    for x, y in 10 ** rng.uniform(7, 10, size=(100, 2)):
        p = LinkPoles(x, y)
        worst = max(worst, abs(numeric_bandwidth_from_poles(p) / analytic_bandwidth(p) - 1))
    dt = time.perf_counter() - t0
    ok = worst <= 5e-3 and dt < 10
    report(1, ok, f"max rel error {worst:.3e} (<= 5e-3) over 100 pairs, {dt:.2f} s (< 10 s)")
    assert ok


def test_2_pole_nmse(sweep, report):
    res, dt = sweep
    ok = res.pole_nmse <= 0.03 and dt < 120
    report(2, ok, f"pole NMSE {res.pole_nmse:.5f} (<= 0.03), sweep {dt:.2f} s (< 120 s)")
    assert ok


def test_3_capacity_nmse(sweep, report):
    res, _ = sweep
    ok = res.capacity_nmse <= 0.05
    report(3, ok, f"capacity NMSE {res.capacity_nmse:.5f} (<= 0.05)")
    assert ok


def _crossing(pred, lo, hi, rtol=1e-6):
    # pred(lo) is False, pred(hi) is True; return the switch point
    while hi - lo > rtol * hi:
        mid = 0.5 * (lo + hi)
        if pred(mid):
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def _oracle_x(h):
    return grid_search_optimum(CFG.with_h(h), LED)[0].x


def test_4_regime_thresholds(report):
    t0 = time.perf_counter()
    h1, h2 = threshold_h1(CFG, LED), threshold_h2(CFG, LED)
    h1_grid = _crossing(lambda h: _oracle_x(h) > LED.f_p2_led * (1 + 1e-6), 0.01, 1.0)
    h2_grid = _crossing(lambda h: _oracle_x(h) > LED.f_p1_led * (1 + 1e-6), 1e-4, 0.05)
    dt = time.perf_counter() - t0
    e1, e2 = h1 / h1_grid - 1, h2 / h2_grid - 1
    ok = abs(e1) <= 0.02 and abs(e2) <= 0.05 and dt < 60
    report(
        4,
        ok,
        f"h1 {h1:.6f} vs oracle {h1_grid:.6f} ({e1:+.2%}, tol 2%); "
        f"h2 {h2:.6f} vs oracle {h2_grid:.6f} ({e2:+.2%}, tol 5%); {dt:.2f} s",
    )
    assert ok


def test_5_transcendental_roots(report):
    r5, r3 = solve_log_equation(5.0), solve_log_equation(3.0)
    ok = (
        r5.residual < 1e-12
        and r3.residual < 1e-12
        and r5.approx_rel_error <= 5e-3
        and r3.approx_rel_error <= 3e-2
    )
    report(
        5,
        ok,
        f"k=5 u={r5.u:.6f} res {r5.residual:.1e} approx err {r5.approx_rel_error:.3%}; "
        f"k=3 u={r3.u:.6f} res {r3.residual:.1e} approx err {r3.approx_rel_error:.3%}",
    )
    assert ok


def test_6_monotonicity_in_y(report):
    rng = np.random.default_rng(6)
    h1 = threshold_h1(CFG, LED)
    f1, f2 = LED.f_p1_led, LED.f_p2_led
    bad = total = 0
    for h in np.geomspace(1e-3, h1, 21)[:-1]:
        a = alpha(CFG.with_h(h), LED)
        for _ in range(20):
            x = f1 + rng.uniform() * (f2 - f1)
            y = f2 * 10 ** rng.uniform(0, 1.5)
            d = 1e-6 * y
            dc = capacity_from_poles(LinkPoles(x, y + d), a) - capacity_from_poles(LinkPoles(x, y - d), a)
            bad += dc >= 0
            total += 1
    ok = bad == 0 and total == 400
    report(6, ok, f"{bad} violations of dC/dy < 0 at {total} points")
    assert ok


def test_7_dominance_and_crossover(sweep, report):
    res, _ = sweep
    rows = res.rows
    dom = all(r.c_refined >= max(r.c_bce, r.c_noeq) * (1 - 1e-9) for r in rows)
    low = any(r.c_bce < r.c_noeq for r in rows if r.h <= 0.04)
    high = any(r.c_bce > r.c_noeq for r in rows if r.h >= 0.4)
    ok = dom and low and high
    report(7, ok, f"dominance {dom}, BCE<NoEq at h<=0.04 {low}, BCE>NoEq at h>=0.4 {high}")
    assert ok


def test_8_magnitude_anchors(report):
    noeq = scheme_poles(Scheme.NO_EQUALIZER, CFG, LED)
    gaps = {}
    for h in (0.4, 0.04):
        c = CFG.with_h(h)
        _, c_opt = grid_search_optimum(c, LED)
        gaps[h] = c_opt - capacity_from_poles(noeq, alpha(c, LED))
    ok4 = abs(gaps[0.4] / 400e6 - 1) <= 0.15
    ok04 = abs(gaps[0.04] / 40e6 - 1) <= 0.50
    report(
        8,
        ok4 and ok04,
        f"gap h=0.4 {gaps[0.4] / 1e6:.1f} Mbit/s (400 +-15%); gap h=0.04 {gaps[0.04] / 1e6:.1f} Mbit/s "
        f"(40 +-50%); power convention, mu=1 (convention-sensitive)",
    )
    assert ok4 and ok04


def test_9_algebraic_consistency(report):
    rng = np.random.default_rng(9)
    a = alpha(CFG, LED)
    worst_c = worst_h = 0.0
    for _ in range(1000):
        x = LED.f_p1_led * 10 ** rng.uniform(0, 2)
        y = LED.f_p2_led * 10 ** rng.uniform(0, 2)
        eq = derive_equalizer_model(synthesize_from_poles(x, y, LED), CFG.r_g)
        p = LinkPoles(eq.f_p1_eq, eq.f_p2_eq)
        k_c = abs(link_response(0.0, CFG, LED, eq))
        c_bk = capacity_from_bk(analytic_bandwidth(p), k_c, CFG)
        worst_c = max(worst_c, abs(c_bk / capacity_from_poles(p, a) - 1))
        f = 10 ** rng.uniform(5, 11)
        hc = link_response(f, CFG, LED, eq)
        worst_h = max(worst_h, abs(abs(link_response_cascade(f, CFG, LED, eq)) / abs(hc) - 1))
    ok = worst_c <= 1e-9 and worst_h <= 1e-9
    report(9, ok, f"capacity rel diff {worst_c:.2e}, |H| rel diff {worst_h:.2e} (<= 1e-9) over 1000 designs")
    assert ok


def test_10_determinism(tmp_path, report):
    same = True
    for cmd in ("sweep", "compare"):
        a, b = tmp_path / f"{cmd}_a.csv", tmp_path / f"{cmd}_b.csv"
        assert main([cmd, "--out", str(a)]) == 0
        assert main([cmd, "--out", str(b)]) == 0
        same &= a.read_bytes() == b.read_bytes()
    report(10, same, f"sweep and compare CSV byte-identical across runs: {same}")
    assert same
