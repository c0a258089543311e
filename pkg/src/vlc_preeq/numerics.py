"""Scalar numerical kernels: golden-section search, bracketed root finding
and adaptive Simpson quadrature.

These are small and dependency-free on purpose; the design and validation
code paths call them with explicit tolerances so results stay reproducible.
"""

from __future__ import annotations

import math
from typing import Callable

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


class QuadratureError(RuntimeError):
    """Adaptive refinement hit the depth limit before meeting tolerance."""


def golden_section_max(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    rtol: float = 1e-8,
    max_iter: int = 500,
) -> tuple[float, float]:
    """Maximize a unimodal ``f`` on ``[lo, hi]``.

    Returns ``(argmax, fmax)``. The bracket endpoints are evaluated too, and an
    endpoint wins whenever it is at least as good as the interior estimate, so
    corner optima come back exactly instead of ``rtol`` away from the bound.
    """
    if hi < lo:
        raise ValueError("empty bracket: hi < lo")
    f_lo, f_hi = f(lo), f(hi)
    if hi == lo:
        return lo, f_lo

    a, b = lo, hi
    x1 = b - INV_PHI * (b - a)
    x2 = a + INV_PHI * (b - a)
    f1, f2 = f(x1), f(x2)
    for _ in range(max_iter):
        if b - a <= rtol * max(abs(a), abs(b)):
            break
        if f1 >= f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - INV_PHI * (b - a)
            f1 = f(x1)
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + INV_PHI * (b - a)
            f2 = f(x2)

    if f1 >= f2:
        x_best, f_best = x1, f1
    else:
        x_best, f_best = x2, f2
    # ties resolve toward the lower bound
    if f_lo >= f_best and f_lo >= f_hi:
        return lo, f_lo
    if f_hi >= f_best:
        return hi, f_hi
    return x_best, f_best


def bisect_newton(
    g: Callable[[float], float],
    dg: Callable[[float], float],
    lo: float,
    hi: float,
    xtol: float = 1e-15,
    ftol: float = 1e-12,
    max_iter: int = 400,
) -> float:
    """Root of ``g`` on a sign-changing bracket ``[lo, hi]``.

    Bisection shrinks the bracket to ``xtol`` (relative); Newton steps that
    stay inside the current bracket then polish the residual below ``ftol``.
    """
    g_lo, g_hi = g(lo), g(hi)
    if g_lo == 0.0:
        return lo
    if g_hi == 0.0:
        return hi
    if (g_lo > 0) == (g_hi > 0):
        raise ValueError("root is not bracketed")

    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        g_mid = g(mid)
        if g_mid == 0.0:
            return mid
        if (g_mid > 0) == (g_lo > 0):
            lo, g_lo = mid, g_mid
        else:
            hi = mid
        if hi - lo <= xtol * max(abs(lo), abs(hi)):
            break

    x = 0.5 * (lo + hi)
    for _ in range(20):
        gx = g(x)
        if abs(gx) < ftol:
            break
        d = dg(x)
        if d == 0.0:
            break
        step = x - gx / d
        if not lo <= step <= hi:
            break
        if step == x:
            break
        x = step
    return x


def adaptive_simpson(
    f: Callable[[float], float],
    a: float,
    b: float,
    tol: float = 1e-10,
    max_depth: int = 40,
    min_depth: int = 6,
) -> float:
    """Integrate ``f`` over ``[a, b]`` to absolute tolerance ``tol``.

    Classic Richardson-corrected adaptive Simpson with an explicit work stack.
    Every interval is split at least ``min_depth`` times so that a peaked
    integrand cannot slip past the first coarse estimate. Raises
    :class:`QuadratureError` when an interval would need subdivision past
    ``max_depth``.
    """
    fa, fb = f(a), f(b)
    m = 0.5 * (a + b)
    fm = f(m)
    whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb)

    total = 0.0
    stack = [(a, b, fa, fm, fb, whole, tol, 0)]
    while stack:
        a, b, fa, fm, fb, whole, eps, depth = stack.pop()
        m = 0.5 * (a + b)
        lm, rm = 0.5 * (a + m), 0.5 * (m + b)
        flm, frm = f(lm), f(rm)
        left = (m - a) / 6.0 * (fa + 4.0 * flm + fm)
        right = (b - m) / 6.0 * (fm + 4.0 * frm + fb)
        delta = left + right - whole
        if depth >= min_depth and abs(delta) <= 15.0 * eps:
            total += left + right + delta / 15.0
            continue
        if depth >= max_depth:
            raise QuadratureError(
                f"adaptive Simpson exceeded depth {max_depth} on [{a:.6g}, {b:.6g}]"
            )
        stack.append((m, b, fm, frm, fb, right, 0.5 * eps, depth + 1))
        stack.append((a, m, fa, flm, fm, left, 0.5 * eps, depth + 1))
    return total
