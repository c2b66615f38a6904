"""Scalar root-finding and 1-D minimization kernels.

Everything here is deterministic and allocation-free: doubling brackets,
plain bisection with a function-value stopping rule, and golden-section
search on a unimodal bracket. The callers need sound one-sided answers
(e.g. an upper endpoint whose function value is certified on the right
side of the target), so the kernels return both endpoints.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class RootResult:
    """Bracketed root of a monotone function.

    ``lo``/``hi`` satisfy f(lo) <= target <= f(hi) for a nondecreasing f
    (mirrored for nonincreasing). ``x`` is the endpoint the caller asked
    to be on the safe side; ``residual`` is |f(x) - target|.
    """

    x: float
    lo: float
    hi: float
    residual: float
    iterations: int


def expand_upward(f: Callable[[float], float], target: float, start: float = 1.0,
                  limit: float = 1e308) -> float:
    """Smallest tested x with f(x) >= target, doubling from ``start``.

    f must be nondecreasing with f(x) -> sup f as x grows. Raises
    OverflowError if the limit is hit first.
    """
    x = start
    while f(x) < target:
        x *= 2.0
        if x > limit:
            raise OverflowError(f"no x <= {limit:g} with f(x) >= {target:g}")
    return x


def bisect_increasing(f: Callable[[float], float], target: float, lo: float, hi: float,
                      *, value_tol: float = 1e-12, max_iter: int = 200,
                      prefer: str = "hi") -> RootResult:
    """Solve f(x) = target for nondecreasing f on [lo, hi].

    Stops when |f(mid) - target| <= value_tol * (1 + |target|) or the
    interval collapses to adjacent floats. ``prefer`` selects which
    endpoint is reported as ``x``: "hi" guarantees f(x) >= target - tol,
    "lo" the mirror image, "best" the smaller residual.
    """
    scale = value_tol * (1.0 + abs(target))
    f_lo, f_hi = f(lo), f(hi)
    if f_lo > target + scale or f_hi < target - scale:
        raise ValueError(f"target {target:g} not bracketed by [{lo:g}, {hi:g}]")
    iters = 0
    best_x, best_r = (lo, abs(f_lo - target))
    if abs(f_hi - target) < best_r:
        best_x, best_r = hi, abs(f_hi - target)
    while iters < max_iter:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        f_mid = f(mid)
        r = abs(f_mid - target)
        if r < best_r:
            best_x, best_r = mid, r
        if f_mid < target:
            lo, f_lo = mid, f_mid
        else:
            hi, f_hi = mid, f_mid
        iters += 1
        if r <= scale:
            break
    if prefer == "hi":
        x, residual = hi, abs(f_hi - target)
    elif prefer == "lo":
        x, residual = lo, abs(f_lo - target)
    else:
        x, residual = best_x, best_r
    return RootResult(x=x, lo=lo, hi=hi, residual=residual, iterations=iters)


def solve_increasing(f: Callable[[float], float], target: float, *,
                     start: float = 1.0, value_tol: float = 1e-12,
                     max_iter: int = 200, prefer: str = "best") -> RootResult:
    """Doubling bracket plus bisection for nondecreasing f with f(0) <= target."""
    if f(0.0) > target:
        raise ValueError("f(0) already exceeds the target")
    hi = expand_upward(f, target, start=start)
    lo = 0.0 if hi == start else hi / 2.0
    return bisect_increasing(f, target, lo, hi, value_tol=value_tol,
                             max_iter=max_iter, prefer=prefer)


@dataclass(frozen=True)
class MinResult:
    x: float
    value: float
    iterations: int


def bracket_minimum(f: Callable[[float], float], x0: float, *, factor: float = 2.0,
                    max_steps: int = 200) -> tuple[float, float, float]:
    """Geometric scan around x0 > 0 for a unimodal triple a < b < c with
    f(b) <= min(f(a), f(c)). Infinite values are treated as large."""
    a, b, c = x0 / factor, x0, x0 * factor
    fa, fb, fc = f(a), f(b), f(c)
    steps = 0
    while not (fb <= fa and fb <= fc):
        if fa < fb:
            a, b, c = a / factor, a, b
            fa, fb, fc = f(a), fa, fb
        else:
            a, b, c = b, c, c * factor
            fa, fb, fc = fb, fc, f(c)
        steps += 1
        if steps > max_steps:
            raise ValueError("failed to bracket a minimum; function may not be unimodal")
    return a, b, c


def golden_min(f: Callable[[float], float], lo: float, hi: float, *,
               rel_tol: float = 1e-12, max_iter: int = 400) -> MinResult:
    """Golden-section minimization of a unimodal f on [lo, hi]."""
    a, b = lo, hi
    x1 = b - _GOLDEN * (b - a)
    x2 = a + _GOLDEN * (b - a)
    f1, f2 = f(x1), f(x2)
    best_x, best_f = (x1, f1) if f1 <= f2 else (x2, f2)
    iters = 0
    while (b - a) > rel_tol * (abs(a) + abs(b)) and iters < max_iter:
        if f1 <= f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - _GOLDEN * (b - a)
            f1 = f(x1)
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + _GOLDEN * (b - a)
            f2 = f(x2)
        if f1 < best_f:
            best_x, best_f = x1, f1
        if f2 < best_f:
            best_x, best_f = x2, f2
        iters += 1
    return MinResult(x=best_x, value=best_f, iterations=iters)


def golden_max(f: Callable[[float], float], lo: float, hi: float, *,
               rel_tol: float = 1e-12, max_iter: int = 400) -> MinResult:
    res = golden_min(lambda x: -f(x), lo, hi, rel_tol=rel_tol, max_iter=max_iter)
    return MinResult(x=res.x, value=-res.value, iterations=res.iterations)


def geometric_grid(lo: float, hi: float, count: int) -> list[float]:
    """count log-spaced points from lo to hi inclusive."""
    if count < 2:
        return [lo]
    ratio = (math.log(hi) - math.log(lo)) / (count - 1)
    return [math.exp(math.log(lo) + i * ratio) for i in range(count)]
