"""Deterministic scalar optimization helpers."""

from __future__ import annotations

from typing import Callable

import numpy as np

_GOLDEN = (np.sqrt(5.0) - 1.0) / 2.0


def golden_section_max(f: Callable[[float], float], lo: float, hi: float, tol: float) -> float:
    """Golden-section search for the maximizer of ``f`` on [lo, hi].

    Assumes a unimodal bracket; callers locate the bracket with a coarse
    grid first.  Returns the midpoint of the final interval of width tol.
    """
    a, b = lo, hi
    x1 = b - _GOLDEN * (b - a)
    x2 = a + _GOLDEN * (b - a)
    f1, f2 = f(x1), f(x2)
    while b - a > tol:
        if f1 < f2:
            a, x1, f1 = x1, x2, f2
            x2 = a + _GOLDEN * (b - a)
            f2 = f(x2)
        else:
            b, x2, f2 = x2, x1, f1
            x1 = b - _GOLDEN * (b - a)
            f1 = f(x1)
    return 0.5 * (a + b)


def grid_then_golden_max(
    f: Callable[[float], float], lo: float, hi: float, coarse: int, tol: float
) -> float:
    """Coarse-grid bracketing followed by golden-section refinement."""
    grid = np.linspace(lo, hi, coarse)
    vals = [f(x) for x in grid]
    k = int(np.argmax(vals))
    a = grid[max(k - 1, 0)]
    b = grid[min(k + 1, len(grid) - 1)]
    if b - a < tol:
        return grid[k]
    return golden_section_max(f, a, b, tol)
