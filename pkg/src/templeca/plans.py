"""Synthetic ground plans shipped with the package.

None of these is a survey of a real building; they are simple stand-ins with
the square symmetry of the temples they are meant to evoke.
"""

from __future__ import annotations

from importlib import resources

import numpy as np

from .formats import PlanDocument, parse_plan_text
from .lattice import Layer

SHIPPED = ("solid9", "stepped31", "cross31")


def _chebyshev(n: int) -> tuple[np.ndarray, np.ndarray]:
    c = (n - 1) // 2
    idx = np.arange(n) - c
    dy, dx = np.meshgrid(idx, idx, indexing="ij")
    return np.abs(dy), np.abs(dx)


def solid_square(n: int) -> Layer:
    return Layer.full(n, n)


def stepped_squares(widths: tuple[int, ...] = (31, 23, 15)) -> Layer:
    """Concentric square bands, alternately filled and empty from the outside.

    With the default widths the outer band (31 down to 23) and the central
    15x15 square are filled, the band between them is empty.
    """
    widths = tuple(sorted(widths, reverse=True))
    if any(w % 2 == 0 for w in widths) or len(set(widths)) != len(widths):
        raise ValueError(f"widths must be distinct odd numbers, got {widths}")
    n = widths[0]
    ay, ax = _chebyshev(n)
    d = np.maximum(ay, ax)
    cells = np.zeros((n, n), dtype=bool)
    for k, w in enumerate(widths):
        cells[d <= w // 2] = k % 2 == 0
    return Layer(cells)


def stepped_cross(n: int = 31) -> Layer:
    """Greek cross with stepped re-entrant corners, centered in an ``n`` square."""
    ay, ax = _chebyshev(n)
    r = n // 2
    lo, hi = np.minimum(ay, ax), np.maximum(ay, ax)
    arm = lo <= round(r * 0.2)
    core = hi <= round(r * 0.5)
    step = (lo <= round(r * 0.4)) & (hi <= round(r * 0.8))
    return Layer(arm | core | step)


def load_plan(name: str) -> PlanDocument:
    """Load one of the :data:`SHIPPED` plans by name."""
    if name not in SHIPPED:
        raise KeyError(f"unknown plan {name!r}; shipped plans: {', '.join(SHIPPED)}")
    text = resources.files(__package__).joinpath("data", f"{name}.txt").read_text()
    return parse_plan_text(text, source_name=f"{name}.txt")
