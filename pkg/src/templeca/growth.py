"""Stacking CA generations into a 3D tower, ground floor first."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .lattice import Layer, apply_mask, step_layer
from .rule_codec import TotalisticRule, check_code


class Termination(str, enum.Enum):
    EMPTY = "EMPTY"
    CYCLE = "CYCLE"
    HEIGHT_LIMIT = "HEIGHT_LIMIT"


class ClipMode(str, enum.Enum):
    BBOX = "BBOX"
    MASK = "MASK"


class EmptyPlanError(ValueError):
    """Raised when a ground plan has no occupied cells."""


@dataclass(frozen=True)
class GrowthConfig:
    """Knobs for :func:`grow_tower`.

    ``BBOX`` keeps growth inside the plan's rectangle (always true, the frame
    is fixed).  ``MASK`` additionally ANDs every new layer with the plan.
    """

    max_layers: int = 64
    clip_mode: ClipMode = ClipMode.BBOX
    halt_on_cycle: bool = True

    def __post_init__(self) -> None:
        if self.max_layers < 1:
            raise ValueError(f"max_layers must be >= 1, got {self.max_layers}")
        object.__setattr__(self, "clip_mode", ClipMode(self.clip_mode))


@dataclass(frozen=True)
class Tower:
    """Bottom-to-top stack of equally sized layers.

    ``period`` is only set for ``CYCLE`` terminations.  It is not stored in
    slice files, so it takes no part in equality.
    """

    layers: tuple[Layer, ...]
    termination: Termination
    rule_code: Optional[int] = None
    period: Optional[int] = field(default=None, compare=False)

    def __post_init__(self) -> None:
        layers = tuple(self.layers)
        object.__setattr__(self, "layers", layers)
        object.__setattr__(self, "termination", Termination(self.termination))
        if not layers:
            raise ValueError("a tower needs at least one layer")
        shape = layers[0].shape
        for k, layer in enumerate(layers):
            if layer.shape != shape:
                raise ValueError(f"layer {k} has shape {layer.shape}, expected {shape}")
            if k > 0 and layer.is_empty():
                raise ValueError(f"layer {k} is empty; empty layers are never stored")
        if self.rule_code is not None:
            check_code(self.rule_code)
        if self.period is not None and self.period < 1:
            raise ValueError(f"period must be >= 1, got {self.period}")

    @property
    def height(self) -> int:
        """Number of stored layers."""
        return len(self.layers)

    @property
    def frame(self) -> tuple[int, int]:
        """``(rows, cols)`` of every layer."""
        return self.layers[0].shape

    @property
    def plan(self) -> Layer:
        return self.layers[0]

    @property
    def population(self) -> int:
        return sum(layer.population for layer in self.layers)

    def voxels(self) -> np.ndarray:
        """Boolean array indexed ``[layer, row, col]``."""
        return np.stack([layer.cells for layer in self.layers])

    def __len__(self) -> int:
        return len(self.layers)


def grow_tower(
    plan: Layer, rule: TotalisticRule, config: GrowthConfig = GrowthConfig()
) -> Tower:
    """Grow a tower upward from ``plan`` by repeatedly applying ``rule``.

    Stops before storing an empty layer (``EMPTY``), before storing a layer
    equal to an earlier one when ``halt_on_cycle`` is set (``CYCLE``, with
    ``period`` the distance back to that layer), or once ``max_layers``
    layers are stored (``HEIGHT_LIMIT``).
    """
    if plan.is_empty():
        raise EmptyPlanError("ground plan has no occupied cells")

    layers = [plan]
    seen = {plan: 0}
    current = plan
    while len(layers) < config.max_layers:
        nxt = step_layer(current, rule)
        if config.clip_mode is ClipMode.MASK:
            nxt = apply_mask(nxt, plan)
        if nxt.is_empty():
            return Tower(tuple(layers), Termination.EMPTY, rule.code)
        if config.halt_on_cycle and nxt in seen:
            period = len(layers) - seen[nxt]
            return Tower(tuple(layers), Termination.CYCLE, rule.code, period)
        seen.setdefault(nxt, len(layers))
        layers.append(nxt)
        current = nxt
    return Tower(tuple(layers), Termination.HEIGHT_LIMIT, rule.code)
