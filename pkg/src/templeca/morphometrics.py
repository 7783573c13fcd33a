"""Measurements on grown towers.

Elevation profiles and their plateau segmentation, small-integer ratio
signatures of tier heights, box-counting dimension of the voxel set, and a
limit-point / limit-cycle classifier for the raw rule dynamics.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Optional, Sequence

import numpy as np

from .growth import Tower
from .lattice import Layer, step_layer
from .rule_codec import TotalisticRule


class ProfileKind(str, enum.Enum):
    EXTENT = "EXTENT"
    POPULATION = "POPULATION"


@dataclass(frozen=True)
class Profile:
    values: tuple[int, ...]
    kind: ProfileKind

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", tuple(int(v) for v in self.values))
        object.__setattr__(self, "kind", ProfileKind(self.kind))
        if any(v < 0 for v in self.values):
            raise ValueError("profile values must be non-negative")

    def __len__(self) -> int:
        return len(self.values)


@dataclass(frozen=True)
class RatioSignature:
    terms: tuple[int, ...]
    tolerance_used: float

    def __str__(self) -> str:
        return ":".join(str(t) for t in self.terms)


@dataclass(frozen=True)
class DimensionEstimate:
    slope: float
    r_squared: float
    samples: tuple[tuple[int, int], ...]


class BehaviorClass(str, enum.Enum):
    I_LIMIT_POINT = "I"
    II_LIMIT_CYCLE = "II"
    UNRESOLVED_WITHIN_HORIZON = "UNRESOLVED"


@dataclass(frozen=True)
class ClassReport:
    """Outcome of :func:`classify_rule`.

    ``transient`` is the number of steps before the orbit enters its fixed
    point or cycle.  When no repeat was seen it equals the horizon, a lower
    bound, and ``period`` is None.
    """

    behavior: BehaviorClass
    transient: int
    period: Optional[int]


def elevation_profile(tower: Tower, kind: ProfileKind | str = ProfileKind.EXTENT) -> Profile:
    """Per-layer bounding-box width (``EXTENT``) or cell count (``POPULATION``)."""
    kind = ProfileKind(kind)
    values = []
    for layer in tower.layers:
        if kind is ProfileKind.POPULATION:
            values.append(layer.population)
        else:
            box = layer.bbox()
            values.append(0 if box is None else box[3] - box[2])
    return Profile(tuple(values), kind)


def segment_profile(profile: Profile | Sequence[int], min_plateau: int = 1) -> list[tuple[int, int]]:
    """Run-length encode a profile into ``(value, run_length)`` plateaus.

    Runs shorter than ``min_plateau`` are absorbed by the run before them,
    and neighbours left with equal values are joined.  The first run is
    always kept.

    >>> segment_profile([9, 9, 8, 9, 9], min_plateau=2)
    [(9, 5)]
    """
    values = profile.values if isinstance(profile, Profile) else tuple(profile)
    if min_plateau < 1:
        raise ValueError(f"min_plateau must be >= 1, got {min_plateau}")
    if not values:
        raise ValueError("cannot segment an empty profile")

    runs: list[list[int]] = []
    for v in values:
        if runs and runs[-1][0] == v:
            runs[-1][1] += 1
        else:
            runs.append([v, 1])

    merged: list[list[int]] = []
    for value, length in runs:
        if merged and (length < min_plateau or merged[-1][0] == value):
            merged[-1][1] += length
        else:
            merged.append([value, length])
    return [(v, n) for v, n in merged]


def ratio_signature(segments: Sequence[int], tolerance: float = 0.0) -> Optional[RatioSignature]:
    """Smallest coprime integer tuple proportional to ``segments``.

    Each ``x_i`` must lie within ``tolerance`` (relative to the model value)
    of ``s * p_i`` for one shared scale ``s > 0``.  Candidates are tried by
    increasing largest term, then lexicographically, up to ``max(segments)``.
    Returns None when nothing in that range fits.
    """
    xs = [int(x) for x in segments]
    if not xs:
        raise ValueError("need at least one segment")
    if any(x < 1 for x in xs):
        raise ValueError(f"segments must be positive integers, got {xs}")
    if not 0 <= tolerance < 0.5:
        raise ValueError(f"tolerance must be in [0, 0.5), got {tolerance}")

    if tolerance == 0:
        g = reduce(math.gcd, xs)
        return RatioSignature(tuple(x // g for x in xs), 0.0)

    tol = Fraction(tolerance)
    # |x - s p| <= tol * s p  <=>  x / ((1 + tol) p) <= s <= x / ((1 - tol) p)
    lo_num = [Fraction(x) / (1 + tol) for x in xs]
    hi_num = [Fraction(x) / (1 - tol) for x in xs]
    n = len(xs)

    def search(i: int, lo: Fraction, hi: Fraction, top: int, hit_top: bool, acc: list[int]):
        if i == n:
            return list(acc) if hit_top else None
        # p must satisfy lo_num/p <= hi and hi_num/p >= lo
        p_min = max(1, math.ceil(lo_num[i] / hi)) if hi is not None else 1
        p_max = top if lo is None or lo == 0 else min(top, math.floor(hi_num[i] / lo))
        for p in range(p_min, p_max + 1):
            new_lo = lo_num[i] / p if lo is None else max(lo, lo_num[i] / p)
            new_hi = hi_num[i] / p if hi is None else min(hi, hi_num[i] / p)
            if new_lo > new_hi:
                continue
            acc.append(p)
            found = search(i + 1, new_lo, new_hi, top, hit_top or p == top, acc)
            acc.pop()
            if found is not None:
                return found
        return None

    for top in range(1, max(xs) + 1):
        found = search(0, None, None, top, False, [])
        if found is not None and reduce(math.gcd, found) == 1:
            return RatioSignature(tuple(found), float(tolerance))
    return None


def box_counting_dimension(tower: Tower | np.ndarray, max_exponent: int) -> DimensionEstimate:
    """Box-counting dimension of the occupied voxels.

    Boxes of side 1, 2, 4, ..., ``2**max_exponent`` tile space from the corner
    of the tight bounding box of occupied voxels.  The slope of
    ``log(count)`` against ``log(1/size)`` is the estimate.
    """
    vox = tower.voxels() if isinstance(tower, Tower) else np.asarray(tower, dtype=bool)
    if max_exponent < 2:
        raise ValueError(f"need at least 3 box sizes, max_exponent must be >= 2 (got {max_exponent})")
    occupied = np.argwhere(vox)
    if occupied.size == 0:
        raise ValueError("no occupied voxels to count")
    occupied = occupied - occupied.min(axis=0)

    samples = []
    for e in range(max_exponent + 1):
        size = 1 << e
        boxes = np.unique(occupied >> e, axis=0)
        samples.append((size, int(len(boxes))))

    x = np.log([1.0 / s for s, _ in samples])
    y = np.log([float(c) for _, c in samples])
    xm, ym = x.mean(), y.mean()
    sxx = float(((x - xm) ** 2).sum())
    sxy = float(((x - xm) * (y - ym)).sum())
    syy = float(((y - ym) ** 2).sum())
    slope = sxy / sxx
    # all counts equal: a flat line fits exactly
    r2 = 1.0 if syy == 0 else min(1.0, sxy * sxy / (sxx * syy))
    return DimensionEstimate(slope, r2, tuple(samples))


def classify_rule(plan: Layer, rule: TotalisticRule, horizon: int = 256) -> ClassReport:
    """Classify the unclipped orbit of ``plan`` under ``rule``.

    Reaching a fixed point (including the empty layer) is class I, a cycle of
    period >= 2 is class II, and anything else within ``horizon`` steps is
    left unresolved.
    """
    if horizon < 1:
        raise ValueError(f"horizon must be >= 1, got {horizon}")
    seen = {plan: 0}
    current = plan
    for t in range(1, horizon + 1):
        current = step_layer(current, rule)
        first = seen.get(current)
        if first is not None:
            period = t - first
            behavior = BehaviorClass.I_LIMIT_POINT if period == 1 else BehaviorClass.II_LIMIT_CYCLE
            return ClassReport(behavior, first, period)
        seen[current] = t
    return ClassReport(BehaviorClass.UNRESOLVED_WITHIN_HORIZON, horizon, None)
