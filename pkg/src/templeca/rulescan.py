"""Exhaustive search of the rule space for the best match to a target tower."""

from __future__ import annotations

import enum
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .growth import GrowthConfig, Termination, Tower, grow_tower
from .lattice import Layer
from .morphometrics import Profile, ProfileKind, elevation_profile
from .rule_codec import RULE_SPACE_SIZE, decode_rule


class Metric(str, enum.Enum):
    IOU = "IOU"
    PROFILE = "PROFILE"


@dataclass(frozen=True)
class ScanResult:
    rule_code: int
    score: float
    termination: Termination
    height: int


def _padded_voxels(tower: Tower, height: int) -> np.ndarray:
    vox = tower.voxels()
    if vox.shape[0] < height:
        pad = np.zeros((height - vox.shape[0],) + vox.shape[1:], dtype=bool)
        vox = np.concatenate([vox, pad])
    return vox


def iou_score(a: Tower, b: Tower) -> float:
    """Voxel intersection-over-union; the shorter tower is padded with empty layers."""
    if a.frame != b.frame:
        raise ValueError(f"tower frames differ: {a.frame} vs {b.frame}")
    h = max(a.height, b.height)
    va, vb = _padded_voxels(a, h), _padded_voxels(b, h)
    union = int(np.count_nonzero(va | vb))
    if union == 0:
        return 1.0
    return int(np.count_nonzero(va & vb)) / union


def profile_distance(a: Profile, b: Profile) -> float:
    """L1 distance between profiles, zero-padding the shorter one on top."""
    if a.kind != b.kind:
        raise ValueError(f"profile kinds differ: {a.kind.value} vs {b.kind.value}")
    n = max(len(a), len(b))
    va = list(a.values) + [0] * (n - len(a))
    vb = list(b.values) + [0] * (n - len(b))
    return float(sum(abs(x - y) for x, y in zip(va, vb)))


def scan_rules(
    plan: Layer,
    target: Tower,
    metric: Metric | str = Metric.IOU,
    config: GrowthConfig = GrowthConfig(),
    top_n: int = 10,
    threads: int = 1,
    profile_kind: ProfileKind | str = ProfileKind.EXTENT,
) -> list[ScanResult]:
    """Grow every rule from ``plan`` and rank the towers against ``target``.

    IoU ranks high-to-low, profile distance low-to-high; ties go to the
    smaller rule code.  Results do not depend on ``threads``.
    """
    metric = Metric(metric.upper() if isinstance(metric, str) else metric)
    profile_kind = ProfileKind(profile_kind)
    if plan.shape != target.frame:
        raise ValueError(f"plan frame {plan.shape} does not match target frame {target.frame}")
    if top_n < 1:
        raise ValueError(f"top_n must be >= 1, got {top_n}")
    if threads < 1:
        raise ValueError(f"threads must be >= 1, got {threads}")

    target_profile = elevation_profile(target, profile_kind)

    def evaluate(code: int) -> ScanResult:
        tower = grow_tower(plan, decode_rule(code), config)
        if metric is Metric.IOU:
            score = iou_score(tower, target)
        else:
            score = profile_distance(elevation_profile(tower, profile_kind), target_profile)
        return ScanResult(code, score, tower.termination, tower.height)

    codes = range(RULE_SPACE_SIZE)
    if threads == 1:
        results = [evaluate(c) for c in codes]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(evaluate, codes))

    if metric is Metric.IOU:
        results.sort(key=lambda r: (-r.score, r.rule_code))
    else:
        results.sort(key=lambda r: (r.score, r.rule_code))
    return results[:top_n]
