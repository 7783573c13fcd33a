"""
Measuring a grown tower
=======================

Width per floor gives an elevation profile.  Runs of equal width are tiers,
and the tier heights can be reduced to a small integer ratio.  Box counting
over the voxels gives a dimension between 2 (a slab) and 3 (a solid block).
"""

from templeca import (
    Layer,
    Termination,
    Tower,
    box_counting_dimension,
    decode_rule,
    elevation_profile,
    grow_tower,
    load_plan,
    ratio_signature,
    segment_profile,
)

tower = grow_tower(load_plan("stepped31").layer, decode_rule(816))
profile = elevation_profile(tower, "EXTENT")
print("width per floor:", profile.values)
print("tiers (width, floors):", segment_profile(profile, min_plateau=1))

# a hand-made tower with tiers 4, 6 and 9 floors high
floors = []
for width, count in ((9, 4), (7, 6), (5, 9)):
    for _ in range(count):
        cells = [[0] * 9 for _ in range(9)]
        lo = (9 - width) // 2
        for r in range(lo, lo + width):
            for c in range(lo, lo + width):
                cells[r][c] = 1
        floors.append(Layer(cells))
tiers = Tower(tuple(floors), Termination.HEIGHT_LIMIT)
heights = [n for _, n in segment_profile(elevation_profile(tiers))]
print("tier heights", heights, "->", ratio_signature(heights))

# measurements are rarely exact; allow 3% slack on a common scale
print("41:59:91 within 3% ->", ratio_signature([41, 59, 91], 0.03))

est = box_counting_dimension(tower, max_exponent=5)
print(f"box-counting dimension {est.slope:.4f} (r^2 {est.r_squared:.4f})")
for size, count in est.samples:
    print(f"  box {size:>2}: {count}")
