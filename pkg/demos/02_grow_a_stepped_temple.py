"""
Growing a tower from a ground plan
==================================

Each new floor is the previous floor pushed through the rule once.  Growth
stops when a floor comes out empty, repeats an earlier floor, or the height
limit is reached.
"""

import tempfile
from pathlib import Path

from templeca import GrowthConfig, decode_rule, export_obj, export_slices, grow_tower, load_plan

plan = load_plan("stepped31").layer
tower = grow_tower(plan, decode_rule(816))
print(f"{tower.height} floors, stopped with {tower.termination.value}, {tower.population} voxels")

# print the floors top-down so the picture reads like an elevation
for k in reversed(range(tower.height)):
    rows = tower.layers[k].to_rows()
    print(f"floor {k}: {rows[15]}")

# MASK clipping also forbids cells outside the ground footprint
masked = grow_tower(plan, decode_rule(816), GrowthConfig(clip_mode="MASK"))
print(f"masked: {masked.height} floors, {masked.population} voxels")

# slice stacks and OBJ meshes for other tools
out = Path(tempfile.mkdtemp())
(out / "stepped31_816.slices").write_text(export_slices(tower))
(out / "stepped31_816.obj").write_text(export_obj(tower))
print(f"wrote {out / 'stepped31_816.slices'} and {out / 'stepped31_816.obj'}")
