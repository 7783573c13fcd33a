"""
Totalistic rules and a single update step
=========================================

A rule is ten bits, one per neighborhood total 0..9.  Rule 816 switches a
cell on when its 3x3 block holds 4, 5, 8 or 9 occupied cells.
"""

from templeca import Layer, decode_rule, render_rule, step_layer
from templeca.formats import parse_plan_text, render_plan_text

# the four codes that come up again and again in the temple comparisons
for code in (816, 944, 960, 688):
    print(render_rule(decode_rule(code)))

# a plus sign survives rule 816 unchanged: arms see 4 cells, the center 5
plus = parse_plan_text(".....\n..#..\n.###.\n..#..\n.....\n").layer
print()
print(render_plan_text(step_layer(plus, decode_rule(816))))

# rule 512 keeps only cells whose whole neighborhood is occupied, so a solid
# square loses its rim; the outside of the frame always counts as empty
print(render_plan_text(step_layer(Layer.full(5, 5), decode_rule(512))))
