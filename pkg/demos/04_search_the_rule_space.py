"""
Which rules build this shape?
=============================

Grow all 1024 rules from the same plan and rank them against a target
tower.  Rules that differ only on totals never seen during growth build the
identical tower; such ties share IoU 1.0 and are listed by ascending code.
On the stepped plan every total shows up, so each target has a single match.
"""

from templeca import decode_rule, grow_tower, load_plan, scan_rules

plan = load_plan("stepped31").layer
for code in (816, 944, 960, 688):
    target = grow_tower(plan, decode_rule(code))
    results = scan_rules(plan, target, "IOU", top_n=1024, threads=4)
    perfect = [r.rule_code for r in results if r.score == 1.0]
    runner_up = next(r for r in results if r.score < 1.0)
    print(f"target {code}: {len(perfect)} perfect matches {perfect[:8]}"
          f"{' ...' if len(perfect) > 8 else ''}; "
          f"best imperfect {runner_up.rule_code} at IoU {runner_up.score:.3f}")

# profile distance compares only the width per floor, so it is more forgiving
target = grow_tower(plan, decode_rule(816))
for r in scan_rules(plan, target, "PROFILE", top_n=5):
    print(f"  rule {r.rule_code:>4}  L1 {r.score:5.1f}  {r.height} floors  {r.termination.value}")
