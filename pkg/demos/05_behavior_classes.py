"""
Limit points and limit cycles
=============================

Without any clipping, iterate a rule on a plan until a configuration
repeats.  A repeat after one step is a limit point (class I), a longer loop a
limit cycle (class II).  On a small finite frame every orbit must repeat
eventually, so the horizon only needs to be long enough.
"""

from collections import Counter

from templeca import Layer, classify_rule, decode_rule, load_plan

for name in ("stepped31", "cross31"):
    plan = load_plan(name).layer
    tally = Counter()
    for code in range(1024):
        tally[classify_rule(plan, decode_rule(code), horizon=256).behavior.value] += 1
    print(name, dict(tally))
    for code in (816, 944, 960, 688):
        rep = classify_rule(plan, decode_rule(code))
        print(f"  rule {code}: class {rep.behavior.value}, transient {rep.transient}, period {rep.period}")

# a small oscillator: a solid 3x3 under rule 20 settles into a 4-step loop
rep = classify_rule(Layer.full(3, 3), decode_rule(20))
print(f"solid 3x3, rule 20: class {rep.behavior.value}, transient {rep.transient}, period {rep.period}")
