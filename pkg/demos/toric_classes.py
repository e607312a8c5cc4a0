"""Curve classes that can enter the critical zoom, surface by surface."""
from fractions import Fraction

from zoomscope.toric import admissible_multidegrees, builtin_fan, cox_inequalities, lr_rank

CRITICAL = {"P1xP1": 4, "X2": 3, "X3": 3, "Y3": Fraction(5, 2), "Y4": 2}

for name, r in CRITICAL.items():
    fan = builtin_fan(name)
    rels = admissible_multidegrees(fan, r, 12)
    print(f"{name} (r = {r}): {len(cox_inequalities(fan))} inequalities, rank {lr_rank(rels)}")
    for p in rels[:3]:
        print(f"    {p}   degree {p.degree}")
