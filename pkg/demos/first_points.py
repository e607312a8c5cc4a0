"""Smallest-height points near Q at B = 10^6, found both ways."""
from fractions import Fraction

from zoomscope.surface import format_chart, format_point
from zoomscope.zoom import ZoomQuery, brute_enumerate, param_enumerate

q = ZoomQuery(10 ** 6, Fraction(5, 2), Fraction(2), exclude_lines=True)
brute = brute_enumerate(q)
param = param_enumerate(q)
print(f"{len(brute)} off-line points by gcd reconstruction, {len(param)} via the Pell families")
print("same set:", {r.point for r in brute} == {r.point for r in param})
print()
print(f"{'point':<28}{'chart':<28}{'height':>8}  region  thin  (C3, D)")
for rec in brute[:15]:
    fam = (rec.profile.C3, rec.profile.D) if rec.profile else "-"
    print(f"{format_point(rec.point):<28}{format_chart(rec.chart):<28}{rec.height:>8}  "
          f"{rec.region.value:<6}  {int(rec.thin):<4}  {fam}")
