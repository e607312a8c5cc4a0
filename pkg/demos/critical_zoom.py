"""Bucket counts at the critical zoom r = 5/2 and their log-log slopes."""
import sys
from fractions import Fraction

from zoomscope.zoom import ZoomQuery, fit_exponent, survey

eps = Fraction(sys.argv[1]) if len(sys.argv) > 1 else Fraction(2)
grid = [10 ** k for k in range(6, 12)]
rows = []
for B in grid:
    _, rep = survey(ZoomQuery(B, Fraction(5, 2), eps))
    rows.append(rep)
    n = rep.normalized
    print(f"B=1e{len(str(B)) - 1}  lines={rep.on_lines:>9}  thin={rep.thin:>5}  generic={rep.generic:>5}"
          f"  generic/B^(1/5)={n['generic/B^(1/5)']:.3f}  thin/(B^(1/5) log B)={n['thin/(B^(1/5) log B)']:.4f}")

for bucket in ("generic", "thin", "on_lines"):
    slope, err = fit_exponent([(r.B, getattr(r, bucket)) for r in rows])
    print(f"{bucket:>8}: slope {slope:.3f} +- {err:.3f}")
