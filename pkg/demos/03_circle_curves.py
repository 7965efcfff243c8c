"""
Points on the unit circle
=========================

With P1 on the unit circle, each pair (p, q) from P2 cuts out a curve in
pairs of circle points (a, b).  Two different curves meet in at most four
real points, which the exact solver confirms pair by pair.
"""
from collections import Counter

from distdist.circles import build_circle_family, check_intersections_4d, circle_ledger, circle_pairs
from distdist.cli import circle_config

first, second = circle_config(80, 0.5, "symmetric", seed=2)
led = circle_ledger(first, second)
s = led.stats
print(f"{len(first)} points on the circle, {len(second)} elsewhere")
print(f"quadruples {s.q_total} = concentric {s.q1} + curve part {s.q2}, incidences {led.incidences}")

rep = check_intersections_4d(circle_pairs(build_circle_family(second), samples=300))
print(f"{rep.pairs} curve pairs, most common points {rep.maximum} (bound {rep.bound})")
for case, count in sorted(Counter(rep.by_case).items()):
    print(f"  {case:<16}{count}")
