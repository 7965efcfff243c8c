"""
Quadruples and hyperbolas for points on a line
==============================================

Split an 8x4 grid into its bottom row (on the x-axis) and the rest.  Pairs
(a, p), (b, q) with equal distances are counted two ways: from the sizes of
the distance classes, and as incidences between grid points (a, b) and the
hyperbolas defined by (p, q).
"""
from distdist import lattice, line_ledger
from distdist.generators import split_by

pts = split_by(lattice(8, 4), lambda p: p.y == 0)
first, second = pts.part("P1"), pts.part("P2")
led = line_ledger(first, second)
s = led.stats

print(f"|P1|={len(first)}  |P2|={len(second)}  distances={s.D}")
print(f"quadruples {s.q_total} = same height {s.q1} + hyperbola part {s.q2}")
print(f"incidences counted on the curves: {led.incidences}")

# the count of equal-distance quadruples can never be small when D is small
print(f"lower bound from the class sizes: {float(s.cauchy_schwarz_lower):.1f} <= {s.q_total}")

fam = led.family
print(f"{fam.gamma_size} curves, {fam.distinct} distinct, largest multiplicity t={fam.t}")
print(f"richest vertical line in P2 has {led.multiplicity.v_max} points, so t <= {2 * led.multiplicity.v_max}")
