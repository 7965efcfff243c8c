"""
Counting distinct distances
===========================

Square grids are the classic examples with few distances.  Here we count
them exactly and look at the ratio D/n as the grid grows.
"""
from distdist import PointSet, distinct_distances, fit_exponent, lattice, line_points, max_collinear

# four corners of a square: side and diagonal
square = PointSet(((0, 0), (1, 0), (0, 1), (1, 1)))
print("unit square:", distinct_distances(square))

# n evenly spaced points on a line give n - 1 distances
print("10 collinear points:", distinct_distances(line_points(10)))

samples = []
for m in (4, 8, 16, 24, 32):
    grid = lattice(m, m)
    d = distinct_distances(grid)
    samples.append((len(grid), d))
    print(f"{m:>2}x{m:<2} grid  n={len(grid):>5}  D={d:>5}  D/n={d / len(grid):.3f}  "
          f"richest line={max_collinear(grid)[1]}")

# the ratio keeps drifting down, so the log-log slope sits just under 1
fit = fit_exponent(samples)
print(f"fitted exponent of D against n: {fit.slope:.3f}")
