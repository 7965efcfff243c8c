"""
Incidence counts against the bound
==================================

Sweep the share of points on the line and compare the measured incidences
with the certified envelope.  The largest ratio is the empirical constant.
"""
from distdist.bounds import envelope_constant, envelope_mult
from distdist.cli import run_sweep

cells = [("line", n, a, "lattice", 0) for n in (64, 128, 256) for a in (0.5, 0.75)]
rows = run_sweep(cells, workers=1)
for r in rows:
    print(f"n={r['n']:>4} alpha={r['alpha']:<5} incidences={r['incidences']:>7} "
          f"envelope<={r['env_total_upper']:>12.1f} ratio={r['ratio']:.3f}")
print(f"empirical constant: {envelope_constant(rows):.3f}")

# the envelope itself, with the leading term kept as a tight interval
e = envelope_mult(1000, 5000, 3, 4)
print(f"m=1000 N=5000 k=3 t=4: lead {e.lead_value:.2f}, relative width {e.lead_relative_width:.1e}")
