"""Smallest singular value of a shifted Gaussian family, swept over a
coarse grid of fourth points.

The three base points (0,0), (0,1), (1,0) are fixed; the fourth walks a
grid.  A margin bounded away from zero across the sweep is numerical
evidence (not proof) that four-point Gaussian families stay linearly
independent.  The full 441-point sweep lives in the acceptance suite and
the ``independence`` CLI subcommand; here a coarse grid keeps the output
readable.
"""

import numpy as np

from hrtlab import (
    CoefficientVector,
    Configuration,
    TFPoint,
    dependency_residual,
    gram_matrix,
    independence_margin,
    make_window,
    min_singular,
    shifted_family,
    synthesis_min_singular,
)

q = 64
w = make_window("gaussian", 1.0 / q, 8)
base = [(0.0, 0.0), (0.0, 1.0), (1.0, 0.0)]

steps = np.arange(0.0, 2.0 + 1e-12, 0.25)
print("min singular value, fourth point at (alpha, beta):")
print("        " + "".join(f"{b:>8.2f}" for b in steps))
worst = np.inf
for a in steps:
    row = []
    for b in steps:
        pts = list(base)
        if all(abs(a - x) > 1e-12 or abs(b - y) > 1e-12 for x, y in pts):
            pts.append((float(a), float(b)))
        cfg = Configuration(tuple(TFPoint(x, y) for x, y in pts))
        rep = independence_margin(w, cfg)
        worst = min(worst, rep.min_singular)
        row.append(rep.min_singular)
    print(f"{a:>6.2f}  " + "".join(f"{v:>8.4f}" for v in row))
print(f"\nworst margin on this grid: {worst:.6f}")

# the margin is computed twice, by Gram eigenvalues and by the singular
# values of the synthesis matrix; the routes must agree
cfg = Configuration(tuple(TFPoint(x, y) for x, y in base + [(0.7, 1.3)]))
fam = shifted_family(w, cfg)
via_gram = min_singular(gram_matrix(fam))
via_synth = synthesis_min_singular(fam)
print(f"two-route check: gram {via_gram:.12f} synthesis {via_synth:.12f}")

# writing the distinguished window as a combination of the others: for a
# near-duplicate the unit coefficient almost reproduces it, for a far
# shift nothing close exists
tight = Configuration((TFPoint(0.0, 0.0), TFPoint(1e-7, 0.0)),
                      distinguished=1)
loose = Configuration((TFPoint(0.0, 0.0), TFPoint(0.5, 0.5)),
                      distinguished=1)
one = CoefficientVector((1.0,))
print(f"dependency residual, near-duplicate pair: "
      f"{dependency_residual(w, tight, one):.3e}")
print(f"dependency residual, well-separated pair: "
      f"{dependency_residual(w, loose, one):.3e}")
