"""Diagonal flow products: growth classification and summability.

Each flow multiplies factors p(xi + j) where p is a one-variable
exponential sum; the classifier looks at the trend of the log partial
sums in both time directions.
"""

import math

import numpy as np

from hrtlab import (
    DiagonalFlow,
    make_window,
    fourier_relation_residual,
    product_trace,
    summability_probe,
)

flows = {
    "constant 2": DiagonalFlow((0.0,), (2.0,)),
    "unimodular": DiagonalFlow((0.0,), (complex(math.cos(1.1),
                                                math.sin(1.1)),)),
    "cosine": DiagonalFlow((0.0, math.sqrt(2)), (0.5, 0.5)),
}

for name, flow in flows.items():
    tr = product_trace(flow, 0.3, 10_000)
    drift = tr.forward_logs[-1] / 10_000
    print(f"{name:<11} forward {tr.classification:<22} "
          f"backward {tr.backward_class:<22} drift {drift:+.5f}")
print(f"(cosine drift target is -ln 2 = {-math.log(2):+.5f})")
print()

# summability: shell sums of |F|^2 over |k| <= j.  The constant-2 flow
# pushes mass out fast enough to overflow the probe; the unimodular one
# stays flat.
sp = summability_probe(flows["constant 2"], 0.3, 1.0, 600)
print(f"constant 2: bounded view {sp.bounded_view}, "
      f"first overflow shell {sp.overflow_indices[0] if sp.overflow_indices else None}")
sp2 = summability_probe(flows["unimodular"], 0.3, 1.0, 50)
print(f"unimodular: bounded view {sp2.bounded_view}, "
      f"last shell sum {sp2.partial_sums[-1]:.6f}")
print()

# the window-weighted residual ties flows back to sampled windows; it is
# scale invariant in the window samples
w = make_window("box", 1 / 64, 2)
flow = DiagonalFlow((0.0,), (1.0,))
r = fourier_relation_residual(w, flow)
print(f"box window residual against the trivial flow: {r:.12f}")
