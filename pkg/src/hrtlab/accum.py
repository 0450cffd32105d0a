"""Compensated summation helpers.

Long orbit products are accumulated in the log domain; plain cumulative sums
lose digits once n gets large, so prefix sums here carry a Neumaier
compensation term.
"""

from __future__ import annotations

import numpy as np


def compensated_cumsum(increments: np.ndarray) -> np.ndarray:
    """Prefix sums s_0 = 0, s_j = sum of the first j increments.

    Neumaier's variant of Kahan summation; the compensation survives
    increments larger than the running sum.  Returns an array one longer
    than the input.
    """
    x = np.asarray(increments, dtype=float)
    out = np.empty(x.size + 1)
    out[0] = 0.0
    s = 0.0
    c = 0.0
    for j, v in enumerate(x):
        t = s + v
        if abs(s) >= abs(v):
            c += (s - t) + v
        else:
            c += (v - t) + s
        s = t
        out[j + 1] = s + c
    return out


def compensated_sum(values: np.ndarray) -> float:
    """Single compensated total of ``values``."""
    return float(compensated_cumsum(values)[-1])
