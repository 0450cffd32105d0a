"""Products of |p| along irrational rotation orbits, in the log domain.

Three things on display: equidistribution of the orbit itself, the
compensated running log-sum with explicit zero-hit bookkeeping, and the
telescoped magnitude recurrence that the log-sums must reproduce.
"""

import math

import numpy as np

from hrtlab import (
    TorusPoint,
    TrigPolynomial2,
    discrepancy,
    orbit,
    orbit_log_product,
    propagate_F,
    recurrence_probe,
)

# a badly approximable rotation vector spreads fast
gamma = (math.sqrt(2) - 1, math.sqrt(3) - 1)
pts = orbit(TorusPoint(0.0, 0.0), gamma, 10_000)
print(f"rotation step ({gamma[0]:.6f}, {gamma[1]:.6f})")
print(f"star discrepancy of first 10^4 points: {discrepancy(pts, 100):.5f}")

# rational steps come back exactly; probe finds the period
period = recurrence_probe(TorusPoint(0.0, 0.0), (1 / 3, 1 / 2), 1e-9, 100)
print(f"recurrence period for step (1/3, 1/2): {period}")
print()

# log product along the irrational orbit.  p = 1 - e^{2 pi i t} vanishes
# on the line t = 0, so the start point itself is a zero hit; it is
# excluded from the sum and reported, not folded in as -inf.
p = TrigPolynomial2(((1 + 0j, 0.0, 0.0), (-1 + 0j, 1.0, 0.0)))
led = orbit_log_product(p, TorusPoint(0.0, 0.0), gamma, 2000)
print(f"log-sum after 2000 factors: {led.log_sums[-1]:+.6f}")
print(f"zero hits: {led.zero_hits}")
print(f"Birkhoff mean of ln|p|: {led.log_sums[-1] / 2000:+.6f}")
print()

# telescoping: the magnitude recurrence F_{n+1} = |p| F_n must equal
# exp(s_n) times the seed, factor order and compensation included
pq = TrigPolynomial2(((1 + 0j, 0.0, 0.0), (0.5 + 0.25j, 1.0, 1.0)))
z0 = TorusPoint(0.13, 0.71)
mags = propagate_F(2.0, pq, gamma, z0, 1000)
led2 = orbit_log_product(pq, z0, gamma, 1000)
want = np.exp(led2.log_sums) * 2.0
gap = float(np.max(np.abs(mags - want) / np.abs(want)))
print(f"recurrence vs telescoped log-sums, max relative gap: {gap:.3e}")
