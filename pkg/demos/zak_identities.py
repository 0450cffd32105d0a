"""Walk through the discrete Zak picture: the five structural identities,
unitarity, and inversion.

Run as ``python3 demos/zak_identities.py``.  Everything prints; nothing is
written to disk (use the CLI's ``zak-check --dump`` for CSV/PGM exports).
"""

import numpy as np

from hrtlab import (
    check_zak_identity,
    inverse_zak,
    make_window,
    zak_transform,
)

q = 64
windows = {
    "gaussian": make_window("gaussian", 1.0 / q, 8),
    "box": make_window("box", 1.0 / q, 2),
}

print(f"grid: q = {q}, h = 1/{q}")
print()

for name, w in windows.items():
    print(f"-- {name} window, K = {w.half_support}, ||f|| = {w.norm:.12f}")
    for ident in ("translation", "modulation", "modtrans",
                  "quasiperiod_t", "period_omega"):
        err = check_zak_identity(ident, w, q=q)
        tag = "exact" if err == 0.0 else f"{err:.3e}"
        print(f"   {ident:<14} max error {tag}")
    print()

# unitarity: the mean square of the image equals the weighted energy of
# the samples, up to roundoff
w = windows["gaussian"]
z = zak_transform(w)
print(f"unitarity defect (gaussian): {z.parseval_defect():.3e}")

# inversion recovers the window samples from the image alone
back = inverse_zak(z)
gap = float(np.max(np.abs(back.samples - w.samples)))
print(f"inversion round trip sup gap: {gap:.3e}")
