"""Lines on the torus: winding, segment decomposition, and constancy of
|p| along them.

A direction with rationally dependent components closes up after finitely
many wraps; an independent direction never does and gets truncated at a
segment cap.  On a closed line a polynomial that only sees the
orthogonal coordinate is exactly constant in magnitude.
"""

import math

from hrtlab import TorusPoint, TrigPolynomial2, p_constancy_on_line, toral_line

# components with ratio -3 : 1 close after three unit-square segments
closed = toral_line(TorusPoint(0.0, 0.0), (-math.sqrt(2), math.sqrt(2) / 3))
print(f"direction (-sqrt2, sqrt2/3): closed = {closed.closed}, "
      f"winding = {closed.winding}")
for k, seg in enumerate(closed.segments):
    (t0, w0), (t1, w1) = seg
    print(f"  segment {k}: ({t0:.4f}, {w0:.4f}) -> ({t1:.4f}, {w1:.4f})")
print()

# independent components: the line never closes, the cap applies
open_line = toral_line(TorusPoint(0.0, 0.0), (math.sqrt(2), math.sqrt(3)),
                       max_segments=12)
print(f"direction (sqrt2, sqrt3): closed = {open_line.closed}, "
      f"segments kept = {len(open_line.segments)}")
print()

# |p| constant on a vertical line when p depends on t alone
p_t = TrigPolynomial2(((1 + 0j, 1.0, 0.0), (2 + 0j, 2.0, 0.0)))
vertical = toral_line(TorusPoint(0.3, 0.0), (0.0, 1.0))
variation, mean = p_constancy_on_line(p_t, vertical, 512)
print(f"t-only polynomial on a vertical line: mean |p| = {mean:.9f}, "
      f"variation = {variation}")

p_w = TrigPolynomial2(((1 + 0j, 0.0, 1.0), (2 + 0j, 0.0, 2.0)))
variation2, mean2 = p_constancy_on_line(p_w, vertical, 512)
print(f"omega-only polynomial, same line:     mean |p| = {mean2:.9f}, "
      f"variation = {variation2:.6f}")
