"""Point-set classification on the time-frequency plane.

The classifier sorts a finite set of points into the structural classes
the shift-independence machinery cares about, with a fixed priority when
a set fits several shapes.  Exact coordinates (fractions, square roots)
are honoured exactly; floats get a 1e-9 tolerance.
"""

from hrtlab import (
    classify_configuration,
    normalize_configuration,
    parse_configuration,
)


def show(label, source):
    cfg = parse_configuration(source)
    cls = classify_configuration(cfg)
    print(f"{label:<28} -> {cls.describe()}")
    return cfg


print("classification priority: lattice beats one-off-Z2 beats collinear")
print()

show("unit lattice square", [[0, 0], [0, 1], [1, 0], [1, 1]])
show("integer points + generic", [[0, 0], [1, 0], [0, 1], [1.5, 0.25]])
show("collinear + one off", [[0, 0], [1, 0.5], [2, 1], [0.3, 0.9]])
show("two plus two", [[0, 0], [1, 0], [0.25, 0.7], [1.25, 0.7]])
show("nothing special", [[0, 0], [0.31, 0.77], [1.11, 0.24], [0.6, 1.9]])
print()

# exact text coordinates: a perturbation of 1e-10 written as an exact
# fraction is seen, the same value as a float rounds away
exact = show("exact tiny perturbation",
             [["1", "0"], ["0", "1"], ["0", "0"],
              ["1 + 1/10000000000*sqrt(2)", "1"]])
show("same points as floats",
     [[1, 0], [0, 1], [0, 0], [1 + 1e-10, 1]])
print()

# normalization: an affine symplectic change of frame takes the carrier
# of a one-off-Z2 set back to the standard position
cfg = parse_configuration([[2, 3], [2.5, 3.5], [3, 4], [2.2, 4.9]])
norm, fmap = normalize_configuration(cfg)
print("normalized carrier points:")
for pt in norm.points:
    print(f"   ({pt.xf:.6f}, {pt.yf:.6f})")
print(f"frame map: matrix = {fmap.matrix}, shift = {fmap.shift}")
