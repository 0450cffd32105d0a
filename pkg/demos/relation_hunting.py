"""Finding rational relations among real numbers.

Two routes through the same detector: floats get a bounded-denominator
search with residual verification, exact-grammar strings (fractions and
quadratic surds) get symbolic elimination with zero residual by
construction.  The closure descriptor then reads off the group generated
by the corresponding diagonal monomials.
"""

import json
import math

from hrtlab import (
    detect_relations,
    group_closure,
    is_rationally_independent,
    parse_exact,
)

# float route: v2 = 1/2 + (3/4) v0 is planted, v1 stays independent
v0 = math.sqrt(2)
v1 = math.pi
v2 = 0.5 + 0.75 * v0
rb = detect_relations([v0, v1, v2], max_den=64)
print("float inputs [sqrt2, pi, 1/2 + 3/4 sqrt2]:")
print(f"  basis indices: {rb.basis}")
for rel in rb.relations:
    print(f"  value {rel.j} = {rel.u} + "
          + " + ".join(f"{d} * v{b}" for d, b in zip(rel.d, rb.basis)))
print()

# exact route: the same shape but symbolic, no tolerance anywhere
vals = [parse_exact("sqrt(2)"), parse_exact("1 + 2*sqrt(2)"),
        parse_exact("1/3")]
rb2 = detect_relations(vals, max_den=64)
print("exact inputs [sqrt(2), 1 + 2*sqrt(2), 1/3]:")
print(json.dumps(rb2.to_json(), indent=2))

gc = group_closure(rb2)
print(f"closure: torus dimension {gc.torus_dimension}, "
      f"{gc.component_count} connected components")
print()

# homogeneous certificates: is any integer combination zero?
cert = is_rationally_independent([1.0, v0, 1.0 + v0], max_den=64)
print(f"[1, sqrt2, 1 + sqrt2] independent: {cert.independent}, "
      f"relation {cert.relation}")
cert2 = is_rationally_independent([1.0, v0, v1], max_den=64)
print(f"[1, sqrt2, pi]        independent: {cert2.independent}")
