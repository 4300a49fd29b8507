"""
Codes that stay low degree on every line
========================================

A monomial is kept when it restricts to a low-degree polynomial on every line
meeting the curve.  Then each line through a point gives one repair group,
which means lots of availability.
"""

from collections import Counter

from lrcodes.lifted import (binary_norm_trace_curve, build_hermitian_lifted, good_monomials,
                            hermitian_curve, intersection_sizes)

curve = hermitian_curve(4)
gm = good_monomials(curve, 3)
print(f"{len(curve.points)} points; {gm.baseline_count} low-degree monomials "
      f"plus sporadic {gm.sporadic}; rank {gm.rank}")

lc = build_hermitian_lifted(4)
cert = lc.certify()
print(f"n={lc.n} k={lc.k} locality {cert['locality']} availability {cert['availability']}")

# lines meet a norm-trace curve in only a few sizes
for r in (3, 4, 5):
    nt = binary_norm_trace_curve(r)
    print(f"r={r}: {len(nt.points)} points, line sizes {intersection_sizes(nt)}")

# the q=8 Hermitian code: 75 good monomials on 512 points
lc8 = build_hermitian_lifted(8)
sizes = Counter(len(gs) for gs in lc8.structure.groups)
print(f"q=8: n={lc8.n} k={lc8.k} groups per point {dict(sizes)}")
