"""
Two recovery sets per symbol
============================

Points of the Hermitian curve over GF(9) can be grouped by x, and points of
the Giulietti-Korchmaros curve can be grouped two different ways.  The second
gives every symbol two disjoint repair groups.
"""

from lrcodes.curve_cover import build_hermitian_lrc
from lrcodes.fiber_avail import build_gk_lrc, disjoint_pairs

herm = build_hermitian_lrc(3, 2)
cert = herm.certify()
print(f"Hermitian: n={herm.n} k={herm.k} locality {cert['locality']}")

gk = build_gk_lrc(3, 3, 1)
cert = gk.certify()
print(f"GK: n={gk.n} k={gk.k} localities {cert['localities']} "
      f"availability {cert['availability']}")
print("the two groups of every point are disjoint:", disjoint_pairs(gk.structure))

# lose a symbol and one of its helpers: the other group still works
target = 0
r2 = next(g for g in gk.structure.groups[target] if g.label.startswith("R2"))
word = gk.code.encode(list(range(gk.k)))
received = [None if j in (target, r2.support[0]) else int(v) for j, v in enumerate(word)]
fixed, report = gk.recover(received)
print("both erasures repaired:", list(fixed) == list(map(int, word)),
      "| symbols read:", report.bandwidth)
