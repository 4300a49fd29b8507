"""
A first locally recoverable code
================================

Twelve symbols over GF(13), six of them information, and every symbol can be
rebuilt from two others.
"""

import numpy as np

from lrcodes import field_of_order, min_distance_bruteforce, singleton_lrc
from lrcodes.evalcode import format_word, parse_word
from lrcodes.poly import lagrange
from lrcodes.tamo_barg import build_tamo_barg, good_from_multiplicative

F = field_of_order(13)

# x -> x^3 is constant on the cosets of the cube roots of unity, which splits
# the twelve nonzero elements into four groups of three
good = good_from_multiplicative(F, 2)
print("groups:", good.partition)

lc = build_tamo_barg(F, 2, 6)
print(f"n={lc.n} k={lc.k} design distance {lc.code.design_distance}")

# a received word with the symbol at x=5 lost
received = parse_word("1 3 1 4 ? 1 1 10 1 3 11 7", F)
fixed, report = lc.recover(received)
print("recovered:", format_word(fixed), "| symbols read:", report.bandwidth)

# what the repair did, by hand: the line through (2, 3) and (6, 1), read at 5
h = lagrange(F, [(2, 3), (6, 1)])
print("interpolant", h, "gives", h(np.array([5]))[0])

# the code sits exactly on the Singleton-type bound
d = min_distance_bruteforce(lc.code)
print("brute-force distance", d, "bound", singleton_lrc(lc.n, lc.k, 2))
