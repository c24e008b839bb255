"""
Hirzebruch-Jung chains
======================

The cyclic quotient singularity 1/r(1, q) resolves into a chain of curves
whose negated self-intersections form the continued fraction of r/q.
"""

from fractions import Fraction
from math import gcd

from shrinkcy import hj_resolve


def value(chain):
    v = Fraction(-chain[-1])
    for b in reversed(chain[:-1]):
        v = -b - 1 / v
    return v


for r in range(2, 9):
    for q in range(1, r):
        if gcd(r, q) == 1:
            chain = hj_resolve(r, q)
            print(f"1/{r}(1,{q}): {chain}  r/q = {value(chain)}")
