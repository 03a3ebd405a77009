"""
Exponent map in the (1/r, 1/q) square
=====================================

Prints a coarse text map of the sharp decoupling exponent for d = 1 and 2,
then lists the corners where the exponent first becomes zero.
"""
from fractions import Fraction

import numpy as np

from mixdec import exponents as ex

for d in (1, 2):
    print(f"d = {d}: sharp exponent, rows 1/q from 1/2 down to 0, columns 1/r from 0 to 1/2")
    grid = np.linspace(0, 0.5, 11)
    for iq in grid[::-1]:
        q = np.inf if iq == 0 else 1 / iq
        row = []
        for ir in grid:
            r = np.inf if ir == 0 else 1 / ir
            row.append(f"{float(ex.sharp_exponent(q, r, d)):5.2f}")
        print(f"  1/q={iq:4.2f} " + " ".join(row))
    print()

# corners of the zero region, exactly
for d, q, r in [(1, 6, 6), (1, 2, 6), (2, 4, 4), (3, 2, Fraction(10, 3))]:
    rep = ex.classify(q, r, d)
    print(d, q, r, rep.in_region, rep.sharp, rep.case.value)

# outside the region the four-term lower bound meets the sharp value
print(ex.lower_bound_terms(2, 10, 1), ex.sharp_exponent(2, 10, 1))
