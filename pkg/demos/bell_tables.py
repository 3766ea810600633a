#!/usr/bin/env python3
"""
The combinatorial layer in isolation.  Partial Bell polynomials organize
how derivatives compose, complete Bell polynomials count set partitions,
and the closely related series-power coefficients expand (sum x_i t^i)^r
without ever forming the power explicitly.  Everything here is exact
integer or rational arithmetic.
"""
from fractions import Fraction

from lapasym import (
    TruncatedSeries,
    complete_bell,
    exp_series,
    partial_bell,
    series_power_coefficient,
)

##################################################
# the Bell triangle at x = (1, 1, 1, ...): entry (j, l) counts the set
# partitions of j elements into exactly l blocks (Stirling numbers),
# row sums give the Bell numbers

ones = [1] * 8
print("partial Bell triangle and row sums:")
for j in range(7):
    row = [partial_bell(j, l, ones) for l in range(1, j + 1)]
    print(f"  j={j}  {row}  sum={complete_bell(j, ones)}")

##################################################
# series-power coefficient (6, 3): the worked example
#   6 x1 x2 x3 + 3 x1^2 x4 + x2^3
# checked by evaluating both sides on deliberately incommensurate inputs

x = [Fraction(2), Fraction(3), Fraction(5), Fraction(7), Fraction(11), Fraction(13)]
x1, x2, x3, x4 = x[0], x[1], x[2], x[3]
lhs = series_power_coefficient(6, 3, x)
rhs = 6 * x1 * x2 * x3 + 3 * x1 ** 2 * x4 + x2 ** 3
print()
print(f"series power (m=6, r=3): library={lhs}  hand-expanded={rhs}")

##################################################
# the exponential connection: the t^j coefficient of exp(sum x_i t^i)
# equals complete_bell(j, [1! x_1, 2! x_2, ...]) / j!

import math

h = TruncatedSeries([0, Fraction(1, 2), Fraction(-1, 3), Fraction(1, 5), 0, 0, 0])
expanded = exp_series(h)
print()
print("exp-series coefficients vs rescaled complete Bell values:")
for j in range(7):
    scaled = [math.factorial(i + 1) * h.coefficient(i + 1) for i in range(j)] + [0]
    bell_route = Fraction(complete_bell(j, scaled), math.factorial(j))
    print(f"  j={j}  exp_series={expanded.coefficient(j)}  bell={bell_route}")
