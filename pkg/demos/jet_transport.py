#!/usr/bin/env python3
"""
Truncated power series as jets, and what flow transport buys us.  The
radial phase of the built-in sphere model is 2 ln cosh(2 pi rho) in the
arc-length parameter, which we never hard-code anywhere; it emerges from
integrating the Hamiltonian along its own flow with series coefficients.
The script prints the transported series next to the closed form, then
shows the same coefficients coming out of nested first-order jets with
no differential equation involved.
"""
import math
from fractions import Fraction

from lapasym import (
    TruncatedSeries,
    builtin_sphere_model,
    iterated_flow_derivatives,
    jets,
    radial_profile,
)

##################################################
# series arithmetic warm-up: (1 + t)**(1/2) via exp and log jets

t = TruncatedSeries.variable(0, 5)
root = jets.sqrt(1 + t)
print("sqrt(1 + t) coefficients:", [root.coefficient(p) for p in range(6)])
print("squared back:            ",
      [(root * root).coefficient(p) for p in range(6)])

##################################################
# transported radial series for the sphere action

sphere = builtin_sphere_model()
series = radial_profile(sphere, (1,), order=8)

print()
print("phase series vs 2 ln cosh(2 pi rho):")
closed = {2: 4 * math.pi ** 2, 4: -8 * math.pi ** 4 / 3, 6: 128 * math.pi ** 6 / 45,
          8: -1088 * math.pi ** 8 / 315}
for p in range(2, 9):
    got = float(series.phase.coefficient(p))
    want = closed.get(p, 0.0)
    print(f"  rho^{p}  transported={got: .12e}  closed={want: .12e}")

##################################################
# the same numbers from nested first-order jets (Lie derivatives of phi
# along the flow field, no ODE solve)

field = lambda c: sphere.flow_field((1,), c)
values = iterated_flow_derivatives(lambda c: sphere.phi((1,), c), field, (0.0, 0.0), 7)
print()
print("phase coefficient p equals 2 * (iterated derivative p-1) / p!:")
for p in range(2, 9):
    nested = 2.0 * values[p - 1] / math.factorial(p)
    got = float(series.phase.coefficient(p))
    print(f"  p={p}  nested={nested: .12e}  transported={got: .12e}")

##################################################
# rational inputs stay rational end to end

poly_series = TruncatedSeries([Fraction(0), Fraction(1, 3), Fraction(2, 7)])
print()
print("exact arithmetic:", (poly_series * poly_series).coefficient(2),
      "=", Fraction(1, 9))
