"""Annihilating operators of an Euler integral and their numeric check.

The two-variable blueprint integrand has seven free coefficients; its
integral satisfies five homogeneity operators and two binomial operators
read off the kernel of the exponent matrix.  Finite differences on the
numerically evaluated integral confirm annihilation.
"""

from posgeom import (
    annihilation_residual,
    blueprint_integrand,
    evaluate_euler,
    gkz_operators,
    restricted_integrand,
)
from fractions import Fraction as F

integrand = blueprint_integrand()
ops = gkz_operators(integrand)
print("homogeneity operators:")
for op in ops["euler"]:
    print("  ", op)
print("binomial operators:")
for op in ops["toric"]:
    print("  ", op)

value = evaluate_euler(integrand, [1.0] * 7, {"eps": 0.25})
print(f"\nintegral at unit coefficients, eps = 1/4: {value:.10f}")

for op in ops["toric"]:
    residual = annihilation_residual(op, integrand, [1.0] * 7, h=0.05, params={"eps": 0.25})
    print(f"annihilation residual of {op}: {residual:.2e}")

psi = restricted_integrand((-1, -1, -1), (F(1, 2), F(1, 2)))
print(f"\nrestricted integral (constants only varying) at (1,1,1): "
      f"{evaluate_euler(psi, [1.0] * 7):.10f}")
