"""Planar tree amplitudes from polygon triangulations.

The five-point amplitude is a sum over the five triangulations of the
pentagon, one inverse planar propagator per diagonal.  Written in the
adjacent two-particle invariants it is the classic five-term expression.
"""

from fractions import Fraction as F

from posgeom import (
    N5_MANDELSTAM_NAMES,
    enumerate_triangulations,
    kinematics_from_planar,
    polygon_diagonals,
    sample_kinematics,
    tree_amplitude,
    tree_amplitude_symbolic,
)
from posgeom.kinematics import planar_variables

print("triangulations of the pentagon:")
for t in enumerate_triangulations(5):
    print("   diagonals", t.diagonals)

print("\nsymbolic amplitude in adjacent invariants:")
print("  ", tree_amplitude_symbolic(5, N5_MANDELSTAM_NAMES))

unit = kinematics_from_planar(5, {d: F(1) for d in polygon_diagonals(5)})
print("\nall planar variables equal to one ->", tree_amplitude(unit))

k = sample_kinematics(6, seed=1)
print("\na six-point kinematic point (planar variables):")
for d, v in sorted(planar_variables(k).items()):
    print(f"   X{d[0]}{d[1]} = {v}")
print("six-point amplitude:", tree_amplitude(k))
print("triangulation count:", len(enumerate_triangulations(6)), "(Catalan)")
