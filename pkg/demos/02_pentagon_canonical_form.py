"""The pentagon whose canonical function is the five-point amplitude.

The canonical function of a polytope is the normalized dual volume
d! vol((P - x) polar), computed here two independent ways (fan
triangulation and the vertex sum over adjacent facet pairs).  For the
pentagon realization with facet forms equal to the planar variables, the
canonical function evaluated at (s23, s34) reproduces the amplitude
exactly, in rational arithmetic.
"""

from fractions import Fraction as F

from posgeom import (
    abhy_constants,
    abhy_pentagon,
    adjoint,
    canonical_function,
    canonical_vertex_sum,
    dual_volume_oracle,
    rf_equal,
    sample_abhy_kinematics,
    tree_amplitude,
)
from posgeom.polytope import Polytope, abhy_identity_symbolic

square = Polytope.from_vertices([(0, 0), (1, 0), (1, 1), (0, 1)])
print("unit square canonical function:", canonical_function(square))
print("value at the center:", canonical_function(square).evaluate({"x1": F(1, 2), "x2": F(1, 2)}))
print("2! x polar dual area:", dual_volume_oracle(square, (F(1, 2), F(1, 2))))

pentagon = abhy_pentagon(1, 1, 1)
print("\npentagon with unit constants, vertices:", pentagon.vertices)
print("fan and vertex-sum routes agree:",
      rf_equal(canonical_function(pentagon, ("a", "b")), canonical_vertex_sum(pentagon, ("a", "b"))))
print("adjoint (degree v-3 = 2):", adjoint(pentagon, ("a", "b")))

fan, five_terms = abhy_identity_symbolic()
print("\nsymbolic identity in (a, b, c13, c14, c24):", rf_equal(fan, five_terms))

k = sample_abhy_kinematics(seed=7)
tree = tree_amplitude(k)
p = abhy_pentagon(*abhy_constants(k))
value = canonical_function(p, ("a", "b")).evaluate({"a": k.entry(2, 3), "b": k.entry(3, 4)})
print("\nseeded kinematics: tree amplitude         =", tree)
print("            dual volume at (s23, s34) =", value)
print("exactly equal:", tree == value)
