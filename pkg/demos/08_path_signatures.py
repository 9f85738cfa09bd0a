"""Exact truncated signatures of piecewise linear paths.

Signatures are stacks of iterated-integral tensors; segments contribute
tensor exponentials composed by Chen's rule.  With rational arithmetic the
classical identities are exact equalities, shown here on the vertex path of
a cyclic polytope.
"""

from posgeom import (
    cyclic_path,
    identity_stack,
    shuffle_check,
    signature,
)
from posgeom.signature import PiecewiseLinearPath

corner = PiecewiseLinearPath.from_points([(0, 0), (1, 0), (1, 1)])
stack = signature(corner, 2)
print("two-segment corner path, level-2 entries:")
for word in ([1, 1], [1, 2], [2, 1], [2, 2]):
    print(f"   sigma{word} = {stack.entry(word)}")

print("\nshuffle identity sigma_1 sigma_2 = sigma_12 + sigma_21:",
      shuffle_check(stack, [1], [2]))

path = cyclic_path([1, 2, 3, 4, 5], 3)
print("\nvertex path of the cyclic polytope (moment curve nodes 1..5):")
print("   breakpoints:", *path.points, sep="\n      ")
sig = signature(path, 3)
print("   displacement:", [str(sig.entry([i])) for i in (1, 2, 3)])
print("   a level-3 entry sigma[1,2,3] =", sig.entry([1, 2, 3]))

reverse_product = signature(path.reversed(), 3).product(sig)
print("   reversed path inverts the signature:", reverse_product == identity_stack(3, 3))
refined = path.refined(2)
print("   midpoint refinement leaves it unchanged:", signature(refined, 3) == sig)
