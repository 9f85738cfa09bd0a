"""Lines in projective 3-space against the twisted-cubic configuration:
membership by sign patterns, stabbing, and the adjoint by interpolation.

A line is a member iff its cyclic bracket chain has one uniform sign and
the first-row bracket sequence flips sign exactly twice (zeros skipped).
Members always stab the cyclic polytope; the line through two facet
centroids stabs but is not a member.  The unique linear form vanishing on
the five special lines is the adjoint.
"""

from posgeom import (
    adjoint_interpolation,
    brackets,
    centroid_stab_line,
    membership,
    random_member,
    special_line,
    stabs,
    twisted_cubic_z,
)

z = twisted_cubic_z([1, 2, 3, 4, 5])
print("rows of the configuration:", *z.rows, sep="\n   ")

line = random_member(z, seed=11)
verdict = membership(line, z)
print("\nrandom positive image: member =", verdict.member)
print("   chain signs:", verdict.chain_signs, "| flip count:", verdict.flip_count)

cl = centroid_stab_line(z)
verdict = membership(cl, z)
br = brackets(*cl, z)
print("\ncentroid line: member =", verdict.member)
print("   bracket (12) =", br[(1, 2)], "| bracket (34) =", br[(3, 4)], "(opposite signs)")
print("   stabs the polytope:", stabs(cl, z))

print("\nspecial interpolation lines (through Z_i, meeting two chords):")
for i in range(1, 6):
    print(f"   line {i}: pluecker {special_line(i, z).p}")
coeffs = adjoint_interpolation(z)
labels = ["12", "13", "14", "23", "24", "34"]
form = " + ".join(f"({c})p{l}" for c, l in zip(coeffs, labels))
print("\nadjoint linear form:", form)
