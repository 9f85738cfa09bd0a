"""Mandelstam data for n massless particles.

A kinematic point is the symmetric n x n matrix s with zero diagonal and
vanishing row sums (momentum conservation).  Points are generated from the
n(n-3)/2 free planar variables X_ij, one per diagonal of the n-gon: the
inverse dictionary s_ab = X_{a,b+1} + X_{a+1,b} - X_{ab} - X_{a+1,b+1}
(indices mod n, edges and degenerate pairs contributing zero) produces a
conserving matrix identically, so sampling never has to solve constraints.

The dihedral exponents computed here are a different object from the planar
variables, even though the defining combination looks alike; the two are
kept as separate functions and never conflated.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Mapping, Sequence

Diagonal = tuple[int, int]


def polygon_diagonals(n: int) -> list[Diagonal]:
    """Diagonals (i,j) of the n-gon: 1 <= i < j <= n, j-i >= 2, (i,j) != (1,n)."""
    if n < 3:
        raise ValueError("polygon needs at least 3 vertices")
    return [(i, j) for i in range(1, n + 1) for j in range(i + 2, n + 1) if (i, j) != (1, n)]


def normalize_pair(i: int, j: int, n: int) -> Diagonal | None:
    """Reduce an index pair mod n to a canonical diagonal; None for edges/degenerate."""
    a = (i - 1) % n + 1
    b = (j - 1) % n + 1
    if a == b:
        return None
    a, b = min(a, b), max(a, b)
    if b - a == 1 or (a, b) == (1, n):
        return None
    return (a, b)


@dataclass(frozen=True)
class KinematicData:
    """Symmetric Mandelstam matrix with exact momentum conservation."""

    n: int
    s: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        n = self.n
        if n < 4:
            raise ValueError("kinematics requires n >= 4")
        if len(self.s) != n or any(len(row) != n for row in self.s):
            raise ValueError("s must be an n x n matrix")
        for i in range(n):
            if self.s[i][i] != 0:
                raise ValueError("s must have zero diagonal")
            for j in range(n):
                if self.s[i][j] != self.s[j][i]:
                    raise ValueError("s must be symmetric")
            if sum(self.s[i], Fraction(0)) != 0:
                raise ValueError(f"momentum conservation fails in row {i + 1}")

    def entry(self, i: int, j: int) -> Fraction:
        """s_ij with 1-based indices taken mod n."""
        a = (i - 1) % self.n
        b = (j - 1) % self.n
        return self.s[a][b]

    def to_dict(self) -> dict:
        return {"n": self.n, "s": [[str(v) for v in row] for row in self.s]}

    @classmethod
    def from_dict(cls, data: Mapping) -> "KinematicData":
        n = int(data["n"])
        s = tuple(tuple(Fraction(v) for v in row) for row in data["s"])
        return cls(n, s)


def kinematics_from_planar(n: int, planar: Mapping[Diagonal, Fraction]) -> KinematicData:
    """Build the Mandelstam matrix from free planar values on the diagonals."""
    diags = polygon_diagonals(n)
    missing = [d for d in diags if d not in planar]
    if missing:
        raise ValueError(f"missing planar values for {missing}")

    def xval(i: int, j: int) -> Fraction:
        d = normalize_pair(i, j, n)
        return Fraction(planar[d]) if d is not None else Fraction(0)

    s = [[Fraction(0)] * n for _ in range(n)]
    for a in range(1, n + 1):
        for b in range(a + 1, n + 1):
            val = xval(a, b + 1) + xval(a + 1, b) - xval(a, b) - xval(a + 1, b + 1)
            s[a - 1][b - 1] = val
            s[b - 1][a - 1] = val
    return KinematicData(n, tuple(tuple(row) for row in s))


def planar_variables(k: KinematicData) -> dict[Diagonal, Fraction]:
    """Planar variables X_ij = sum of s_ab over the window i <= a < b <= j-1."""
    out = {}
    for (i, j) in polygon_diagonals(k.n):
        total = Fraction(0)
        for a in range(i, j):
            for b in range(a + 1, j):
                total += k.s[a - 1][b - 1]
        out[(i, j)] = total
    return out


def subset_invariant(k: KinematicData, subset: Sequence[int]) -> Fraction:
    """Multiparticle invariant of a particle subset: sum of s_ab over pairs."""
    return sum((k.s[a - 1][b - 1] for a, b in combinations(sorted(subset), 2)), Fraction(0))


def is_generic(k: KinematicData) -> bool:
    """No vanishing multiparticle invariant (up to complementation).

    Vanishing subset invariants push scattering-equation roots onto the
    boundary of the moduli space and drop the critical-point count, so the
    sampler screens them out.
    """
    for size in range(2, k.n // 2 + 1):
        for subset in combinations(range(1, k.n + 1), size):
            if subset_invariant(k, subset) == 0:
                return False
    return True


def sample_kinematics(n: int, seed: int, positive: bool = False) -> KinematicData:
    """Deterministic kinematics from free planar values on a rational grid.

    positive=True samples every planar variable > 0 (the region used by the
    string-integral limit); otherwise values are nonzero of either sign.
    Draws are repeated (still deterministically) until no multiparticle
    invariant vanishes.
    """
    rng = random.Random(seed)
    for _ in range(64):
        planar = {}
        for d in polygon_diagonals(n):
            if positive:
                planar[d] = Fraction(rng.randint(1, 120), 12)
            else:
                v = 0
                while v == 0:
                    v = rng.randint(-120, 120)
                planar[d] = Fraction(v, 12)
        k = kinematics_from_planar(n, planar)
        if is_generic(k):
            return k
    raise RuntimeError("could not sample generic kinematics")


def dihedral_exponents(k: KinematicData) -> dict[Diagonal, Fraction]:
    """Exponents X_ij = s_{i,j+1} + s_{i+1,j} - s_ij - s_{i+1,j+1}, indices mod 5."""
    if k.n != 5:
        raise ValueError("dihedral exponents are defined here for n = 5")
    out = {}
    for (i, j) in polygon_diagonals(5):
        out[(i, j)] = k.entry(i, j + 1) + k.entry(i + 1, j) - k.entry(i, j) - k.entry(i + 1, j + 1)
    return out


def cyclic_relabel(k: KinematicData, shift: int = 1) -> KinematicData:
    """Relabel particles i -> i + shift (mod n)."""
    n = k.n
    s = tuple(
        tuple(k.s[(i + shift) % n][(j + shift) % n] for j in range(n)) for i in range(n)
    )
    return KinematicData(n, s)


def abhy_constants(k: KinematicData) -> tuple[Fraction, Fraction, Fraction]:
    """Mesh constants (c13, c14, c24) of the pentagon realization for n = 5.

    c13 = X13 + X24 - X14, c14 = X14 + X25 - X24, c24 = X24 + X35 - X25 in
    the planar variables of k.  All three must be positive for the pentagon
    to exist; sample_abhy_kinematics generates such points.
    """
    if k.n != 5:
        raise ValueError("the pentagon realization is for n = 5")
    x = planar_variables(k)
    c13 = x[(1, 3)] + x[(2, 4)] - x[(1, 4)]
    c14 = x[(1, 4)] + x[(2, 5)] - x[(2, 4)]
    c24 = x[(2, 4)] + x[(3, 5)] - x[(2, 5)]
    return c13, c14, c24


def sample_abhy_kinematics(seed: int) -> KinematicData:
    """n=5 kinematics with all planar variables positive and positive mesh
    constants: a random point in the interior of a random pentagon."""
    rng = random.Random(seed)
    c13 = Fraction(rng.randint(1, 36), 6)
    c14 = Fraction(rng.randint(1, 36), 6)
    c24 = Fraction(rng.randint(1, 36), 6)
    corners = [
        (c24, Fraction(0)),
        (c13 + c14 + c24, Fraction(0)),
        (c13, c14 + c24),
        (Fraction(0), c14 + c24),
        (Fraction(0), c24),
    ]
    weights = [Fraction(rng.randint(1, 20)) for _ in corners]
    total = sum(weights)
    a = sum(w * v[0] for w, v in zip(weights, corners)) / total
    b = sum(w * v[1] for w, v in zip(weights, corners)) / total
    planar = {
        (2, 4): a,
        (3, 5): b,
        (2, 5): a + b - c24,
        (1, 4): c14 + c24 - b,
        (1, 3): c13 + c14 + c24 - a - b,
    }
    return kinematics_from_planar(5, planar)
