"""Polytopes with exact rational data and their canonical functions.

A polytope carries both an H-representation (irredundant facets a.x <= b)
and a V-representation (irredundant vertices); conversions are brute-force
subset enumeration with exact arithmetic, which is entirely adequate at
desk scale (dimension <= 3, a handful of facets).

The canonical function adopted here is d! * vol((P - x) polar), i.e. the
normalized dual volume.  For a simplex it is the closed form

    1 / (d! * vol(S) * prod of barycentric coordinates),

and a general polytope is handled by summing a fan triangulation from one
vertex.  Simple polytopes admit a second route, the sum over vertices of
|det of the active facet normals| / product of the active facet forms; the
two routes agree exactly and the test suite insists on it.  This is the
unique normalization for which the pentagon built by abhy_pentagon has unit
numerators over adjacent facet pairs, so its canonical function reproduces
the five-point tree amplitude.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key
from itertools import combinations
from typing import Mapping, Sequence

from .exact import (
    Polynomial,
    RationalFunction,
    det,
    matrix_rank,
    solve_linear,
)

Vector = tuple[Fraction, ...]
Facet = tuple[Vector, Fraction]  # (a, b) meaning a.x <= b


def _fracvec(v: Sequence) -> Vector:
    return tuple(Fraction(x) for x in v)


def _primitive_facet(a: Vector, b: Fraction) -> Facet:
    l = 1
    for v in (*a, b):
        l = l * v.denominator // math.gcd(l, v.denominator)
    ints = [int(v * l) for v in (*a, b)]
    g = 0
    for x in ints:
        g = math.gcd(g, abs(x))
    if g > 1:
        ints = [x // g for x in ints]
    return tuple(Fraction(x) for x in ints[:-1]), Fraction(ints[-1])


def _dot(a: Sequence, x: Sequence) -> Fraction:
    return sum((u * v for u, v in zip(a, x)), Fraction(0))


@dataclass(frozen=True)
class Polytope:
    """Bounded full-dimensional polytope with matching H- and V-data."""

    dim: int
    facets: tuple[Facet, ...]
    vertices: tuple[Vector, ...]

    # ------------------------------------------------------------ builders
    @classmethod
    def from_vertices(cls, points: Sequence[Sequence]) -> "Polytope":
        points = sorted({_fracvec(p) for p in points})
        if not points:
            raise ValueError("no points given")
        d = len(points[0])
        if any(len(p) != d for p in points):
            raise ValueError("points of mixed dimension")
        base = points[0]
        if matrix_rank([[p[i] - base[i] for i in range(d)] for p in points[1:]]) < d:
            raise ValueError("point set is lower-dimensional")

        facets: set[Facet] = set()
        for subset in combinations(points, d):
            sol = solve_linear([list(p) + [-1] for p in subset])
            if sol.status != "kernel" or len(sol.kernel) != 1:
                continue
            cand = sol.kernel[0]
            a, b = _fracvec(cand[:d]), Fraction(cand[d])
            if all(v == 0 for v in a):
                continue
            sides = {_dot(a, p) - b for p in points}
            if all(s <= 0 for s in sides):
                facets.add(_primitive_facet(a, b))
            elif all(s >= 0 for s in sides):
                facets.add(_primitive_facet(tuple(-v for v in a), -b))

        facet_list = tuple(sorted(facets))
        vertices = []
        for p in points:
            active = [a for (a, b) in facet_list if _dot(a, p) == b]
            if len(active) >= d and matrix_rank(active) == d:
                vertices.append(p)
        return cls(d, facet_list, tuple(sorted(vertices)))

    @classmethod
    def from_halfspaces(cls, halfspaces: Sequence[tuple[Sequence, object]]) -> "Polytope":
        hs = [(_fracvec(a), Fraction(b)) for a, b in halfspaces]
        if not hs:
            raise ValueError("no halfspaces given")
        d = len(hs[0][0])
        if d == 1:
            if not any(a[0] > 0 for a, _ in hs) or not any(a[0] < 0 for a, _ in hs):
                raise ValueError("unbounded halfline")
        else:
            # recession cone must be trivial: any extreme recession ray is
            # tight on d-1 normals, so subset enumeration certifies boundedness
            for subset in combinations([a for a, _ in hs], d - 1):
                sol = solve_linear([list(a) for a in subset]) if subset else None
                dirs = sol.kernel if sol is not None else ()
                for v in dirs:
                    for sgn in (1, -1):
                        ray = [sgn * Fraction(x) for x in v]
                        if any(x != 0 for x in ray) and all(_dot(a, ray) <= 0 for a, _ in hs):
                            raise ValueError("halfspace intersection is unbounded")
        verts: set[Vector] = set()
        for subset in combinations(hs, d):
            sol = solve_linear([list(a) for a, _ in subset], [b for _, b in subset])
            if sol.status != "unique":
                continue
            x = sol.solution
            if all(_dot(a, x) <= b for a, b in hs):
                verts.add(tuple(x))
        if not verts:
            raise ValueError("halfspace intersection is empty")
        return cls.from_vertices(sorted(verts))

    # ----------------------------------------------------------- predicates
    def contains(self, x: Sequence, strict: bool = False) -> bool:
        x = _fracvec(x)
        if strict:
            return all(_dot(a, x) < b for a, b in self.facets)
        return all(_dot(a, x) <= b for a, b in self.facets)

    def active_facets(self, v: Sequence) -> list[Facet]:
        v = _fracvec(v)
        return [(a, b) for (a, b) in self.facets if _dot(a, v) == b]

    def is_simple(self) -> bool:
        return all(len(self.active_facets(v)) == self.dim for v in self.vertices)

    def centroid(self) -> Vector:
        n = len(self.vertices)
        return tuple(sum(v[i] for v in self.vertices) / n for i in range(self.dim))

    # --------------------------------------------------------------- volume
    def boundary_cycle(self) -> list[Vector]:
        """Vertices of a polygon in counterclockwise order (dim 2 only)."""
        if self.dim != 2:
            raise ValueError("boundary cycle is only defined for polygons")
        c = self.centroid()
        dirs = [(v[0] - c[0], v[1] - c[1]) for v in self.vertices]

        def half(u):
            return 0 if (u[1] > 0 or (u[1] == 0 and u[0] > 0)) else 1

        def cmp(i, j):
            u, v = dirs[i], dirs[j]
            if half(u) != half(v):
                return -1 if half(u) < half(v) else 1
            cross = u[0] * v[1] - u[1] * v[0]
            return 0 if cross == 0 else (-1 if cross > 0 else 1)

        order = sorted(range(len(self.vertices)), key=cmp_to_key(cmp))
        return [self.vertices[i] for i in order]

    def volume(self) -> Fraction:
        if self.dim == 1:
            xs = [v[0] for v in self.vertices]
            return max(xs) - min(xs)
        if self.dim == 2:
            cyc = self.boundary_cycle()
            twice = Fraction(0)
            for p, q in zip(cyc, cyc[1:] + cyc[:1]):
                twice += p[0] * q[1] - p[1] * q[0]
            return abs(twice) / 2
        raise NotImplementedError("volume implemented for dim <= 2")

    # ----------------------------------------------------------------- JSON
    def to_dict(self) -> dict:
        return {
            "dim": self.dim,
            "H": [{"a": [str(v) for v in a], "b": str(b)} for a, b in self.facets],
            "V": [[str(x) for x in v] for v in self.vertices],
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "Polytope":
        if data.get("V"):
            return cls.from_vertices(data["V"])
        return cls.from_halfspaces([(f["a"], f["b"]) for f in data["H"]])


def default_variables(dim: int) -> tuple[str, ...]:
    return tuple(f"x{i + 1}" for i in range(dim))


def facet_form(facet: Facet, variables: Sequence[str]) -> Polynomial:
    """The linear form b - a.x, positive on the interior."""
    a, b = facet
    terms = {tuple(0 for _ in variables): b}
    for i, coeff in enumerate(a):
        expo = tuple(1 if j == i else 0 for j in range(len(variables)))
        terms[expo] = -coeff
    return Polynomial(tuple(variables), terms)


def simplex_canonical(
    simplex: Polytope | Sequence[Sequence], variables: Sequence[str] | None = None
) -> RationalFunction:
    """Canonical function of a simplex: 1/(d! vol * product of barycentrics)."""
    verts = simplex.vertices if isinstance(simplex, Polytope) else tuple(_fracvec(p) for p in simplex)
    d = len(verts[0])
    if len(verts) != d + 1:
        raise ValueError("a d-simplex has d + 1 vertices")
    variables = tuple(variables) if variables else default_variables(d)
    m = [list(v) + [Fraction(1)] for v in verts]
    big = det(m)
    if big == 0:
        raise ValueError("degenerate simplex")

    denominator = Polynomial.const(1, variables)
    for i in range(d + 1):
        # det of m with row i replaced by (x, 1), expanded along that row
        coeffs = []
        for j in range(d + 1):
            minor = [row[:j] + row[j + 1 :] for r, row in enumerate(m) if r != i]
            coeffs.append((-1) ** (i + j) * det(minor))
        terms = {tuple(0 for _ in variables): coeffs[d]}
        for j in range(d):
            expo = tuple(1 if t == j else 0 for t in range(d))
            terms[expo] = coeffs[j]
        denominator = denominator * Polynomial(variables, terms)

    scale = big ** (d + 1) / abs(big)
    return RationalFunction(Polynomial.const(scale, variables), denominator)


def _canonical_parts(
    p: Polytope, variables: tuple[str, ...], apex: int
) -> tuple[Polynomial, Polynomial]:
    """Fan-triangulation canonical function reduced onto the facet product.

    The raw fan sum carries cancelling factors along the internal walls of
    the fan; since the true poles are simple and live on the facet
    hyperplanes, multiplying by the full facet product and dividing exactly
    by the fan denominator removes them.
    """
    if p.dim == 1:
        rf = simplex_canonical(p, variables)
        pieces = [(rf.num, rf.den)]
    elif p.dim == 2:
        cyc = p.boundary_cycle()
        k = len(cyc)
        apex = apex % k
        v0 = cyc[apex]
        pieces = []
        for i in range(k):
            j = (i + 1) % k
            if i == apex or j == apex:
                continue
            rf = simplex_canonical([v0, cyc[i], cyc[j]], variables)
            pieces.append((rf.num, rf.den))
    else:
        raise NotImplementedError("canonical_function implemented for dim <= 2")

    num, den = pieces[0]
    for n, d in pieces[1:]:
        num = num * d + n * den
        den = den * d
    target = Polynomial.const(1, variables)
    for f in p.facets:
        target = target * facet_form(f, variables)
    reduced = (num * target).divexact(den)
    if reduced is None:
        raise AssertionError("fan denominator does not divide the facet product form")
    return reduced, target


def canonical_parts(
    p: Polytope, variables: Sequence[str] | None = None, apex: int = 0
) -> tuple[Polynomial, Polynomial]:
    """(numerator, facet-product denominator), both positive on the interior."""
    variables = tuple(variables) if variables else default_variables(p.dim)
    return _canonical_parts(p, variables, apex)


def canonical_function(
    p: Polytope, variables: Sequence[str] | None = None, apex: int = 0
) -> RationalFunction:
    """Canonical function via a fan triangulation from one vertex, returned
    over the facet-product denominator (all poles simple, on facets only).

    The result is independent of the apex; tests verify this exactly.
    """
    variables = tuple(variables) if variables else default_variables(p.dim)
    num, den = _canonical_parts(p, variables, apex)
    return RationalFunction(num, den)


def canonical_vertex_sum(p: Polytope, variables: Sequence[str] | None = None) -> RationalFunction:
    """Second route for simple polytopes: sum over vertices of
    |det of active normals| / product of active facet forms, assembled over
    the common denominator of all facet forms."""
    if not p.is_simple():
        raise ValueError("vertex-sum formula requires a simple polytope")
    variables = tuple(variables) if variables else default_variables(p.dim)
    forms = {f: facet_form(f, variables) for f in p.facets}
    numerator = Polynomial.zero(variables)
    for v in p.vertices:
        active = p.active_facets(v)
        weight = abs(det([list(a) for a, _ in active]))
        term = Polynomial.const(weight, variables)
        for f in p.facets:
            if f not in active:
                term = term * forms[f]
        numerator = numerator + term
    denominator = Polynomial.const(1, variables)
    for f in p.facets:
        denominator = denominator * forms[f]
    return RationalFunction(numerator, denominator)


def adjoint(p: Polytope, variables: Sequence[str] | None = None) -> Polynomial:
    """Numerator of the canonical function over the full facet product,
    with integer content removed; positive on the interior of P."""
    variables = tuple(variables) if variables else default_variables(p.dim)
    num, _ = _canonical_parts(p, variables, 0)
    return num.primitive()


def polar_dual(p: Polytope, x0: Sequence) -> Polytope:
    """Polar dual of P - x0 for an interior point x0."""
    x0 = _fracvec(x0)
    if not p.contains(x0, strict=True):
        raise ValueError("polar dual needs a strictly interior base point")
    halfspaces = [(tuple(v[i] - x0[i] for i in range(p.dim)), Fraction(1)) for v in p.vertices]
    return Polytope.from_halfspaces(halfspaces)


def dual_volume_oracle(p: Polytope, x0: Sequence) -> Fraction:
    """d! times the exact volume of (P - x0) polar: the independent check
    that pins the normalization of canonical_function."""
    return math.factorial(p.dim) * polar_dual(p, x0).volume()


# --------------------------------------------------------------------------
# the pentagon realization
# --------------------------------------------------------------------------

# facet label -> (normal a, offset b as combination of (1, c13, c14, c24))
_ABHY_FACETS: dict[tuple[int, int], tuple[tuple[int, int], tuple[int, int, int]]] = {
    (2, 4): ((-1, 0), (0, 0, 0)),
    (3, 5): ((0, -1), (0, 0, 0)),
    (2, 5): ((-1, -1), (0, 0, -1)),
    (1, 4): ((0, 1), (0, 1, 1)),
    (1, 3): ((1, 1), (1, 1, 1)),
}


def abhy_pentagon(c13, c14, c24) -> Polytope:
    """Pentagon in coordinates (a, b) whose five facet forms are the planar
    variables: X24 = a, X35 = b, X25 = a+b-c24, X14 = c14+c24-b,
    X13 = c13+c14+c24-a-b.  Requires positive mesh constants."""
    c13, c14, c24 = Fraction(c13), Fraction(c14), Fraction(c24)
    if c13 <= 0 or c14 <= 0 or c24 <= 0:
        raise ValueError("pentagon constants must be positive")
    cs = (c13, c14, c24)
    halfspaces = []
    for normal, offset in _ABHY_FACETS.values():
        b = sum((Fraction(w) * c for w, c in zip(offset, cs)), Fraction(0))
        halfspaces.append((tuple(Fraction(x) for x in normal), b))
    return Polytope.from_halfspaces(halfspaces)


def abhy_facet_forms(c13, c14, c24, variables: Sequence[str] = ("a", "b")) -> dict:
    """The five facet linear forms keyed by their planar-variable label."""
    cs = (Fraction(c13), Fraction(c14), Fraction(c24))
    out = {}
    for label, (normal, offset) in _ABHY_FACETS.items():
        b = sum((Fraction(w) * c for w, c in zip(offset, cs)), Fraction(0))
        out[label] = facet_form((_fracvec(normal), b), tuple(variables))
    return out


# vertex structure of the pentagon: the five adjacent facet pairs
ABHY_VERTEX_PAIRS = (
    ((1, 3), (1, 4)),
    ((2, 4), (2, 5)),
    ((1, 3), (3, 5)),
    ((2, 4), (1, 4)),
    ((2, 5), (3, 5)),
)


def abhy_identity_symbolic() -> tuple[RationalFunction, RationalFunction]:
    """Canonical function of the pentagon versus the five-term planar sum as
    rational functions in (a, b, c13, c14, c24).

    The left side is computed by the fan triangulation with symbolic mesh
    constants (the three triangle orientations are sign-definite on the
    positive chamber because their determinants have positive coefficients);
    the right side is the sum of 1/(X X') over adjacent facet pairs.  The two
    must be rf-equal; the acceptance suite asserts it.
    """
    variables = ("a", "b", "c13", "c14", "c24")
    c13 = Polynomial.variable("c13")
    c14 = Polynomial.variable("c14")
    c24 = Polynomial.variable("c24")
    zero = Polynomial.const(0)
    one = Polynomial.const(1)

    forms = {}
    a = Polynomial.variable("a")
    b = Polynomial.variable("b")
    forms[(2, 4)] = a
    forms[(3, 5)] = b
    forms[(2, 5)] = a + b - c24
    forms[(1, 4)] = c14 + c24 - b
    forms[(1, 3)] = c13 + c14 + c24 - a - b

    amplitude = RationalFunction(Polynomial.zero(variables))
    for f, g in ABHY_VERTEX_PAIRS:
        amplitude = amplitude + RationalFunction(one, forms[f] * forms[g])

    corners = [
        (c24, zero),
        (c13 + c14 + c24, zero),
        (c13, c14 + c24),
        (zero, c14 + c24),
        (zero, c24),
    ]
    fan = RationalFunction(Polynomial.zero(variables))
    apex = corners[0]
    for corner_b, corner_c in zip(corners[1:-1], corners[2:]):
        tri = (apex, corner_b, corner_c)

        def row_det(rows):
            r0, r1, r2 = rows
            return (
                r0[0] * (r1[1] - r2[1])
                - r0[1] * (r1[0] - r2[0])
                + (r1[0] * r2[1] - r1[1] * r2[0])
            )

        orientation = row_det(tri)
        if any(c < 0 for c in orientation.terms.values()):
            raise AssertionError("fan triangle is not positively oriented on the chamber")
        denominator = one
        for i in range(3):
            rows = list(tri)
            rows[i] = (a, b)
            denominator = denominator * row_det(rows)
        fan = fan + RationalFunction(orientation * orientation, denominator)
    return fan, amplitude
