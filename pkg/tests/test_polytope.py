import math
import random
from fractions import Fraction as F

import pytest

from posgeom.exact import PoleError, RationalFunction, det, rf_equal
from posgeom.polytope import (
    Polytope,
    abhy_facet_forms,
    abhy_identity_symbolic,
    abhy_pentagon,
    adjoint,
    canonical_function,
    canonical_vertex_sum,
    dual_volume_oracle,
    polar_dual,
    simplex_canonical,
)


def moment_polygon(seed, nvert, spread=12):
    """Random convex polygon: points on a parabola, generically no two
    parallel edges."""
    rng = random.Random(seed)
    nodes = sorted(rng.sample(range(-6 * spread, 6 * spread), nvert))
    pts = [(F(t, spread), F(t, spread) ** 2) for t in nodes]
    return Polytope.from_vertices(pts)


def interior_point(poly, seed):
    rng = random.Random(seed)
    weights = [F(rng.randint(1, 9)) for _ in poly.vertices]
    total = sum(weights)
    return tuple(
        sum(w * v[i] for w, v in zip(weights, poly.vertices)) / total for i in range(poly.dim)
    )


def test_segment_canonical():
    seg = Polytope.from_vertices([(1,), (4,)])
    x = RationalFunction.variable("x")
    assert rf_equal(simplex_canonical(seg, ("x",)), 3 / ((x - 1) * (4 - x)))


def test_standard_triangle():
    tri = Polytope.from_vertices([(0, 0), (1, 0), (0, 1)])
    x1, x2 = RationalFunction.variable("x1"), RationalFunction.variable("x2")
    c = simplex_canonical(tri)
    assert rf_equal(c, 1 / (x1 * x2 * (1 - x1 - x2)))
    assert rf_equal(canonical_function(tri), c)
    assert rf_equal(canonical_vertex_sum(tri), c)
    assert adjoint(tri) == 1


def test_simplex_centroid_value():
    # at the centroid all barycentrics are 1/(n+1), so the value is
    # (n+1)^(n+1) / (n! vol)
    rng = random.Random(5)
    done = 0
    while done < 5:
        pts = [(F(rng.randint(-9, 9)), F(rng.randint(-9, 9))) for _ in range(3)]
        try:
            tri = Polytope.from_vertices(pts)
        except ValueError:
            continue
        done += 1
        centroid = tuple(sum(v[i] for v in tri.vertices) / 3 for i in range(2))
        value = simplex_canonical(tri).evaluate({"x1": centroid[0], "x2": centroid[1]})
        assert value == F(27) / (2 * tri.volume())


def test_unit_square():
    sq = Polytope.from_vertices([(0, 0), (1, 0), (1, 1), (0, 1)])
    x1, x2 = RationalFunction.variable("x1"), RationalFunction.variable("x2")
    c = canonical_function(sq)
    assert rf_equal(c, 1 / (x1 * x2 * (1 - x1) * (1 - x2)))
    center = {"x1": F(1, 2), "x2": F(1, 2)}
    # normalized value is 2! times the polar-dual area 8
    assert polar_dual(sq, (F(1, 2), F(1, 2))).volume() == 8
    assert c.evaluate(center) == 16
    assert dual_volume_oracle(sq, (F(1, 2), F(1, 2))) == 16
    # opposite edges are parallel, so the affine adjoint degenerates to a constant
    assert adjoint(sq) == 1


def test_pole_error_on_facet():
    sq = Polytope.from_vertices([(0, 0), (1, 0), (1, 1), (0, 1)])
    with pytest.raises(PoleError):
        canonical_function(sq).evaluate({"x1": F(0), "x2": F(1, 2)})


def test_triangulation_independence_50_polygons():
    for seed in range(50):
        poly = moment_polygon(seed, 4 + seed % 3)
        base = canonical_function(poly)
        for apex in (1, 2):
            assert rf_equal(canonical_function(poly, apex=apex), base)


def test_vertex_sum_agrees_with_fan():
    for seed in range(20):
        poly = moment_polygon(seed, 4 + seed % 3)
        assert rf_equal(canonical_vertex_sum(poly), canonical_function(poly))


def test_normalization_oracle():
    done = 0
    seed = 0
    while done < 20:
        seed += 1
        poly = moment_polygon(seed, 4 + seed % 3)
        x0 = interior_point(poly, seed)
        value = canonical_function(poly).evaluate({"x1": x0[0], "x2": x0[1]})
        assert value == dual_volume_oracle(poly, x0)
        done += 1


def test_adjoint_degree_is_v_minus_3():
    for nvert in (4, 5, 6):
        for seed in range(5):
            poly = moment_polygon(100 + seed, nvert)
            assert adjoint(poly).total_degree() == nvert - 3


def test_adjoint_positive_inside():
    poly = moment_polygon(9, 5)
    x0 = interior_point(poly, 2)
    assert adjoint(poly).evaluate({"x1": x0[0], "x2": x0[1]}) > 0


def test_hrep_vrep_roundtrip():
    for seed in range(10):
        poly = moment_polygon(seed, 5)
        again = Polytope.from_halfspaces(poly.facets)
        assert again == poly


def test_from_halfspaces_unbounded_and_empty():
    with pytest.raises(ValueError):
        Polytope.from_halfspaces([((F(-1), F(0)), F(0)), ((F(0), F(-1)), F(0))])
    with pytest.raises(ValueError):
        Polytope.from_halfspaces(
            [((F(1), F(0)), F(-1)), ((F(-1), F(0)), F(-1)), ((F(0), F(1)), F(1)), ((F(0), F(-1)), F(1))]
        )


def test_abhy_pentagon_unit_constants():
    p = abhy_pentagon(1, 1, 1)
    assert set(p.vertices) == {
        (F(1), F(0)),
        (F(3), F(0)),
        (F(0), F(1)),
        (F(0), F(2)),
        (F(1), F(2)),
    }
    assert p.is_simple()
    for v in p.vertices:
        active = p.active_facets(v)
        assert abs(det([list(a) for a, _ in active])) == 1


def test_abhy_positivity_validation():
    with pytest.raises(ValueError):
        abhy_pentagon(0, 1, 1)
    with pytest.raises(ValueError):
        abhy_pentagon(1, -2, 1)


def test_abhy_facet_forms_label_the_planar_variables():
    forms = abhy_facet_forms(F(2), F(3), F(5), ("a", "b"))
    a, b = F(1, 2), F(7, 3)
    values = {lab: f.evaluate({"a": a, "b": b}) for lab, f in forms.items()}
    assert values[(2, 4)] == a
    assert values[(3, 5)] == b
    assert values[(2, 5)] == a + b - 5
    assert values[(1, 4)] == 3 + 5 - b
    assert values[(1, 3)] == 2 + 3 + 5 - a - b


def test_abhy_canonical_is_five_term_sum():
    # symbolic identity in (a, b, c13, c14, c24)
    fan, amplitude = abhy_identity_symbolic()
    assert rf_equal(fan, amplitude)


def test_abhy_canonical_matches_expected_value():
    p = abhy_pentagon(1, 1, 1)
    c = canonical_function(p, ("a", "b"))
    assert c.evaluate({"a": F(1), "b": F(1)}) == 5
    assert dual_volume_oracle(p, (F(1), F(1))) == 5
