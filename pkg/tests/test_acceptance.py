"""Acceptance suite: one test per criterion, each printing a PASS line.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
report.  Tolerances and budgets are pinned here, not configurable.
"""

import math
import random
import time
from fractions import Fraction as F

import pytest

from posgeom.chy import chy_amplitude, solve_scattering
from posgeom.dihedral import dihedral_scattering_residual, verify_u_equations
from posgeom.exact import RationalFunction, rf_equal
from posgeom.gkz import annihilation_residual, blueprint_integrand, gkz_operators, string_limit
from posgeom.grassmann import (
    PLUECKER_ORDER,
    adjoint_interpolation,
    brackets,
    centroid_stab_line,
    membership,
    random_member,
    special_line,
    stabs,
    twisted_cubic_z,
)
from posgeom.kinematics import (
    abhy_constants,
    kinematics_from_planar,
    planar_variables,
    polygon_diagonals,
    sample_abhy_kinematics,
    sample_kinematics,
)
from posgeom.polytope import (
    abhy_identity_symbolic,
    abhy_pentagon,
    adjoint,
    canonical_function,
    canonical_vertex_sum,
    dual_volume_oracle,
)
from posgeom.signature import PiecewiseLinearPath, identity_stack, shuffle_check, signature
from posgeom.trees import N5_MANDELSTAM_NAMES, tree_amplitude, tree_amplitude_symbolic


def report(number, text):
    print(f"\nACCEPTANCE {number}: PASS — {text}")


def test_criterion_01_five_term_amplitude_identity():
    start = time.perf_counter()
    amplitude = tree_amplitude_symbolic(5, N5_MANDELSTAM_NAMES)
    v = {name: RationalFunction.variable(name) for name in ("s12", "s23", "s34", "s45", "s15")}
    five_terms = (
        1 / (v["s12"] * v["s45"])
        + 1 / (v["s23"] * v["s15"])
        + 1 / (v["s12"] * v["s34"])
        + 1 / (v["s23"] * v["s45"])
        + 1 / (v["s15"] * v["s34"])
    )
    assert rf_equal(amplitude, five_terms)
    elapsed = time.perf_counter() - start
    assert elapsed < 1.0
    report(1, f"five-point amplitude equals the five-term form symbolically ({elapsed:.2f}s)")


def test_criterion_02_abhy_identity():
    start = time.perf_counter()
    fan, five_term_sum = abhy_identity_symbolic()
    assert rf_equal(fan, five_term_sum)
    for seed in range(100):
        k = sample_abhy_kinematics(seed)
        tree = tree_amplitude(k)
        pentagon = abhy_pentagon(*abhy_constants(k))
        value = canonical_function(pentagon, ("a", "b")).evaluate(
            {"a": k.entry(2, 3), "b": k.entry(3, 4)}
        )
        assert value == tree  # exact rational equality
    elapsed = time.perf_counter() - start
    assert elapsed < 10.0
    report(
        2,
        "pentagon canonical function equals the five-term sum symbolically and "
        f"exactly on 100 seeded kinematics ({elapsed:.2f}s)",
    )


def test_criterion_03_chy_equality():
    start = time.perf_counter()
    worst = 0.0
    for n, expected in ((5, 2), (6, 6)):
        for seed in range(20):
            k = sample_kinematics(n, seed)
            points = solve_scattering(k, tol=1e-10, seed=seed)
            assert len(points) == expected
            value = chy_amplitude(k, points)
            tree = float(tree_amplitude(k))
            worst = max(worst, abs(value - tree) / abs(tree))
    assert worst < 1e-9
    elapsed = time.perf_counter() - start
    assert elapsed < 60.0
    report(
        3,
        f"critical-point counts 2 and 6; worst tree deviation {worst:.2e} over 2x20 "
        f"seeded kinematics ({elapsed:.1f}s)",
    )


def test_criterion_04_u_equations():
    result = verify_u_equations(5)
    assert result.all_passed and len(result.entries) == 5
    report(4, "all five binary relations hold as exact rational-function identities")


def test_criterion_05_dihedral_matrix_residual():
    worst = 0.0
    for seed in range(20):
        k = sample_kinematics(5, seed)
        for point in solve_scattering(k, tol=1e-10, seed=seed):
            worst = max(worst, dihedral_scattering_residual(k, point))
    assert worst < 1e-9
    report(5, f"scattering-matrix residual below 1e-9 at all critical points (worst {worst:.2e})")


def test_criterion_06_adjoint_interpolation():
    start = time.perf_counter()
    z = twisted_cubic_z([1, 2, 3, 4, 5])
    coefficients = adjoint_interpolation(z)
    # the (14)/(23) slots follow lexicographic label order here; the colex
    # enumeration reads the same six numbers as (..., 143, 49, ...)
    assert coefficients == (593, -330, 49, 143, -30, 5)
    colex = [(1, 2), (1, 3), (2, 3), (1, 4), (2, 4), (3, 4)]
    by_label = dict(zip(PLUECKER_ORDER, coefficients))
    assert [by_label[pair] for pair in colex] == [593, -330, 143, 49, -30, 5]
    for i in range(1, 6):
        assert sum(c * p for c, p in zip(coefficients, special_line(i, z).p)) == 0
    elapsed = time.perf_counter() - start
    assert elapsed < 1.0
    report(
        6,
        "adjoint interpolation gives (593, -330, 143, 49, -30, 5) in colex "
        f"enumeration and vanishes on all five lines ({elapsed:.2f}s)",
    )


def test_criterion_07_membership_suite():
    z = twisted_cubic_z([1, 2, 3, 4, 5])
    failures = sum(1 for seed in range(1000) if not membership(random_member(z, seed), z).member)
    assert failures == 0
    line = centroid_stab_line(z)
    verdict = membership(line, z)
    assert not verdict.member
    br = brackets(*line, z)
    assert br[(1, 2)] * br[(3, 4)] < 0
    assert stabs(line, z)
    assert all(stabs(random_member(z, seed), z) for seed in range(500))
    report(
        7,
        "1000/1000 positive images are members, the centroid line fails membership "
        "with opposite (12)/(34) brackets yet stabs, and 500/500 members stab",
    )


def test_criterion_08_gkz_operators_and_annihilation():
    integrand = blueprint_integrand()
    ops = gkz_operators(integrand)
    assert [str(op) for op in ops["euler"]] == [
        "c1*d1 + c2*d2 + c3*d3 + 1",
        "c4*d4 + c5*d5 + 1",
        "c6*d6 + c7*d7 + 1",
        "c1*d1 + c4*d4 + (eps + 1)",
        "c2*d2 + c6*d6 + (eps + 1)",
    ]
    assert [str(op) for op in ops["toric"]] == ["d1*d5 - d3*d4", "d2*d7 - d3*d6"]
    residuals = [
        annihilation_residual(op, integrand, [1.0] * 7, h=0.05, params={"eps": 0.25})
        for op in ops["toric"]
    ]
    assert all(r < 1e-3 for r in residuals)
    report(
        8,
        "five homogeneity and two binomial operators match the expected set; toric "
        f"annihilation residuals {residuals[0]:.1e}, {residuals[1]:.1e}",
    )


def test_criterion_09_string_limit():
    start = time.perf_counter()
    worst = 0.0
    for seed in range(3):
        rng = random.Random(seed)
        k = kinematics_from_planar(
            5, {d: F(rng.randint(6, 30), 12) for d in polygon_diagonals(5)}
        )
        result = string_limit(k, (0.2, 0.1, 0.05))
        worst = max(worst, result.relative_error)
    assert worst < 0.01
    elapsed = time.perf_counter() - start
    assert elapsed < 300.0
    report(
        9,
        f"extrapolated string integral within 1% of the tree amplitude on 3 seeded "
        f"positive kinematics (worst {worst:.2e}, {elapsed:.1f}s)",
    )


def moment_polygon(seed, nvert):
    rng = random.Random(seed)
    nodes = sorted(rng.sample(range(-72, 72), nvert))
    return [(F(t, 12), F(t, 12) ** 2) for t in nodes]


def test_criterion_10_polytope_property_suite():
    from posgeom.polytope import Polytope

    for seed in range(50):
        poly = Polytope.from_vertices(moment_polygon(seed, 4 + seed % 3))
        base = canonical_function(poly)
        assert rf_equal(canonical_function(poly, apex=1 + seed % 2), base)
        assert rf_equal(canonical_vertex_sum(poly), base)
    checked = 0
    seed = 0
    while checked < 20:
        seed += 1
        poly = Polytope.from_vertices(moment_polygon(seed, 4 + seed % 3))
        rng = random.Random(seed)
        weights = [F(rng.randint(1, 9)) for _ in poly.vertices]
        total = sum(weights)
        x0 = tuple(sum(w * v[i] for w, v in zip(weights, poly.vertices)) / total for i in range(2))
        assert canonical_function(poly).evaluate({"x1": x0[0], "x2": x0[1]}) == dual_volume_oracle(
            poly, x0
        )
        checked += 1
    for nvert in (4, 5, 6):
        for seed in (1, 2, 3):
            poly = Polytope.from_vertices(moment_polygon(100 + seed, nvert))
            assert adjoint(poly).total_degree() == nvert - 3
    report(
        10,
        "triangulation independence on 50 polygons, vertex-sum agreement, 20 "
        "normalization-oracle points, adjoint degree v-3 for v in {4, 5, 6} (all exact)",
    )


def test_criterion_11_signature_suite():
    start = time.perf_counter()
    rng = random.Random(0)
    for trial in range(50):
        dim = rng.choice([2, 3])
        points = [
            tuple(F(rng.randint(-6, 6), rng.randint(1, 4)) for _ in range(dim)) for _ in range(4)
        ]
        tail = [
            tuple(F(rng.randint(-6, 6), rng.randint(1, 4)) for _ in range(dim)) for _ in range(3)
        ]
        p = PiecewiseLinearPath.from_points(points)
        q = PiecewiseLinearPath.from_points(tail)
        sp = signature(p, 4)
        assert signature(p.concatenate(q), 4) == sp.product(signature(q, 4))
        assert signature(p.refined(trial % 3), 4) == sp
        assert signature(p.reversed(), 4).product(sp) == identity_stack(dim, 4)
        letters = range(1, dim + 1)
        words = [(a,) for a in letters] + [(a, b) for a in letters for b in letters]
        for w1 in words:
            for w2 in words:
                if len(w1) + len(w2) <= 4:
                    assert shuffle_check(sp, w1, w2)
    elapsed = time.perf_counter() - start
    assert elapsed < 30.0
    report(
        11,
        f"Chen, refinement, reversal, and shuffle identities exact on 50 random "
        f"paths at depth 4 ({elapsed:.1f}s)",
    )
