import random
from fractions import Fraction as F

import pytest

from posgeom.exact import (
    DenseTensor,
    PoleError,
    Polynomial,
    RationalFunction,
    det,
    matrix_rank,
    rf_arith,
    rf_equal,
    solve_linear,
)


def rf(name):
    return RationalFunction.variable(name)


def test_rf_common_denominator():
    x, y = rf("x"), rf("y")
    lhs = rf_arith(1 / x, 1 / y, "add")
    xs, ys = Polynomial.variable("x"), Polynomial.variable("y")
    assert rf_equal(lhs, RationalFunction(xs + ys, xs * ys))


def test_rf_identity_and_div():
    x, y = rf("x"), rf("y")
    f = (x + 2) / (y - 1)
    assert rf_equal(rf_arith(f, RationalFunction.const(1), "mul"), f)
    assert rf_equal(rf_arith(f, f, "div"), RationalFunction.const(1))
    with pytest.raises(ZeroDivisionError):
        rf_arith(f, RationalFunction.const(0), "div")


def test_rf_equal_cases():
    x, y = rf("x"), rf("y")
    assert rf_equal(x / x, RationalFunction.const(1))
    xs, ys = Polynomial.variable("x"), Polynomial.variable("y")
    assert rf_equal(1 / x + 1 / y, RationalFunction(xs + ys, xs * ys))
    assert not rf_equal(1 / x, 1 / y)


def test_rf_equal_is_congruence():
    # a == a', b == b'  =>  op(a,b) == op(a',b') even with unreduced representatives
    x = Polynomial.variable("x")
    a = RationalFunction(x * x, x)       # x, unreduced
    a2 = RationalFunction(x)
    b = RationalFunction(x + 1)
    b2 = RationalFunction((x + 1) * x, x)
    assert rf_equal(a, a2) and rf_equal(b, b2)
    for op in ("add", "sub", "mul", "div"):
        assert rf_equal(rf_arith(a, b, op), rf_arith(a2, b2, op))


def test_rational_field_properties():
    rng = random.Random(1)
    for _ in range(1000):
        a = F(rng.randint(-50, 50), rng.randint(1, 30))
        b = F(rng.randint(-50, 50), rng.randint(1, 30))
        c = F(rng.randint(-50, 50), rng.randint(1, 30))
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a + b == b + a and a * b == b * a


def test_polynomial_printing_graded_lex():
    p = Polynomial(("x", "y"), {(2, 0): 3, (0, 1): F(-1, 2), (0, 0): 5})
    assert str(p) == "3*x^2 - 1/2*y + 5"
    assert str(Polynomial.zero(("x",))) == "0"


def test_polynomial_evaluate_and_subs():
    p = (Polynomial.variable("x") + Polynomial.variable("y")) ** 2
    assert p.evaluate({"x": F(1, 2), "y": F(1, 2)}) == 1
    q = p.subs({"y": F(1)})
    assert q.evaluate({"x": 2}) == 9


def test_divexact():
    x, y = Polynomial.variable("x"), Polynomial.variable("y")
    product = (x + y) * (x - y) * (x + 1)
    quotient = product.divexact(x + y)
    assert quotient == (x - y) * (x + 1)
    assert ((x + y) * (x + y)).divexact(x * y) is None


def test_pole_error():
    x = rf("x")
    with pytest.raises(PoleError):
        (1 / x).evaluate({"x": 0})


def test_solve_linear_unique():
    sol = solve_linear([[1, 0], [0, 1]], [1, 0])
    assert sol.status == "unique"
    assert sol.solution == (1, 0)


def test_solve_linear_kernel_primitive():
    sol = solve_linear([[1, 1]])
    assert sol.status == "kernel"
    assert sol.kernel == ((1, -1),)


def test_solve_linear_inconsistent():
    sol = solve_linear([[1, 1], [2, 2]], [1, 3])
    assert sol.status == "inconsistent"


def test_solve_linear_kernel_verifies():
    rng = random.Random(7)
    for _ in range(25):
        rows = [[F(rng.randint(-9, 9)) for _ in range(5)] for _ in range(3)]
        sol = solve_linear(rows)
        for vec in sol.kernel:
            assert all(sum(r[j] * vec[j] for j in range(5)) == 0 for r in rows)
            first = next(v for v in vec if v != 0)
            assert first > 0


def test_det_and_rank():
    assert det([[F(1, 2), 2], [3, 4]]) == -4
    assert det([[1, 2], [2, 4]]) == 0
    assert matrix_rank([[1, 2], [2, 4]]) == 1
    rng = random.Random(3)
    for _ in range(20):
        m = [[F(rng.randint(-5, 5)) for _ in range(4)] for _ in range(4)]
        d = det(m)
        # determinant is alternating: swapping two rows flips the sign
        swapped = [m[1], m[0], m[2], m[3]]
        assert det(swapped) == -d


def test_dense_tensor():
    t = DenseTensor(2, 2, [F(1, 2), 1, 0, F(1, 2)])
    assert t.get((0, 1)) == 1
    assert t.to_nested() == [[F(1, 2), 1], [0, F(1, 2)]]
    u = t.add(t.scale(-1))
    assert u == DenseTensor.zeros(2, 2)
    outer = DenseTensor(2, 1, [1, 2]).outer(DenseTensor(2, 1, [3, 4]))
    assert outer.to_nested() == [[3, 4], [6, 8]]
    with pytest.raises(ValueError):
        DenseTensor(2, 2, [1, 2, 3])
