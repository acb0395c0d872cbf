"""Sparse multihomogeneous polynomials: layout, order, arithmetic, text."""

import random
from fractions import Fraction

import pytest

from terracini import (
    ExponentOverflowError,
    GF32003,
    InputError,
    LayoutError,
    MonomialOrder,
    PolynomialRing,
    QQ,
    RingMismatchError,
    VariableLayout,
    parse_polynomial,
    polynomial_to_text,
)


def ring_xy():
    return PolynomialRing(QQ, VariableLayout([("x", 3), ("y", 2)]))


def test_layout_names_and_indexing():
    layout = VariableLayout([("x", 3), ("y", 2)])
    assert layout.nvars == 5
    assert layout.var_names == ("x_0", "x_1", "x_2", "y_0", "y_1")
    assert layout.flat_index("y", 1) == 4
    assert list(layout.block_range("x")) == [0, 1, 2]
    with pytest.raises(LayoutError):
        VariableLayout([("x", 0)])
    with pytest.raises(LayoutError):
        VariableLayout([("x", 2), ("x", 3)])


def test_single_name_blocks_match_point_variables():
    # the locus pipeline names blocks z_<point>_<factor>
    layout = VariableLayout([("z_0_0", 3), ("z_1_0", 3)])
    assert layout.var_names[0] == "z_0_0_0"
    assert layout.var_names[5] == "z_1_0_2"


def test_degrevlex_classic_order():
    # deg first, then reverse lex on the last distinct variable
    R = PolynomialRing(QQ, VariableLayout([("x", 3)]))
    x0, x1, x2 = R.gens()
    f = x0 * x0 + x0 * x1 + x1 * x1 + x0 * x2 + x1 * x2 + x2 * x2
    text = polynomial_to_text(f)
    assert text == "x_0^2 + x_0*x_1 + x_1^2 + x_0*x_2 + x_1*x_2 + x_2^2"


def test_arithmetic_ring_axioms_random():
    R = ring_xy()
    rng = random.Random(3)

    def rand_poly():
        f = R.zero()
        for _ in range(rng.randint(0, 5)):
            exps = [rng.randint(0, 3) for _ in range(R.nvars)]
            f = f + R.monomial(exps, QQ.element(rng.randint(-4, 4)))
        return f

    for _ in range(40):
        f, g, h = rand_poly(), rand_poly(), rand_poly()
        assert f + g == g + f
        assert (f + g) + h == f + (g + h)
        assert f * g == g * f
        assert (f * g) * h == f * (g * h)
        assert f * (g + h) == f * g + f * h
        assert f - f == R.zero()
        assert f * R.one() == f
        assert f * R.zero() == R.zero()


def test_pow_and_scale():
    R = ring_xy()
    x0 = R.variable("x_0")
    y1 = R.variable("y_1")
    f = x0 + y1
    assert f ** 2 == x0 * x0 + 2 * x0 * y1 + y1 * y1
    assert f.scale(QQ.element(1, 2)) + f.scale(QQ.element(1, 2)) == f


def test_multidegree_and_homogeneity():
    R = ring_xy()
    x0, x1, x2, y0, y1 = R.gens()
    f = x0 * x1 * y0 + x2 * x2 * y1
    assert f.is_multihomogeneous()
    assert f.multidegree() == (2, 1)
    assert f.degree() == 3
    g = f + x0
    assert not g.is_multihomogeneous()
    assert g.is_homogeneous() is False


def test_partial_derivative_product_rule():
    R = ring_xy()
    rng = random.Random(7)
    gens = R.gens()
    for _ in range(25):
        f = R.one()
        g = R.zero()
        for _ in range(3):
            f = f * (gens[rng.randrange(5)] + R.from_int(rng.randint(-2, 2)))
            g = g + R.monomial(
                [rng.randint(0, 2) for _ in range(5)],
                QQ.element(rng.randint(-3, 3)),
            )
        v = rng.randrange(5)
        lhs = (f * g).partial_derivative(v)
        rhs = f.partial_derivative(v) * g + f * g.partial_derivative(v)
        assert lhs == rhs


def test_evaluate_is_a_homomorphism():
    R = ring_xy()
    rng = random.Random(13)
    for _ in range(25):
        f = R.zero()
        g = R.zero()
        for _ in range(4):
            f = f + R.monomial(
                [rng.randint(0, 3) for _ in range(5)],
                QQ.element(rng.randint(-5, 5)),
            )
            g = g + R.monomial(
                [rng.randint(0, 3) for _ in range(5)],
                QQ.element(rng.randint(-5, 5)),
            )
        vals = [QQ.random(rng) for _ in range(5)]
        assert (f * g).evaluate(vals) == f.evaluate(vals) * g.evaluate(vals)
        assert (f + g).evaluate(vals) == f.evaluate(vals) + g.evaluate(vals)


def test_text_round_trip_random():
    R = ring_xy()
    rng = random.Random(17)
    for _ in range(50):
        f = R.zero()
        for _ in range(rng.randint(1, 6)):
            f = f + R.monomial(
                [rng.randint(0, 4) for _ in range(5)],
                QQ.element(rng.randint(-9, 9), rng.randint(1, 9)),
            )
        assert parse_polynomial(R, polynomial_to_text(f)) == f


def test_text_round_trip_prime_field():
    R = PolynomialRing(GF32003, VariableLayout([("x", 2)]))
    x0, x1 = R.gens()
    f = x0 * x0 + R.constant(GF32003.element(-1)) * x1 * x1
    text = polynomial_to_text(f)
    assert "32002" in text  # canonical residue, no minus signs mod p
    assert parse_polynomial(R, text) == f


def test_parse_rejects_garbage():
    R = ring_xy()
    for bad in ("", "x_9", "x_0 +", "2**3", "x_0^", "()", "- -"):
        with pytest.raises(InputError):
            parse_polynomial(R, bad)


def test_substitute_block():
    # result lives in the ring without the assigned block
    R = ring_xy()
    x0, x1, x2, y0, y1 = R.gens()
    f = x0 * y0 + x1 * y1
    g = f.substitute_block({"y": [QQ.element(2), QQ.element(-3)]})
    assert g.ring.layout.var_names == ("x_0", "x_1", "x_2")
    assert polynomial_to_text(g) == "2*x_0 - 3*x_1"


def test_map_to_reindexes_variables():
    R = PolynomialRing(QQ, VariableLayout([("x", 2)]))
    S = PolynomialRing(QQ, VariableLayout([("a", 2), ("b", 2)]))
    x0, x1 = R.gens()
    f = x0 * x0 - x1 * x1
    g = f.map_to(S, var_map=[2, 3])  # x -> b block
    b0 = S.variable("b_0")
    b1 = S.variable("b_1")
    assert g == b0 * b0 - b1 * b1


def test_map_to_coefficient_transport():
    R = PolynomialRing(QQ, VariableLayout([("x", 2)]))
    S = PolynomialRing(GF32003, VariableLayout([("x", 2)]))
    x0, x1 = R.gens()
    f = QQ.element(1, 2) * x0 - x1
    g = f.map_to(S, coeff_map=GF32003.from_fraction)
    assert g.leading_coefficient() == GF32003.element(1, 2)


def test_ring_mismatch_guard():
    R = ring_xy()
    S = PolynomialRing(QQ, VariableLayout([("x", 3), ("y", 2)]))
    # same shape but distinct ring objects are compatible by structure
    assert R.same_structure(S)
    T = PolynomialRing(QQ, VariableLayout([("w", 2)]))
    with pytest.raises(RingMismatchError):
        R.check_same(T)


def test_exponent_overflow_guard():
    R = PolynomialRing(QQ, VariableLayout([("x", 2)]))
    x0 = R.variable(0)
    with pytest.raises(ExponentOverflowError):
        x0 ** 40000


def test_variable_lookup():
    R = ring_xy()
    assert R.variable("y_0") == R.variable(3)
    with pytest.raises(LayoutError):
        R.variable("q_0")
