import random
from fractions import Fraction as F

import pytest

from tmpsolve import upoly as up
from tmpsolve.core import AffineMap
from tmpsolve.poly2d import (BiPoly, ConicClass, classify_conic, common_zeros, evaluate, factor_line_conic,
                             format_poly, parse_poly, poly_gcd, resultant)
from tmpsolve.datasets import NINE_POINTS

P = parse_poly


def random_poly(rng, deg):
    return BiPoly({(i, d - i): F(rng.randint(-4, 4)) for d in range(deg + 1) for i in range(d + 1)})


def test_parse_and_format_round_trip():
    for text in ("x^2*y + 1/3*x^3 - 4", "y^3 - 9*y", "x"):
        p = P(text)
        assert P(format_poly(p)).coeffs == p.coeffs


def test_evaluate_examples():
    assert evaluate(P("1"), (F(7), F(-2))) == 1
    assert evaluate(P("y^3 - 9*y"), (F(0), F(3))) == 0
    r = P("x^2*y + 1/3*x^3 + 4*x*y + 3*x^2 + 20/3*x")
    assert evaluate(r, (F(-4), F(3))) == 0
    # r vanishes on the nine points except (4, 3) and (5, 0)
    assert [pt for pt in NINE_POINTS if evaluate(r, pt) != 0] == [(4, 3), (5, 0)]


def test_evaluate_is_multiplicative():
    rng = random.Random(2)
    for _ in range(30):
        p, q = random_poly(rng, 3), random_poly(rng, 2)
        pt = (F(rng.randint(-9, 9), 4), F(rng.randint(-9, 9), 3))
        assert evaluate(p * q, pt) == evaluate(p, pt) * evaluate(q, pt)


def test_resultant_of_two_lines():
    assert up.trim(resultant(P("y - x"), P("y + x"))) == [0, 2]


def test_resultant_nine_point_roots():
    res = resultant(P("y^3 - 9*y"), P("x^3 + x*y^2 - 25*x"))
    roots = sorted(set(up.rational_roots(up.trim(res))))
    assert roots == [-5, -4, 0, 4, 5]


def test_resultant_of_shared_component_vanishes():
    p = P("y^3 - 9*y")
    assert not up.trim(resultant(p, p))


def test_resultant_zero_iff_gcd_nonconstant():
    rng = random.Random(4)
    for _ in range(25):
        a, b, c = random_poly(rng, 1), random_poly(rng, 2), random_poly(rng, 1)
        if a.degree < 1 or b.degree < 2 or c.degree < 1:
            continue
        # eliminating y only sees common factors that involve y
        shared = not up.trim(resultant(a * b, a * c))
        assert shared == (poly_gcd(a * b, a * c).deg_y > 0)
        assert bool(up.trim(resultant(b, c))) == (poly_gcd(b, c).deg_y == 0)


def test_common_zeros_examples():
    assert common_zeros(P("x"), P("y")).points == ((0, 0),)
    z = common_zeros(P("y^3 - 9*y"), P("x^3 + x*y^2 - 25*x"))
    assert z.is_finite and sorted(z.points) == sorted(NINE_POINTS)


def test_common_zeros_symmetric_and_vanishing():
    p, q = P("x^2 + y^2 - 5"), P("x*y - 2")
    a, b = common_zeros(p, q), common_zeros(q, p)
    assert sorted(a.points) == sorted(b.points)
    assert len(a.points) == 4
    assert all(evaluate(p, pt) == 0 and evaluate(q, pt) == 0 for pt in a.points)


def test_common_zeros_shared_component():
    z = common_zeros(P("x*y - x"), P("x*y - x - 2*y + 2"))
    assert z.kind == "shared"
    assert z.shared_factor.degree == 1


def test_factor_line_conic():
    line, conic = factor_line_conic(P("x*y^2 + x*y - 25*x"))
    assert line.degree == 1 and conic.degree == 2
    assert (line * conic).normalized().coeffs == P("x*y^2 + x*y - 25*x").normalized().coeffs
    line, conic = factor_line_conic(P("y^3 - 9*y"))
    assert (line * conic).normalized().coeffs == P("y^3 - 9*y").normalized().coeffs
    assert not factor_line_conic(P("y^2 - x^3 + x"))


def test_classify_conic_examples():
    assert classify_conic(P("x*y")) == ConicClass.INTERSECTING
    assert classify_conic(P("x^2 - x")) == ConicClass.PARALLEL
    assert classify_conic(P("y^2 + y - 25")) == ConicClass.PARALLEL
    assert classify_conic(P("x^2 + 2*y^2 - 3")) == ConicClass.ELLIPSE
    assert classify_conic(P("y - x^2")) == ConicClass.PARABOLA
    assert classify_conic(P("x^2 - y^2 - 1")) == ConicClass.HYPERBOLA


@pytest.mark.parametrize("text", ["x*y", "x^2 - x", "x^2 + 2*y^2 - 3", "y - x^2", "x^2 - y^2 - 1"])
def test_classify_conic_affine_invariance(text):
    c = P(text)
    rng = random.Random(text)
    for _ in range(10):
        phi = AffineMap(*(F(rng.randint(-3, 3)) for _ in range(6)))
        if phi.det == 0:
            continue
        assert classify_conic(c.compose(phi)) == classify_conic(c)


def test_classify_conic_needs_degree_two():
    with pytest.raises(ValueError):
        classify_conic(P("x + y"))
