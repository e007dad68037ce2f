import random
from fractions import Fraction as F

import numpy as np
import pytest

from tmpsolve import AtomicMeasure, build_moment_matrix, moments_of
from tmpsolve import exactla as la
from tmpsolve.datasets import NINE_POINTS, nine_point_family
from tmpsolve.errors import InconclusiveError
from tmpsolve.poly2d import evaluate, parse_poly
from tmpsolve.solver.common import peel
from tmpsolve.variety import (column_relations, compute_variety, consistency_check, find_removable_point,
                              is_recursively_generated, removable_points, vandermonde)

P = parse_poly


def test_invertible_matrix_has_no_relations():
    assert column_relations(la.identity(6)) == []


def test_nine_point_relations_span_the_two_cubics(nine_point_zero):
    M = build_moment_matrix(nine_point_zero)
    rels = column_relations(M)
    assert len(rels) == 2
    span = np.array([r.to_vector(3) for r in rels], dtype=object)
    for text in ("x^3 + x*y^2 - 25*x", "y^3 - 9*y"):
        stacked = np.vstack([span, P(text).to_vector(3)])
        assert la.rank(stacked).rank == 2


def test_line_plus_three_relations(line_plus_three):
    M = build_moment_matrix(line_plus_three)
    rels = column_relations(M)
    assert len(rels) == 3 and all(r.degree == 3 for r in rels)
    # X^2Y, XY^2, Y^3 are the dependent columns
    piv = la.rank(M.entries).pivot_indices
    assert [M.labels[k] for k in range(10) if k not in piv] == [(2, 1), (1, 2), (0, 3)]


def test_point_variety():
    V = compute_variety([P("x"), P("y")])
    assert V.is_finite and V.points == ((0, 0),) and V.cardinality == 1


def test_nine_point_variety(nine_point_zero):
    V = compute_variety(column_relations(build_moment_matrix(nine_point_zero)))
    assert V.is_finite and V.cardinality == 9
    assert sorted(V.points) == sorted(NINE_POINTS)


def test_line_plus_three_variety(line_plus_three):
    rels = column_relations(build_moment_matrix(line_plus_three))
    V = compute_variety(rels)
    assert not V.is_finite
    assert [c.normalized().coeffs for c in V.components] == [P("y - 1").coeffs]
    assert sorted(V.points) == [(-1, -7), (2, 2), (3, 3)]
    assert all(evaluate(r, pt) == 0 for r in rels for pt in V.points)


def test_empty_relation_list_is_whole_plane():
    V = compute_variety([])
    assert V.whole_plane and V.cardinality == float("inf")


def test_vandermonde_examples():
    E = vandermonde([(F(0), F(0))], 3)
    assert E.tolist() == [[1] + [0] * 9]
    assert vandermonde(list(NINE_POINTS), 3).shape == (9, 10)
    assert la.rank(vandermonde(list(NINE_POINTS), 3)).rank == 8


def test_vandermonde_rank_bounded_by_moment_rank(nine_point_43):
    M = build_moment_matrix(nine_point_43).entries
    V = compute_variety(column_relations(M))
    assert la.rank(vandermonde(list(V.points), 3)).rank <= la.rank(M).rank


def test_consistency_of_nine_point_data(nine_point_zero):
    V = compute_variety(column_relations(build_moment_matrix(nine_point_zero)))
    assert consistency_check(nine_point_zero, V)


def test_consistency_of_generated_measures():
    rng = random.Random(9)
    for _ in range(10):
        pts = {(F(rng.randint(-3, 3)), F(rng.randint(-3, 3))) for _ in range(7)}
        mu = AtomicMeasure([(x, y, F(rng.randint(1, 5))) for x, y in pts])
        beta = moments_of(mu, 6)
        V = compute_variety(column_relations(build_moment_matrix(beta)))
        assert consistency_check(beta, V)


def test_consistency_detects_perturbation(nine_point_zero):
    V = compute_variety(column_relations(build_moment_matrix(nine_point_zero)))
    bad = nine_point_zero.replace(b06=nine_point_zero[(0, 6)] + 1)
    assert not consistency_check(bad, V)


def test_residual_quartic_after_peel():
    beta = nine_point_family(F(-4, 5), 20)
    residual = peel(beta, [(F(4), F(3), F(41, 2880))])
    from tmpsolve import riesz
    q = P("x^4 + 5*x^3 - 16*x^2 - 80*x")
    assert all(riesz(residual, q * P(m)) == 0 for m in ("1", "x", "y", "x^2", "x*y", "y^2"))


def test_irrational_variety_is_inconclusive_for_exact_data():
    beta = moments_of(AtomicMeasure([(F(0), F(0), F(1))]), 6)
    V = compute_variety([P("x^2 - 2"), P("y")])
    assert not V.exact
    with pytest.raises(InconclusiveError):
        consistency_check(beta, V)


def test_removable_points():
    collinear = [(F(k), F(2 * k)) for k in range(4)]
    assert len(removable_points(collinear, 1)) == 4
    assert find_removable_point(collinear, 1) == (0, 0)
    with pytest.raises(ValueError):
        find_removable_point([(F(0), F(0)), (F(1), F(0)), (F(0), F(1))], 1)


def test_removal_keeps_row_space():
    pts = list(NINE_POINTS)
    for pt in removable_points(pts, 3):
        rest = [p for p in pts if p != pt]
        assert la.rank(vandermonde(rest, 3)).rank == 8


def test_recursive_generation():
    beta = moments_of(AtomicMeasure([(F(k), F(0), F(1)) for k in range(3)]), 6)
    assert is_recursively_generated(build_moment_matrix(beta))
