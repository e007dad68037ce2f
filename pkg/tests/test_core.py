import random
from fractions import Fraction as F

import numpy as np
import pytest

from tmpsolve import (AffineMap, AtomicMeasure, MomentSequence, build_moment_matrix, monomial_basis,
                      moments_of, parse_poly, riesz, transform_moments)
from tmpsolve.core import basis_size
from tmpsolve.poly2d import BiPoly
from tmpsolve.variety import monomial_vector


def delta(x, y, order=6):
    return moments_of(AtomicMeasure([(F(x), F(y), F(1))]), order)


def random_measure(rng, k=5):
    return AtomicMeasure([(F(rng.randint(-6, 6), 2), F(rng.randint(-6, 6), 2), F(rng.randint(1, 9), 4))
                          for _ in range(k)]).merged()


def test_monomial_basis_small():
    assert monomial_basis(0) == [(0, 0)]
    assert monomial_basis(1) == [(0, 0), (1, 0), (0, 1)]


def test_monomial_basis_cubic_has_ten_entries_ending_in_y3():
    b = monomial_basis(3)
    assert len(b) == basis_size(3) == 10
    assert b[-2:] == [(1, 2), (0, 3)]


def test_monomial_basis_rejects_negative():
    with pytest.raises(ValueError):
        monomial_basis(-1)


def test_delta_at_origin_matrix_has_single_entry():
    M = build_moment_matrix(delta(0, 0)).entries
    assert M[0, 0] == 1
    assert sum(1 for v in M.flat if v != 0) == 1


def test_line_plus_three_entry(line_plus_three):
    M = build_moment_matrix(line_plus_three)
    assert M.entries[0, M.index((1, 0))] == 19
    assert line_plus_three[(0, 0)] == 8


def test_nine_point_corner_entry(nine_point_43):
    M = build_moment_matrix(nine_point_43)
    k = M.index((3, 0))
    assert M.entries[k, k] == -400 + 41 * 20 == 420


def test_missing_moment_is_rejected():
    beta = dict(delta(1, 1).beta)
    del beta[(2, 4)]
    with pytest.raises(KeyError):
        MomentSequence(3, beta)


def test_riesz_basics(nine_point_43):
    assert riesz(nine_point_43, parse_poly("1")) == nine_point_43[(0, 0)]
    assert riesz(nine_point_43, parse_poly("x^2")) == nine_point_43[(2, 0)]
    assert riesz(nine_point_43, parse_poly("y^3 - 9*y")) == 0


def test_riesz_rejects_degree_overflow(nine_point_43):
    with pytest.raises(ValueError):
        riesz(nine_point_43, parse_poly("x^7"))


def test_moments_of_point_mass():
    assert delta(2, 3)[(2, 1)] == 12


def test_symmetric_measure_has_zero_odd_x_moments():
    mu = AtomicMeasure([(F(1), F(0), F(1, 2)), (F(-1), F(0), F(1, 2))])
    beta = moments_of(mu, 6)
    assert all(beta[(i, j)] == 0 for i, j in beta.beta if i % 2)


def test_identity_map_leaves_moments():
    beta = moments_of(random_measure(random.Random(1)), 6)
    assert transform_moments(beta, AffineMap.identity()).beta == beta.beta


def test_translation_moves_point_mass():
    shifted = transform_moments(delta(0, 1), AffineMap(1, 0, 0, 1, 0, -1))
    assert shifted.beta == delta(0, 0).beta


def test_singular_map_rejected():
    with pytest.raises(ValueError):
        transform_moments(delta(0, 1), AffineMap(1, 1, 1, 1, 0, 0))


def test_hankel_structure_and_rank_one_sum():
    rng = random.Random(7)
    for _ in range(10):
        mu = random_measure(rng)
        beta = moments_of(mu, 6)
        M = build_moment_matrix(beta)
        for a, (i, j) in enumerate(M.labels):
            for b, (p, q) in enumerate(M.labels):
                assert M.entries[a, b] == beta[(i + p, j + q)]
        S = sum(w * np.outer(monomial_vector((x, y), 3), monomial_vector((x, y), 3)) for x, y, w in mu.atoms)
        assert (S == M.entries).all()


def test_riesz_quadratic_form():
    rng = random.Random(11)
    beta = moments_of(random_measure(rng, 7), 6)
    M = build_moment_matrix(beta).entries
    for _ in range(20):
        p = BiPoly({m: F(rng.randint(-3, 3)) for m in monomial_basis(3)})
        q = BiPoly({m: F(rng.randint(-3, 3)) for m in monomial_basis(3)})
        assert riesz(beta, p * q) == p.to_vector(3) @ M @ q.to_vector(3)


def test_transforms_compose():
    rng = random.Random(3)
    beta = moments_of(random_measure(rng), 6)
    phi1 = AffineMap(F(2), F(1), F(-1), F(1), F(3), F(-2))
    phi2 = AffineMap(F(1), F(-3), F(0), F(1, 2), F(0), F(5))
    two_step = transform_moments(transform_moments(beta, phi1), phi2)
    assert two_step.beta == transform_moments(beta, phi1.then(phi2)).beta


def test_float_mode_is_inferred():
    beta = moments_of(AtomicMeasure([(0.5, 1.0, 2.0)]), 2)
    assert beta.mode == "float" and not beta.exact
