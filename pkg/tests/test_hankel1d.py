import random
from fractions import Fraction as F

import pytest

from tmpsolve import AtomicMeasure, moments_of
from tmpsolve.errors import NoMeasureError
from tmpsolve.hankel1d import (extract_atoms_flat, flat_extend_pd, hankel_psd_flat, solve_line_supported,
                               solve_univariate)
from tmpsolve.poly2d import evaluate, parse_poly


def atoms_of(mu):
    return sorted((x, w) for x, _, w in mu.atoms)


def uni_moments(nodes, length):
    return [sum(w * F(t) ** k for t, w in nodes) for k in range(length)]


def test_psd_flat_examples():
    assert hankel_psd_flat([1, 0, 0, 0, 0, 0, 0]) == (True, True, 1)
    assert hankel_psd_flat([2 ** k + (-1) ** k for k in range(5)]) == (True, True, 2)
    ok, flat, r = hankel_psd_flat([1, 0, 1, 0, 2])
    assert ok and not flat and r == 3


def test_extract_flat_examples():
    assert atoms_of(extract_atoms_flat([F(1)] + [F(0)] * 6)) == [(0, 1)]
    assert atoms_of(extract_atoms_flat([F(2 ** k + (-1) ** k) for k in range(5)])) == [(-1, 1), (2, 1)]
    assert atoms_of(extract_atoms_flat([F(v) for v in (1, 0, 1, 0, 1, 0, 1)])) == [(-1, F(1, 2)), (1, F(1, 2))]


def test_extract_flat_rejects_non_flat():
    with pytest.raises(ValueError):
        extract_atoms_flat([F(v) for v in (1, 0, 1, 0, 2)])


def test_extract_flat_round_trip():
    rng = random.Random(1)
    for _ in range(25):
        k = rng.randint(1, 4)
        nodes = {F(rng.randint(-8, 8), 2): F(rng.randint(1, 6), 3) for _ in range(k)}
        h = uni_moments(nodes.items(), 2 * len(nodes) + 1)
        assert atoms_of(extract_atoms_flat(h)) == sorted(nodes.items())


def test_flat_extend_pd_examples():
    h, mu = flat_extend_pd([F(1), F(0), F(1)])
    assert h[3:] == [0, 1]
    assert atoms_of(mu) == [(-1, F(1, 2)), (1, F(1, 2))]
    h, mu = flat_extend_pd([F(1), F(0)])
    assert atoms_of(mu) == [(0, 1)]


def test_flat_extend_pd_reproduces_input():
    rng = random.Random(2)
    for _ in range(15):
        nodes = {F(rng.randint(-9, 9), 3): F(rng.randint(1, 5)) for _ in range(6)}
        h = uni_moments(nodes.items(), 5)
        ext, mu = flat_extend_pd(h)
        assert len(mu.atoms) + sum(b.size for b in mu.blocks) == 3
        got = moments_of(mu, 4)
        assert [got[(k, 0)] for k in range(5)] == h


def test_flat_extend_needs_positive_definite():
    with pytest.raises(ValueError):
        flat_extend_pd([F(1), F(0), F(0)])


def test_solve_univariate_rejects_indefinite():
    with pytest.raises(NoMeasureError):
        solve_univariate([F(1), F(0), F(-1)])


def test_float_univariate():
    h = [2.0 ** k + (-1.0) ** k for k in range(5)]
    mu = solve_univariate(h)
    assert sorted(round(x, 10) for x, _, _ in mu.atoms) == [-1.0, 2.0]


def test_line_supported_three_atoms_on_axis():
    mu = AtomicMeasure([(F(-1), F(0), F(1)), (F(1, 2), F(0), F(2)), (F(3), F(0), F(1, 3))])
    got = solve_line_supported(moments_of(mu, 6), parse_poly("y"))
    assert sorted(got.atoms) == sorted(mu.atoms)


def test_line_supported_single_atom():
    mu = AtomicMeasure([(F(0), F(1), F(1))])
    got = solve_line_supported(moments_of(mu, 6), parse_poly("y - 1"))
    assert list(got.atoms) == [(0, 1, 1)]


def test_line_supported_vertical_line():
    mu = AtomicMeasure([(F(1), F(k), F(k + 3)) for k in range(-2, 2)])
    got = solve_line_supported(moments_of(mu, 6), parse_poly("x - 1"))
    assert all(x == 1 for x, _, _ in got.atoms)
    assert moments_of(got, 6).beta == moments_of(mu, 6).beta


def test_line_supported_slanted_line_atoms_lie_on_line():
    ell = parse_poly("y - 2*x - 1")
    mu = AtomicMeasure([(F(t), 2 * F(t) + 1, F(1)) for t in (-2, 0, 1, 5)])
    got = solve_line_supported(moments_of(mu, 6), ell)
    assert all(evaluate(ell, (x, y)) == 0 for x, y, _ in got.atoms)
    assert moments_of(got, 6).beta == moments_of(mu, 6).beta


def test_line_supported_rejects_unpropagated_relation():
    mu = AtomicMeasure([(F(0), F(0), F(1)), (F(1), F(1), F(1))])
    with pytest.raises(NoMeasureError):
        solve_line_supported(moments_of(mu, 6), parse_poly("y"))
