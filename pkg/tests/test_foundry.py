from fractions import Fraction as F

import pytest

from tmpsolve import AtomicMeasure, build_moment_matrix, classify, solve
from tmpsolve import exactla as la
from tmpsolve.datasets import NINE_POINTS
from tmpsolve.foundry import (TEMPLATES, GenSpec, InfeasibleSpec, generate, kernel_contains, oracle_check,
                              oracle_moments, template_relations)
from tmpsolve.poly2d import parse_poly


def test_single_generic_atom_has_rank_one():
    g = generate(GenSpec(1, "generic", seed=3))
    assert g.measure.support_size == 1
    assert la.rank(build_moment_matrix(g.beta).entries).rank == 1


def test_nine_point_template_with_all_points():
    g = generate(GenSpec(9, "nine-point", seed=0))
    assert sorted((x, y) for x, y, _ in g.measure.atoms) == sorted(NINE_POINTS)
    assert classify(g.beta).r in (8, 9)


def test_unit_densities_on_nine_points_give_rank_eight():
    mu = AtomicMeasure([(x, y, F(1)) for x, y in NINE_POINTS])
    assert classify(oracle_beta(mu)).r == 8


def oracle_beta(mu):
    from tmpsolve import MomentSequence
    return MomentSequence(3, oracle_moments(mu, 6))


def test_xy0_template_has_xy_relation():
    g = generate(GenSpec(7, "xy0", seed=1))
    assert kernel_contains(g.beta, parse_poly("x*y"))


@pytest.mark.parametrize("template", TEMPLATES)
def test_every_template_exhibits_its_relations(template):
    k = 8 if template == "on-cubic-pair" else 6
    for seed in range(5):
        g = generate(GenSpec(k, template, seed=seed))
        assert all(kernel_contains(g.beta, p) for p in template_relations(g))


@pytest.mark.parametrize("template", TEMPLATES)
def test_seeded_determinism(template):
    k = 8 if template == "on-cubic-pair" else 5
    a = generate(GenSpec(k, template, seed=42))
    b = generate(GenSpec(k, template, seed=42))
    assert a.measure == b.measure and a.beta.beta == b.beta.beta
    assert repr(a) == repr(b)


def test_float_mode_coordinates():
    g = generate(GenSpec(5, "generic", mode="float", seed=2))
    assert not g.beta.exact
    assert all(isinstance(c, float) for a in g.measure.atoms for c in a)


@pytest.mark.parametrize("spec", [GenSpec(10, "nine-point"), GenSpec(0, "generic"), GenSpec(9, "generic"),
                                  GenSpec(3, "on-cubic-pair"), GenSpec(3, "moon")])
def test_infeasible_specs(spec):
    with pytest.raises(InfeasibleSpec):
        generate(spec)


def test_oracle_accepts_generated_pairs():
    for t in TEMPLATES:
        k = 8 if t == "on-cubic-pair" else 4
        g = generate(GenSpec(k, t, seed=7))
        assert oracle_check(g.beta, g.measure)
    g = generate(GenSpec(4, "generic", mode="float", seed=7))
    assert oracle_check(g.beta, g.measure)


def test_oracle_rejects_perturbed_density():
    g = generate(GenSpec(4, "generic", seed=1))
    x, y, w = g.measure.atoms[0]
    bad = AtomicMeasure([(x, y, w + F(1, 1000))] + list(g.measure.atoms[1:]))
    assert not oracle_check(g.beta, bad)


def test_oracle_confirms_solver_output(nine_point_43):
    mu = solve(nine_point_43).measure
    assert oracle_check(nine_point_43, mu)


def test_oracle_handles_algebraic_atoms():
    atoms = [(F(t), F(t), F(1)) for t in range(-2, 3)]
    beta = oracle_beta(AtomicMeasure(atoms))
    mu = solve(beta).measure
    assert mu.blocks and oracle_check(beta, mu)
