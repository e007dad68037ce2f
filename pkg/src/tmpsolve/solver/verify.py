"""Post-hoc checks of a claimed representing measure."""

from dataclasses import dataclass, field
from fractions import Fraction

from ..core import moments_of
from ..poly2d import evaluate
from ..variety import column_relations, _vanishes
from .common import matrix

FLOAT_REL_TOL = 1e-8


@dataclass
class VerifyReport:
    max_abs_deviation: float
    max_rel_deviation: float
    exact_match: bool
    densities_positive: bool
    in_variety: bool
    support_size: int
    worst_moment: tuple = None
    outside: list = field(default_factory=list)
    passed: bool = False


def _degree_scale(atoms, i, j):
    """sum rho (1 + x^2 + y^2)^((i + j)/2): the natural size of a degree i + j moment.

    Unlike sum rho |x^i y^j| it does not vanish when coordinates are zero,
    so rounding noise in a zero coordinate is not blown up.
    """
    return sum(abs(w) * (1 + x * x + y * y) ** ((i + j) / 2) for x, y, w in atoms)


def verify_measure(beta, mu, tol=None, relations=None, rank_tol=None):
    """Compare the moments of ``mu`` with ``beta`` and check support and densities.

    Relative deviation of beta_ij is |delta| / sum rho (1 + x^2 + y^2)^((i+j)/2).
    Exact data and an exact measure must match identically; otherwise the
    relative deviation must be at most ``tol`` (default 1e-8).  The column
    relations the atoms must satisfy come from M(n) with rank tolerance
    ``rank_tol`` unless given.
    """
    rtol = FLOAT_REL_TOL if tol is None else tol
    got = moments_of(mu, beta.order)
    exact = beta.exact and mu.exact
    max_abs = max_rel = 0.0
    worst = None
    match = True
    flt = mu.float_atoms()
    for key in beta.beta:
        diff = got[key] - beta[key]
        if exact and diff != 0:
            match = False
        d = abs(float(diff))
        scale = max(_degree_scale(flt, *key), abs(float(beta[key])), 1e-300)
        if d > max_abs:
            max_abs = d
        if d / scale > max_rel:
            max_rel, worst = d / scale, key
    if not exact:
        match = max_rel == 0.0
    if relations is None:
        relations = column_relations(matrix(beta), rank_tol)
    outside = []
    for x, y, w in mu.atoms:
        for p in relations:
            if isinstance(x, Fraction) and isinstance(y, Fraction) and beta.exact:
                bad = evaluate(p, (x, y)) != 0
            else:
                bad = not _vanishes(p, (x, y), 1e-6)
            if bad:
                outside.append((x, y))
                break
    for b in mu.blocks:
        if all(p.is_exact for p in relations):
            bad = not all(b.vanishes(p) for p in relations)
        else:
            bad = any(not _vanishes(p, (x, y), 1e-6) for p in relations for x, y, _ in b.float_atoms())
        if bad:
            outside.extend((x, y) for x, y, _ in b.float_atoms())
    positive = mu.densities_positive()
    ok = positive and not outside and (match if exact else max_rel <= rtol)
    return VerifyReport(max_abs, max_rel, match, positive, not outside, mu.support_size, worst, outside, ok)
