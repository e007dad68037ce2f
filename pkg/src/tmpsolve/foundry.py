"""Seeded random moment problems with known measures, and an independent moment oracle.

Every template places atoms on a prescribed configuration, so the column
relations the moment matrix must exhibit are known in advance
(:func:`template_relations`).
"""

import random
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .core import AtomicMeasure, moments_of, monomial_basis
from .poly2d import BiPoly

TEMPLATES = ("generic", "nine-point", "on-line", "on-conic", "xy0", "x2x", "on-cubic-pair")

CONIC_KINDS = ("parabola", "ellipse", "hyperbola")
PAIR_CASES = ("intersecting", "parallel", "parabola", "ellipse", "hyperbola", "common-line")

NINE_POINTS = ((-5, 0), (-4, -3), (-4, 3), (0, -3), (0, 0), (0, 3), (4, -3), (4, 3), (5, 0))

_X = BiPoly({(1, 0): Fraction(1)})
_Y = BiPoly({(0, 1): Fraction(1)})
_ONE = BiPoly({(0, 0): Fraction(1)})


class InfeasibleSpec(ValueError):
    """The template cannot carry the requested number of atoms."""


@dataclass(frozen=True)
class GenSpec:
    atom_count: int
    template: str = "generic"
    coord_range: int = 4          # coordinates drawn from halves in [-coord_range, coord_range]
    mode: str = "exact"
    seed: int = 0
    variant: str = ""             # conic kind or cubic-pair case; random when empty


@dataclass(frozen=True)
class Generated:
    spec: GenSpec
    measure: AtomicMeasure
    beta: object
    relations: tuple              # polynomials that must lie in ker M(3)
    variant: str = ""


# --- small helpers -----------------------------------------------------------

def _halves(rng, R, avoid=()):
    while True:
        v = Fraction(rng.randint(-2 * R, 2 * R), 2)
        if v not in avoid:
            return v


def _distinct(rng, count, draw, limit=2000):
    out = []
    for _ in range(limit):
        if len(out) == count:
            return out
        v = draw()
        if v not in out:
            out.append(v)
    raise InfeasibleSpec("could not draw enough distinct values")


def _density(rng):
    return Fraction(rng.randint(1, 12), rng.choice((2, 3, 4, 5)))


def _line(a, b, c):
    return _X * Fraction(a) + _Y * Fraction(b) + _ONE * Fraction(c)


def _vrank(points, degree):
    from . import exactla as la
    from .variety import vandermonde
    return la.rank(vandermonde(points, degree)).rank if points else 0


def _small_int(rng, lo=-3, hi=3, nonzero=False):
    while True:
        v = rng.randint(lo, hi)
        if v or not nonzero:
            return Fraction(v)


# --- point configurations --------------------------------------------------

def _generic(rng, k, R):
    if k > 8:
        raise InfeasibleSpec("generic data with more than 8 atoms has rank >= 9 (out of scope)")
    for _ in range(500):
        pts = _distinct(rng, k, lambda: (_halves(rng, R), _halves(rng, R)))
        if _vrank(pts, 3) != k or _vrank(pts, 2) != min(k, 6):
            continue
        if k >= 6 and _vrank(pts, 2) < 6:
            continue
        return pts, ()
    raise InfeasibleSpec("no generic configuration found")


def _nine_point(rng, k, R):
    if k > 9:
        raise InfeasibleSpec("the nine-point template carries at most 9 atoms")
    pts = [(Fraction(x), Fraction(y)) for x, y in NINE_POINTS]
    chosen = rng.sample(pts, k)
    rels = (_Y ** 3 - _Y * 9, _X ** 3 + _X * _Y ** 2 - _X * 25)
    return chosen, rels


def _random_line(rng):
    while True:
        a, b = _small_int(rng), _small_int(rng)
        if a or b:
            return a, b, _small_int(rng)


def _points_on_line(rng, a, b, c, count, R, avoid=()):
    """Rational points with a x + b y + c = 0."""
    def draw():
        t = _halves(rng, R)
        if b != 0:
            return (t, -(a * t + c) / b)
        return (-c / a, t)
    return _distinct(rng, count, lambda: _pick_new(draw, avoid))


def _pick_new(draw, avoid):
    while True:
        p = draw()
        if p not in avoid:
            return p


def _on_line(rng, k, R):
    a, b, c = _random_line(rng)
    return _points_on_line(rng, a, b, c, k, R), (_line(a, b, c),)


def _conic_points(rng, kind, count, R):
    """(points, conic) for a nondegenerate conic with rational points."""
    if kind == "parabola":
        a = Fraction(rng.choice((-1, 1)), rng.choice((1, 2, 4)))
        b, c = _small_int(rng), _small_int(rng)
        xs = _distinct(rng, count, lambda: _halves(rng, R))
        pts = [(x, a * x * x + b * x + c) for x in xs]
        conic = _Y - _X ** 2 * a - _X * b - _ONE * c
    elif kind == "ellipse":
        cx, cy = _small_int(rng, -2, 2), _small_int(rng, -2, 2)
        rx, ry = Fraction(rng.randint(1, 3)), Fraction(rng.randint(1, 4))
        ts = _distinct(rng, count, lambda: Fraction(rng.randint(-9, 9), rng.randint(1, 4)))
        pts = [(cx + rx * (1 - t * t) / (1 + t * t), cy + ry * 2 * t / (1 + t * t)) for t in ts]
        u, v = (_X - _ONE * cx) / rx, (_Y - _ONE * cy) / ry
        conic = u * u + v * v - _ONE
    elif kind == "hyperbola":
        cx, cy = _small_int(rng, -2, 2), _small_int(rng, -2, 2)
        s = _small_int(rng, -4, 4, nonzero=True)
        us = _distinct(rng, count, lambda: _halves(rng, R, avoid=(0, Fraction(1, 2), Fraction(-1, 2))))
        pts = [(cx + u, cy + s / u) for u in us]
        conic = (_X - _ONE * cx) * (_Y - _ONE * cy) - _ONE * s
    else:
        raise InfeasibleSpec(f"unknown conic kind {kind!r}")
    return pts, conic


def _on_conic(rng, k, R, kind):
    pts, conic = _conic_points(rng, kind, k, R)
    return pts, (conic,)


def _two_lines(rng, k, R, second, variant=""):
    """Atoms on x = 0 and on the line ``second`` (y = 0 or x = 1).

    The "separated" variant puts at least three atoms off the origin on each
    line, so both line Hankel blocks of the split are invertible.
    """
    if k < 1:
        raise InfeasibleSpec("need at least one atom")
    lo = 2 if k >= 5 else 1
    if k < 2 * lo:
        lo = 0
    if variant == "separated":
        if k < 6 or k > 8:
            raise InfeasibleSpec("the separated variant needs 6 to 8 atoms")
        lo = 3
    for _ in range(200):
        a = rng.randint(lo, k - lo)
        b = k - a
        origin = second == "xy0" and rng.random() < 0.3 and a >= (lo + 1 if variant == "separated" else 1)
        on_x0 = _distinct(rng, a - (1 if origin else 0), lambda: (Fraction(0), _halves(rng, R, avoid=(0,))))
        if second == "xy0":
            other = _distinct(rng, b, lambda: (_halves(rng, R, avoid=(0,)), Fraction(0)))
        else:
            other = _distinct(rng, b, lambda: (Fraction(1), _halves(rng, R)))
        pts = on_x0 + other + ([(Fraction(0), Fraction(0))] if origin else [])
        if len(set(pts)) == k:
            return pts
    raise InfeasibleSpec("no two-line configuration found")


def _cubic_pair(rng, k, R, case):
    if k < 8 or k > 9:
        raise InfeasibleSpec("the cubic-pair template needs 8 or 9 atoms")
    if case == "common-line":
        a, b, c = _random_line(rng)
        ell = _line(a, b, c)
        for _ in range(500):
            off = _distinct(rng, 4, lambda: (_halves(rng, R), _halves(rng, R)))
            if any(ell(*p) == 0 for p in off) or _vrank(off, 1) < 3:
                continue
            if any(_vrank([p, q, s], 1) < 3 for i, p in enumerate(off) for j, q in enumerate(off[i + 1:], i + 1)
                   for s in off[j + 1:]):
                continue
            on = _points_on_line(rng, a, b, c, k - 4, R, avoid=off)
            return on + off, _pair_relations_common_line(ell, off)
        raise InfeasibleSpec("no common-line configuration found")
    m = k - 1
    if case in ("intersecting", "parallel"):
        if case == "intersecting":
            l1, l2 = _random_line(rng), _random_line(rng)
            if l1[0] * l2[1] - l1[1] * l2[0] == 0:
                l2 = (-l1[1], l1[0], l2[2])
        else:
            l1 = _random_line(rng)
            shift = _small_int(rng, 1, 3)
            l2 = (l1[0], l1[1], l1[2] + shift)
        for _ in range(200):
            na = rng.choice((4, m - 4)) if m - 4 >= 3 else 4
            p1 = _points_on_line(rng, *l1, na, R)
            p2 = _points_on_line(rng, *l2, m - na, R, avoid=p1)
            on = p1 + p2
            if any(_line(*l2)(*p) == 0 for p in p1) or _vrank(on, 3) != 7:
                continue
            conic = _line(*l1) * _line(*l2)
            break
        else:
            raise InfeasibleSpec("no line-pair configuration found")
    else:
        for _ in range(200):
            on, conic = _conic_points(rng, case, m, R)
            if len(set(on)) == m and _vrank(on, 3) == 7:
                break
        else:
            raise InfeasibleSpec("no conic configuration found")
    for _ in range(500):
        p0 = (_halves(rng, R), _halves(rng, R))
        if conic(*p0) != 0:
            break
    lines = (_X - _ONE * p0[0], _Y - _ONE * p0[1])
    return on + [p0], tuple(conic * ln for ln in lines)


def _pair_relations_common_line(ell, off):
    from . import exactla as la
    from .variety import vandermonde
    ker = la.kernel_basis(vandermonde(off, 2))
    return tuple(ell * BiPoly.from_vector(v, 2) for v in ker)


# --- public API ----------------------------------------------------------------

def generate(spec):
    """Measure and its moments (order 6) for the template of ``spec``."""
    if spec.atom_count < 1:
        raise InfeasibleSpec("atom_count must be >= 1")
    if spec.template not in TEMPLATES:
        raise InfeasibleSpec(f"unknown template {spec.template!r}")
    rng = random.Random(f"{spec.template}:{spec.atom_count}:{spec.seed}:{spec.variant}")
    return _draw(spec, rng)


def _draw(spec, rng):
    k, R, t = spec.atom_count, spec.coord_range, spec.template
    variant = spec.variant
    if t == "generic":
        pts, rels = _generic(rng, k, R)
    elif t == "nine-point":
        pts, rels = _nine_point(rng, k, R)
    elif t == "on-line":
        pts, rels = _on_line(rng, k, R)
    elif t == "on-conic":
        variant = variant or rng.choice(CONIC_KINDS)
        pts, rels = _on_conic(rng, k, R, variant)
    elif t == "xy0":
        pts, rels = _two_lines(rng, k, R, "xy0", variant), (_X * _Y,)
    elif t == "x2x":
        pts, rels = _two_lines(rng, k, R, "x2x", variant), (_X * _X - _X,)
    else:
        variant = variant or rng.choice(PAIR_CASES)
        pts, rels = _cubic_pair(rng, k, R, variant)
    atoms = [(x, y, _density(rng)) for x, y in pts]
    mu = AtomicMeasure(atoms)
    if spec.mode == "float":
        mu = AtomicMeasure([(float(x), float(y), float(w)) for x, y, w in atoms])
    beta = moments_of(mu, 6)
    return Generated(spec, mu, beta, tuple(rels), variant)


def template_relations(gen):
    """Polynomials that must annihilate the columns of M(3) for this instance."""
    return gen.relations


# --- independent oracle ----------------------------------------------------------

def _mat_mul(A, B):
    n, m, p = len(A), len(B), len(B[0])
    return [[sum(A[i][k] * B[k][j] for k in range(m)) for j in range(p)] for i in range(n)]


def _mat_poly(coeffs, C):
    """p(C) by Horner, coefficients low to high."""
    size = len(C)
    acc = [[Fraction(0)] * size for _ in range(size)]
    for c in reversed(list(coeffs)):
        acc = _mat_mul(acc, C)
        for i in range(size):
            acc[i][i] += Fraction(c)
    return acc


def _mat_inv(A):
    n = len(A)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(A)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [v / p for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def _block_sums(block, order):
    """sum over roots t of g of X(t)^i Y(t)^j N(t)/g'(t), via the companion matrix."""
    g = [Fraction(c) for c in block.g]
    d = len(g) - 1
    C = [[Fraction(0)] * d for _ in range(d)]
    for i in range(1, d):
        C[i][i - 1] = Fraction(1)
    for i in range(d):
        C[i][d - 1] = -g[i] / g[d]
    dg = [i * g[i] for i in range(1, d + 1)]
    W = _mat_mul(_mat_poly(block.N, C), _mat_inv(_mat_poly(dg, C)))
    Xc, Yc = _mat_poly(block.X, C), _mat_poly(block.Y, C)
    out = {}
    xp = [[[Fraction(int(i == j)) for j in range(d)] for i in range(d)]]
    for _ in range(order):
        xp.append(_mat_mul(xp[-1], Xc))
    for i in range(order + 1):
        P = _mat_mul(xp[i], W)
        for j in range(order + 1 - i):
            out[(i, j)] = sum(P[s][s] for s in range(d))
            P = _mat_mul(P, Yc)
    return out


def oracle_moments(mu, order):
    """Moments by direct summation, sharing no code with the core forward map."""
    acc = {}
    for x, y, w in mu.atoms:
        for i in range(order + 1):
            for j in range(order + 1 - i):
                acc[(i, j)] = acc.get((i, j), 0) + w * x ** i * y ** j
    for b in mu.blocks:
        for key, val in _block_sums(b, order).items():
            acc[key] = acc.get(key, 0) + val
    return acc


def oracle_check(beta, mu, rel_tol=1e-9):
    """True when mu reproduces every moment of beta (exactly, or to rel_tol in floats)."""
    got = oracle_moments(mu, beta.order)
    for key in monomial_basis(beta.order):
        want, have = beta[key], got.get(key, 0)
        if isinstance(want, Fraction) and all(isinstance(c, Fraction) for a in mu.atoms for c in a):
            if have != want:
                return False
            continue
        scale = sum(abs(w) * (1 + x * x + y * y) ** (sum(key) / 2) for x, y, w in mu.float_atoms())
        if abs(float(have) - float(want)) > rel_tol * max(scale, abs(float(want)), 1e-300):
            return False
    return True


def kernel_contains(beta, p, tol=1e-9):
    """Whether the coefficient vector of p is in ker M(n)."""
    from .core import build_moment_matrix
    M = build_moment_matrix(beta).entries
    v = p.to_vector(beta.n, beta.exact)
    r = M @ v
    if beta.exact:
        return all(c == 0 for c in r)
    M = np.asarray(M, dtype=float)
    return float(np.linalg.norm(r.astype(float))) <= tol * np.linalg.norm(M, 2) * max(np.linalg.norm(v.astype(float)), 1)
