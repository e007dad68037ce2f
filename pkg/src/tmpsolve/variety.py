"""Column relations, varieties, Vandermonde matrices and consistency."""

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import exactla as la
from . import upoly as up
from .errors import InconclusiveError
from .core import basis_size, monomial_basis, riesz
from .poly2d import (BiPoly, ConicClass, classify_conic, common_zeros, conic_matrix,
                     divide, evaluate, gcd_all, line_factors, merge_points)

CONSISTENCY_SAMPLES = 40


@dataclass(frozen=True)
class VarietyDescriptor:
    kind: str                              # "finite" or "infinite"
    points: tuple = ()                     # all points, or the isolated ones
    components: tuple = ()                 # curve components (infinite only)
    exact: bool = True                     # every point has rational coordinates
    whole_plane: bool = False

    @property
    def cardinality(self):
        return len(self.points) if self.kind == "finite" else math.inf

    @property
    def is_finite(self):
        return self.kind == "finite"

    def on_components(self, pt, tol=1e-9):
        return any(_vanishes(c, pt, tol) for c in self.components)

    def describe(self):
        if self.kind == "finite":
            return f"{len(self.points)} points"
        if self.whole_plane:
            return "whole plane"
        comps = ", ".join(str(c) for c in self.components)
        return f"infinite: components [{comps}] + {len(self.points)} isolated points"


def _vanishes(p, pt, tol):
    val = evaluate(p, pt)
    if isinstance(val, Fraction) and all(isinstance(c, Fraction) for c in pt):
        return val == 0
    scale = max(p.scale_norm(), 1e-300) * (1 + abs(float(pt[0])) + abs(float(pt[1]))) ** max(p.degree, 0)
    return abs(float(val)) <= tol * scale


def column_relations(M, tol=None):
    """Kernel of M as polynomials: one per column depending on earlier columns."""
    A = np.asarray(M)
    n = M.n if hasattr(M, "n") else _order_of(A.shape[0])
    return [BiPoly.from_vector(v, n).cleaned() for v in la.kernel_basis(A, tol)]


def _order_of(size):
    n = 0
    while basis_size(n) < size:
        n += 1
    if basis_size(n) != size:
        raise ValueError("matrix size is not a moment matrix size")
    return n


# --- components ---------------------------------------------------------------

def split_components(g, tol=1e-7):
    """Real curve components of g: its linear factors and the remaining factor.

    Returns (components, extra_points) where extra_points collects real
    points of degenerate conic factors that are a single point.
    """
    comps = []
    rest = g
    while rest.degree >= 1:
        for ln in line_factors(rest, tol):
            try:
                rest = divide(rest, ln, tol=max(tol, 1e-8))
            except ValueError:
                continue          # float candidate that only nearly divides
            comps.append(ln)
            break
        else:
            break
    extra = []
    if rest.degree == 2:
        cls = classify_conic(rest)
        if cls == ConicClass.OTHER:
            pt = _conic_center_point(rest)
            if pt is not None:
                extra.append(pt)
        else:
            comps.append(rest.normalized())
    elif rest.degree >= 3:
        comps.append(rest.normalized())
    uniq = []
    for c in comps:
        if not any(_same_curve(c, u) for u in uniq):
            uniq.append(c)
    return uniq, extra


def _same_curve(a, b):
    if a.degree != b.degree:
        return False
    d = a.normalized() - b.normalized()
    return d.is_zero() or (not a.is_exact and d.scale_norm() <= 1e-8 * max(a.scale_norm(), 1))


def _conic_center_point(c):
    """The real point of a conic that degenerates to one point, if any."""
    Q = conic_matrix(c)
    A, H, G = Q[0]
    _, C, F = Q[1]
    det2 = A * C - H * H
    if det2 == 0:
        return None
    x0 = (-G * C + H * F) / det2
    y0 = (-A * F + H * G) / det2
    return (x0, y0) if _vanishes(c, (x0, y0), 1e-9) else None


# --- variety -----------------------------------------------------------------

def _combos(polys, count):
    k = len(polys)
    seeds = [[1] * k, [(i + 1) for i in range(k)], [(-1) ** i * (2 * i + 1) for i in range(k)],
             [(i * i + 1) for i in range(k)], [(3 - i) for i in range(k)], [(2 ** i) for i in range(k)]]
    out = []
    for s in seeds[:count]:
        acc = BiPoly()
        for c, p in zip(s, polys):
            acc = acc + p * c
        out.append(acc)
    return out


def _finite_intersection(polys, tol):
    """Real common zeros of polynomials whose gcd is constant."""
    if any(p.degree == 0 for p in polys):
        return [], True
    if len(polys) == 1:
        raise InconclusiveError("single-relation-not-finite")
    exact = all(p.is_exact for p in polys)
    candidates = _combos(polys, 6)
    pairs = [(polys[0], polys[1])] if len(polys) == 2 else []
    pairs += [(candidates[i], candidates[j]) for i in range(len(candidates)) for j in range(i + 1, len(candidates))]
    for p, q in pairs:
        if p.is_zero() or q.is_zero():
            continue
        z = common_zeros(p, q, tol)
        if z.kind != "finite":
            continue
        pts = [pt for pt in z.points if all(_vanishes(r, pt, tol) for r in polys)]
        is_exact = exact and all(isinstance(c, Fraction) for pt in pts for c in pt)
        return pts, is_exact
    raise InconclusiveError("no-coprime-pair")


def compute_variety(relations, tol=1e-7):
    """Common real zeros of the relations, as finite points or components."""
    relations = [r if r.is_exact else r.cleaned(1e-9) for r in relations if not r.is_zero()]
    if not relations:
        return VarietyDescriptor("infinite", (), (), True, whole_plane=True)
    exact = all(r.is_exact for r in relations)
    g = gcd_all(relations, tol)
    if g.degree <= 0:
        pts, is_exact = _finite_intersection(relations, tol)
        return VarietyDescriptor("finite", tuple(_sorted_points(pts)), (), is_exact)
    comps, extra = split_components(g, tol)
    cof = [divide(r, g, tol=max(tol, 1e-8)) for r in relations]
    if len(cof) == 1:
        iso = []
        iso_exact = True
    else:
        iso, iso_exact = _finite_intersection(cof, tol)
    iso = [pt for pt in list(iso) + list(extra) if not any(_vanishes(c, pt, tol) for c in comps)]
    iso = merge_points(_sorted_points(iso))
    if not comps:
        return VarietyDescriptor("finite", tuple(iso), (), exact and iso_exact)
    return VarietyDescriptor("infinite", tuple(iso), tuple(comps), exact and iso_exact)


def _sorted_points(pts):
    return sorted(pts, key=lambda p: (float(p[0]), float(p[1])))


# --- Vandermonde -----------------------------------------------------------------

def monomial_vector(pt, degree, exact=None):
    x, y = pt
    if exact is None:
        exact = isinstance(x, Fraction) and isinstance(y, Fraction)
    if exact:
        x, y = Fraction(x), Fraction(y)
    else:
        x, y = float(x), float(y)
    xp, yp = [x ** 0], [y ** 0]
    for _ in range(degree):
        xp.append(xp[-1] * x)
        yp.append(yp[-1] * y)
    vals = [xp[i] * yp[j] for i, j in monomial_basis(degree)]
    return np.array(vals, dtype=object if exact else float)


def vandermonde(points, degree):
    """Rows are monomial evaluation vectors of the points (graded lex columns)."""
    exact = all(isinstance(c, Fraction) for pt in points for c in pt)
    if not points:
        return np.zeros((0, basis_size(degree)), dtype=object if exact else float)
    return np.vstack([monomial_vector(pt, degree, exact) for pt in points])


def removable_points(points, degree, tol=None):
    """Points whose Vandermonde row depends on the other rows, in lex order."""
    pts = sorted(points, key=lambda p: (float(p[0]), float(p[1])))
    E = vandermonde(pts, degree)
    r = la.rank(E, tol).rank
    out = []
    for k, pt in enumerate(pts):
        rest = np.delete(E, k, axis=0)
        if la.rank(rest, tol).rank == r:
            out.append(pt)
    return out


def find_removable_point(points, degree, tol=None):
    pts = removable_points(points, degree, tol)
    if not pts:
        raise ValueError("every Vandermonde row is independent; no removable point")
    return pts[0]


# --- component sampling --------------------------------------------------------------

def _small_rationals(count):
    out = [Fraction(0)]
    k = 1
    while len(out) < count:
        for v in (Fraction(k, 2), Fraction(-k, 2)):
            out.append(v)
        k += 1
    return out[:count]


def rational_point_on(c):
    """A rational point on an exact curve, searched over small x (or y) values."""
    for x0 in _small_rationals(81):
        ys = up.rational_roots(c.at_x(x0)) if up.degree(c.at_x(x0)) >= 1 else []
        if ys:
            return (x0, ys[0])
        for y0 in [x0]:
            xs = up.rational_roots(c.at_y(y0)) if up.degree(c.at_y(y0)) >= 1 else []
            if xs:
                return (xs[0], y0)
    return None


def _real_point_on(c):
    # search outward from the origin so samples stay well scaled
    for v in _small_rationals(81):
        ys = up.real_roots_float([float(a) for a in c.at_x(float(v))])
        if ys:
            return (float(v), min(ys, key=abs))
        xs = up.real_roots_float([float(a) for a in c.at_y(float(v))])
        if xs:
            return (min(xs, key=abs), float(v))
    return None


def sample_component(c, count, exact=None):
    """``count`` distinct points on a line or conic component.

    Exact components get rational points (lines through a known rational
    point cut the conic again at rational points).  Raises InconclusiveError
    when no sample can be produced.
    """
    exact = c.is_exact if exact is None else exact
    if c.degree == 1:
        a, b, d = (c.coeffs.get(k, 0) for k in ((1, 0), (0, 1), (0, 0)))
        ts = _small_rationals(count) if exact else [float(t) for t in _small_rationals(count)]
        if b != 0:
            return [(t, -(a * t + d) / b) for t in ts]
        return [(-d / a, t) for t in ts]
    if c.degree == 2:
        p0 = rational_point_on(c) if exact else _real_point_on(c)
        if p0 is None:
            raise InconclusiveError("no-point-on-component")
        x0, y0 = p0
        pts = [p0]
        one = Fraction(1) if exact else 1.0
        slopes = _small_rationals(4 * count) if exact else [float(m) for m in _small_rationals(4 * count)]
        # direction (1, m) and the vertical direction (0, 1)
        dirs = [(one, m) for m in slopes] + [(0 * one, one)]
        for dx, dy in dirs:
            # c(x0 + t dx, y0 + t dy) = t (A t + B)
            A = sum(v * dx ** i * dy ** j for (i, j), v in c.coeffs.items() if i + j == 2)
            B = (sum(v * i * x0 ** (i - 1) * y0 ** j for (i, j), v in c.coeffs.items() if i) * dx
                 + sum(v * j * x0 ** i * y0 ** (j - 1) for (i, j), v in c.coeffs.items() if j) * dy)
            if A == 0 or (not exact and abs(A) < 1e-12):
                continue
            t = -B / A
            pt = (x0 + t * dx, y0 + t * dy)
            if all(_dist(pt, q) > 1e-9 for q in pts):
                pts.append(pt)
            if len(pts) >= count:
                return pts
        raise InconclusiveError("too-few-samples-on-component")
    # higher degree: rational x values with rational y roots
    pts = []
    for x0 in _small_rationals(20 * count):
        f = c.at_x(x0) if exact else [float(v) for v in c.at_x(float(x0))]
        if up.degree(f) < 1:
            continue
        ys = up.rational_roots(f) if exact else up.real_roots_float(f)
        pts.extend((x0 if exact else float(x0), y0) for y0 in ys)
        if len(pts) >= count:
            return pts[:count]
    raise InconclusiveError("too-few-samples-on-component")


def _dist(p, q):
    return math.hypot(float(p[0]) - float(q[0]), float(p[1]) - float(q[1]))


def variety_sample(V, per_component=CONSISTENCY_SAMPLES, exact=True):
    """Points of V (finite) or isolated points plus samples on each component."""
    pts = list(V.points)
    for comp in V.components:
        pts.extend(sample_component(comp, per_component, exact=exact and comp.is_exact))
    return pts


# --- consistency -----------------------------------------------------------------

def vanishing_polynomials(points, degree, tol=None):
    """Basis of polynomials of degree <= ``degree`` vanishing on the points."""
    E = vandermonde(points, degree)
    if E.shape[0] == 0:
        return [BiPoly({m: (Fraction(1) if la.is_exact(E) else 1.0)}) for m in monomial_basis(degree)]
    if la.is_exact(E):
        return [BiPoly.from_vector(v, degree) for v in la.kernel_basis(E)]
    # scale columns for conditioning, then use an SVD null space
    norms = np.linalg.norm(E, axis=0)
    norms[norms == 0] = 1
    _, s, vt = np.linalg.svd(E / norms)
    tol = 1e-9 if tol is None else tol
    r = int(np.sum(s > tol * s[0])) if s.size else 0
    out = []
    for v in vt[r:]:
        out.append(BiPoly.from_vector(v / norms, degree))
    return out


def consistency_check(beta, V, tol=None, per_component=CONSISTENCY_SAMPLES):
    """True iff Lambda(p) = 0 for every p of degree <= 2n vanishing on V."""
    if V.whole_plane:
        return True
    if beta.exact and not V.exact:
        raise InconclusiveError("irrational-variety-points")
    pts = variety_sample(V, per_component, exact=beta.exact)
    if beta.exact:
        pts = [(Fraction(x), Fraction(y)) for x, y in pts]
        for p in vanishing_polynomials(pts, beta.order):
            if riesz(beta, p) != 0:
                return False
        return True
    pts = [(float(x), float(y)) for x, y in pts]
    rtol = 1e-7 if tol is None else max(tol, 1e-7)
    for p in vanishing_polynomials(pts, beta.order):
        scale = sum(abs(c * beta[m]) for m, c in p.coeffs.items())
        if abs(riesz(beta, p)) > rtol * max(scale, 1e-300):
            return False
    return True


def is_recursively_generated(M, tol=None):
    """Whether p(X, Y) = 0 with deg p < n forces (x p)(X, Y) = (y p)(X, Y) = 0."""
    A = np.asarray(M)
    n = M.n if hasattr(M, "n") else _order_of(A.shape[0])
    if n == 0:
        return True
    low = basis_size(n - 1)
    exact = la.is_exact(A)
    for v in la.kernel_basis(A[:, :low], tol):
        p = BiPoly.from_vector(v, n - 1)
        for shift in (BiPoly.x(), BiPoly.y()):
            w = (p * (shift if exact else shift * 1.0)).to_vector(n, exact)
            res = A @ w
            if exact:
                if any(c != 0 for c in res):
                    return False
            else:
                scale = np.linalg.norm(A, 2) * np.linalg.norm(w)
                if np.linalg.norm(res) > (1e-7 if tol is None else max(tol, 1e-9) * 100) * max(scale, 1e-300):
                    return False
    return True
