"""Univariate truncated Hankel moment problems and line-supported data.

Univariate measures are returned as planar :class:`AtomicMeasure` objects on
the x-axis (y = 0), so mapping them onto a line is an affine pushforward.
"""

from fractions import Fraction

import numpy as np

from . import exactla as la
from . import upoly as up
from .algebraic import split_atoms
from .core import AffineMap, AtomicMeasure, MomentSequence, monomial_basis, riesz
from .errors import NoMeasureError
from .poly2d import BiPoly
from .variety import is_recursively_generated


def hankel_matrix(h, k):
    """H(k) with entry (i, j) = h[i + j]."""
    exact = all(isinstance(v, (Fraction, int)) for v in h)
    out = np.empty((k + 1, k + 1), dtype=object if exact else float)
    for i in range(k + 1):
        for j in range(k + 1):
            out[i, j] = Fraction(h[i + j]) if exact else float(h[i + j])
    return out


def _half(h):
    return (len(h) - 1) // 2


def hankel_psd_flat(h, tol=None):
    """(PSD of H(n), rank H(n) == rank H(n-1), rank H(n))."""
    n = _half(h)
    H = hankel_matrix(h, n)
    r = la.rank(H, tol).rank
    r_prev = la.rank(H[:n, :n], tol).rank if n else 0
    return la.psd(H, tol), r == r_prev, r


def _first_dependent(H, tol):
    """Smallest k with column k of H in the span of columns 0..k-1."""
    m = H.shape[0]
    for k in range(m):
        if la.rank(H[:, :k + 1], tol).rank <= k:
            return k
    return m


def _atoms_from_generator(h, k, tol):
    """The k-atomic measure whose moments start with h, from H(k)'s kernel."""
    exact = all(isinstance(v, (Fraction, int)) for v in h)
    if k == 0:
        return AtomicMeasure()
    Hk1 = hankel_matrix(h, k - 1)
    rhs = np.array([h[k + i] for i in range(k)], dtype=object if exact else float)
    if exact:
        rhs = la.as_exact(rhs)
    phi = la.solve(Hk1, rhs)
    chi = [-c for c in phi] + [Fraction(1) if exact else 1.0]      # t^k - sum phi_i t^i
    if exact:
        try:
            atoms, blocks = split_atoms(chi, [Fraction(v) for v in h[:k]], [Fraction(0), Fraction(1)], [])
        except ValueError as exc:
            raise NoMeasureError("generating-polynomial-roots", detail=str(exc)) from exc
        return AtomicMeasure([(x, Fraction(0), w) for x, _, w in atoms],
                             [b for b in blocks])
    roots = up.real_roots_float(chi)
    if len(roots) != k:
        raise NoMeasureError("generating-polynomial-roots")
    V = np.vander(np.array(roots), k, increasing=True).T
    w = np.linalg.solve(V, np.array([float(v) for v in h[:k]]))
    return AtomicMeasure([(t, 0.0, float(wi)) for t, wi in zip(roots, w)])


def extract_atoms_flat(h, tol=None):
    """Atoms of a PSD flat Hankel sequence (rank many, on the x-axis)."""
    ok, flat, r = hankel_psd_flat(h, tol)
    if not ok:
        raise NoMeasureError("hankel-not-psd")
    if not flat:
        raise ValueError("Hankel data is not flat")
    return _atoms_from_generator(h, r, tol)


def flat_extend_pd(h, tol=None, odd=0):
    """Extend positive definite H(n) flatly; returns (extended h, measure).

    An odd-length input h_0..h_2n gets h_{2n+1} = ``odd`` (any value works);
    then h_{2n+2} is the value making the Schur complement of H(n) in H(n+1)
    vanish.
    """
    h = list(h)
    exact = all(isinstance(v, (Fraction, int)) for v in h)
    zero = Fraction(0) if exact else 0.0
    n = _half(h)
    H = hankel_matrix(h, n)
    if not la.positive_definite(H, tol):
        raise ValueError("H(n) must be positive definite")
    if len(h) == 2 * n + 1:
        h.append(zero + odd)
    b = np.array([h[n + 1 + i] for i in range(n + 1)], dtype=object if exact else float)
    if exact:
        b = la.as_exact(b)
    h.append(b @ la.solve(H, b))
    if exact:
        h = [Fraction(v) for v in h]
    return h, _atoms_from_generator(h, n + 1, tol)


def odd_for_node(h, tau):
    """The h_{2n+1} whose flat extension of positive definite H(n) has an atom at tau.

    The generating polynomial t^(n+1) - sum phi_i t^i is affine in h_{2n+1},
    so the condition chi(tau) = 0 is one linear equation.  Returns None when
    tau is a node for every choice.
    """
    h = list(h)
    exact = all(isinstance(v, (Fraction, int)) for v in h)
    n = _half(h)
    H = hankel_matrix(h, n)
    dt = object if exact else float
    b = np.array([h[n + 1 + i] for i in range(n)] + [0], dtype=dt)
    e = np.array([0] * n + [1], dtype=dt)
    if exact:
        b, e, tau = la.as_exact(b), la.as_exact(e), Fraction(tau)
    powers = np.array([tau ** i for i in range(n + 1)], dtype=dt)
    chi0 = tau ** (n + 1) - la.solve(H, b) @ powers
    slope = la.solve(H, e) @ powers
    if slope == 0 or (not exact and abs(slope) < 1e-300):
        return None
    return chi0 / slope


def odd_candidates(h):
    """Values of h_{2n+1} worth trying for a flat extension.

    Besides 0, place the new node at the mean and one standard deviation
    either side, which keeps it from drifting far out.
    """
    exact = all(isinstance(v, (Fraction, int)) for v in h)
    out = [Fraction(0) if exact else 0.0]
    if len(h) < 3 or h[0] <= 0:
        return out
    mean = h[1] / h[0]
    var = h[2] / h[0] - mean * mean
    sd = float(var) ** 0.5 if var > 0 else 0.0
    if exact:
        sd = Fraction(sd).limit_denominator(64)
    hh = h[:2 * _half(h) + 1]
    for tau in (mean, mean - sd, mean + sd):
        try:
            s = odd_for_node(hh, tau)
        except (ValueError, ZeroDivisionError, np.linalg.LinAlgError):
            continue
        if s is not None and all(s != v for v in out):
            out.append(s)
    return out


def _misfit(h, mu):
    scale = max(abs(float(v)) for v in h)
    got = [sum(w * x ** k for x, _, w in mu.atoms) for k in range(len(h))]
    return max(abs(g - float(v)) for g, v in zip(got, h)) / scale


def solve_univariate(h, tol=None, odd=None):
    """Representing measure of h_0..h_2n on the real line (as x-axis atoms).

    Positive definite data are extended flatly with h_{2n+1} = ``odd``; by
    default 0 for exact data, and for float data the candidate from
    :func:`odd_candidates` that reproduces h best.  Singular data need
    rank H(n) equal to the index of the first dependent column.
    """
    n = _half(h)
    H = hankel_matrix(h, n)
    if not la.psd(H, tol):
        raise NoMeasureError("hankel-not-psd")
    r = la.rank(H, tol).rank
    if r == n + 1:
        pd = h[:2 * n + 1]
        if odd is not None or all(isinstance(v, (Fraction, int)) for v in h):
            return flat_extend_pd(pd, tol, 0 if odd is None else odd)[1]
        best = None
        for cand in odd_candidates(pd):
            try:
                mu = flat_extend_pd(pd, tol, cand)[1]
            except (NoMeasureError, ValueError, np.linalg.LinAlgError):
                continue
            if mu.densities_positive():
                err = _misfit(h, mu)
                if best is None or err < best[0]:
                    best = (err, mu)
        if best is None:
            raise NoMeasureError("generating-polynomial-roots")
        return best[1]
    k = _first_dependent(H, tol)
    if r != k:
        raise NoMeasureError("hankel-rank-condition", rank=r, first_dependent=k)
    return _atoms_from_generator(h, k, tol)


# --- line-supported planar data -----------------------------------------------------

def line_parametrization(ell):
    """Affine map sending the x-axis point (t, 0) onto the line ell = 0.

    Also returns the coordinate to read the univariate moments from:
    "x" when the line is a graph over x, "y" for vertical lines.
    """
    a = ell.coeffs.get((1, 0), 0)
    b = ell.coeffs.get((0, 1), 0)
    c = ell.coeffs.get((0, 0), 0)
    one = Fraction(1) if ell.is_exact else 1.0
    zero = 0 * one
    if b != 0:
        # (t, 0) -> (t, -(a t + c) / b)
        return AffineMap(one, zero, -a / b, zero, zero, -c / b), "x"
    if a == 0:
        raise ValueError("not a line")
    # (t, 0) -> (-c / a, t)
    return AffineMap(zero, zero, one, zero, -c / a, zero), "y"


def solve_line_supported(beta, ell, tol=None):
    """Measure on the line ell = 0 for data with column relation ell(X, Y) = 0.

    Requires positivity and recursive generation; every moment must then be
    determined by the moments along the line, and the univariate problem
    along the line is solved with the Hankel engine.
    """
    from .core import build_moment_matrix

    M = build_moment_matrix(beta)
    if not la.psd(M.entries, tol):
        raise NoMeasureError("not-psd")
    if not is_recursively_generated(M, tol):
        raise NoMeasureError("not-recursively-generated")
    phi, coord = line_parametrization(ell)
    order = beta.order
    h = [beta[(k, 0)] if coord == "x" else beta[(0, k)] for k in range(order + 1)]
    # propagation: beta_ij must equal the univariate functional of x^i y^j on the line
    one = Fraction(1) if beta.exact else 1.0
    X = BiPoly({(1, 0): phi.a * one, (0, 0): phi.e * one})
    Y = BiPoly({(1, 0): phi.c * one, (0, 0): phi.f * one})
    uni = MomentSequence(order // 2, {m: (h[m[0]] if m[1] == 0 else 0 * one) for m in monomial_basis(order)},
                         beta.mode)
    for (i, j) in monomial_basis(order):
        val = riesz(uni, X ** i * Y ** j)
        if beta.exact:
            if val != beta[(i, j)]:
                raise NoMeasureError("line-relation-not-propagated", index=(i, j))
        elif abs(val - beta[(i, j)]) > 1e-7 * max(1.0, abs(beta[(i, j)])):
            raise NoMeasureError("line-relation-not-propagated", index=(i, j))
    mu = solve_univariate(h, tol)
    return mu.mapped(phi)
