"""Atoms of a flat moment matrix via multiplication operators.

For flat M(n) of rank r the greedy column basis B lies in degree <= n-1, so
multiplication by x and y acts on span(B) with matrices read off M.  Their
joint eigenvalues are the atoms.  In exact mode the atoms come out as the
roots of the characteristic polynomial of a separating combination
u = x + lam*y, with coordinates given as polynomials in u.
"""

from fractions import Fraction

import numpy as np
from scipy.linalg import eigh

from .. import exactla as la
from ..algebraic import split_atoms
from ..core import AtomicMeasure, basis_size, build_moment_matrix, monomial_basis
from ..errors import InconclusiveError, NoMeasureError
from .. import upoly as up

LAMBDAS = [0, 1, -1, 2, Fraction(1, 2), -2, 3, Fraction(-1, 3), 5, Fraction(2, 7), -7, 11, Fraction(-3, 13)]


def _operators(beta, tol):
    M = build_moment_matrix(beta).entries
    n = beta.n
    exact = beta.exact
    piv = list(la.greedy_pivots(M, la.effective_tol(M, tol)))
    r = len(piv) if exact else la.rank(M, tol).rank
    piv = piv[:r]
    basis = monomial_basis(n)
    low = basis_size(n - 1) if n else 0
    if any(p >= low for p in piv) and n > 0:
        raise ValueError("moment matrix is not flat")
    index = {m: k for k, m in enumerate(basis)}
    MBB = M[np.ix_(piv, piv)]
    MB = M[piv, :]
    Minv = la.inverse(MBB)

    def coord(monomial):
        return Minv @ MB[:, index[monomial]]

    Mx = np.column_stack([coord((basis[p][0] + 1, basis[p][1])) for p in piv]) if piv else None
    My = np.column_stack([coord((basis[p][0], basis[p][1] + 1)) for p in piv]) if piv else None
    return M, piv, Mx, My, coord


def extract_flat_measure(beta, tol=None):
    """Atoms and densities of flat positive data (rank M(n) = rank M(n-1))."""
    M = build_moment_matrix(beta).entries
    if not la.psd(M, tol):
        raise NoMeasureError("not-psd")
    n = beta.n
    r = la.rank(M, tol).rank
    if n:
        low = basis_size(n - 1)
        if la.rank(M[:low, :low], tol).rank != r:
            raise ValueError("moment matrix is not flat")
    if r == 0:
        return AtomicMeasure()
    if not beta.exact:
        piv = list(la.rank(M, tol).pivot_indices)
        return _float_atoms(beta, piv, r)
    M, piv, Mx, My, coord = _operators(beta, tol)
    if piv[0] != 0:
        raise InconclusiveError("flat-extraction-no-mass")
    e = coord((0, 0))
    cx, cy = coord((1, 0)), coord((0, 1))
    return _exact_atoms(Mx, My, e, cx, cy, M[0, piv], r)


def _exact_atoms(Mx, My, e, cx, cy, beta_B, r):
    for lam in LAMBDAS:
        lam = Fraction(lam)
        Mu = Mx + My * lam
        K = [e]
        for _ in range(r):
            K.append(Mu @ K[-1])
        Kmat = np.column_stack(K[:r])
        if la.rank(Kmat).rank < r:
            continue
        Kinv = la.inverse(Kmat)
        tail = Kinv @ K[r]
        chi = [-c for c in tail] + [Fraction(1)]
        if up.degree(up.gcd(chi, up.deriv(chi))) > 0:
            continue
        X = up.trim(list(Kinv @ cx))
        Y = up.trim(list(Kinv @ cy))
        lvals = [beta_B @ k for k in K[:r]]
        try:
            atoms, blocks = split_atoms(chi, lvals, X, Y)
        except ValueError as exc:
            raise NoMeasureError("flat-atoms-not-real", detail=str(exc)) from exc
        mu = AtomicMeasure(atoms, blocks)
        if not mu.densities_positive():
            raise NoMeasureError("flat-densities-not-positive")
        return mu
    raise InconclusiveError("no-separating-direction")


def _float_atoms(beta, piv, r):
    """Atoms from the pencil (M[B, uB], M[B, B]); symmetric-definite and stable.

    For an eigenvector w (coordinates of a Lagrange polynomial L_k), the
    Rayleigh quotients give the coordinates and rho_k = Lambda(L_k)^2 / Lambda(L_k^2).
    """
    basis = monomial_basis(beta.n)
    B = [basis[p] for p in piv]
    shifted = lambda di, dj: np.array([[float(beta[(a[0] + b[0] + di, a[1] + b[1] + dj)]) for b in B] for a in B])
    G, Ax, Ay = shifted(0, 0), shifted(1, 0), shifted(0, 1)
    beta_B = np.array([float(beta[m]) for m in B])
    best = None
    for lam in LAMBDAS:
        w, W = eigh(Ax + float(lam) * Ay, G)
        gap = np.min(np.diff(w)) if r > 1 else 1.0
        scale = max(1.0, np.max(np.abs(w)))
        if best is None or gap / scale > best[0]:
            best = (gap / scale, W)
        if gap > 1e-6 * scale:
            break
    W = best[1]
    atoms = []
    for k in range(r):
        wk = W[:, k]
        g = wk @ G @ wk
        x, y = (wk @ Ax @ wk) / g, (wk @ Ay @ wk) / g
        rho = (beta_B @ wk) ** 2 / g
        atoms.append((float(x), float(y), float(rho)))
    if any(a[2] <= 0 for a in atoms):
        raise NoMeasureError("flat-densities-not-positive")
    return AtomicMeasure(atoms)
