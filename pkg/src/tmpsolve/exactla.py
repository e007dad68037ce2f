"""Rank, PSD, kernels and determinants over Q (exact) or floats.

Exact mode is selected by an ``object`` dtype array of Fractions; float
arrays use the relative tolerance policy below.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
import scipy.linalg

DEFAULT_TOL = 1e-12


class SingularBlockError(ValueError):
    """Raised when an identity needs an invertible block that is singular."""


@dataclass(frozen=True)
class RankReport:
    rank: int
    mode: str
    tolerance_used: float | None
    pivot_indices: tuple


def is_exact(A):
    return np.asarray(A).dtype == object


def as_exact(A):
    A = np.asarray(A)
    out = np.empty(A.shape, dtype=object)
    for idx, v in np.ndenumerate(A):
        out[idx] = v if isinstance(v, Fraction) else Fraction(v) if isinstance(v, (int, np.integer)) else Fraction(float(v))
    return out


def as_float(A):
    return np.asarray(A, dtype=float)


def identity(m, exact=True):
    if not exact:
        return np.eye(m)
    out = np.full((m, m), Fraction(0), dtype=object)
    for i in range(m):
        out[i, i] = Fraction(1)
    return out


# --- exact elimination --------------------------------------------------------

def _integer_rows(A):
    rows = []
    for row in A:
        fr = [Fraction(v) for v in row]
        den = 1
        for v in fr:
            den = den * v.denominator // math.gcd(den, v.denominator)
        rows.append([int(v * den) for v in fr])
    return rows


def _reduce_row(row):
    g = 0
    for v in row:
        g = math.gcd(g, v)
        if g == 1:
            return row
    return [v // g for v in row] if g > 1 else row


def rref(A):
    """Reduced row echelon form of an exact matrix and its pivot columns.

    Elimination runs on integer rows (fraction-free, each row divided by
    the gcd of its entries); fractions appear only in the final scaling.
    """
    A = np.asarray(A)
    R = _integer_rows(A)
    rows = len(R)
    cols = A.shape[1] if A.ndim == 2 else 0
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        p = next((i for i in range(r, rows) if R[i][c] != 0), None)
        if p is None:
            continue
        R[r], R[p] = R[p], R[r]
        pr, pc = R[r], R[r][c]
        for i in range(rows):
            f = R[i][c]
            if i != r and f != 0:
                R[i] = _reduce_row([pc * a - f * b for a, b in zip(R[i], pr)])
        pivots.append(c)
        r += 1
    out = np.empty((rows, cols), dtype=object)
    for i in range(rows):
        lead = R[i][pivots[i]] if i < len(pivots) else 1
        for j in range(cols):
            out[i, j] = Fraction(R[i][j], lead)
    return out, tuple(pivots)


def bareiss_det(A):
    """Determinant by fraction-free elimination (exact)."""
    M = [list(row) for row in np.asarray(A)]
    n = len(M)
    if n == 0:
        return Fraction(1)
    # clear denominators row-wise so the elimination stays in the integers
    scale = Fraction(1)
    for i, row in enumerate(M):
        den = 1
        for v in row:
            den = den * Fraction(v).denominator // _gcd(den, Fraction(v).denominator)
        M[i] = [int(Fraction(v) * den) for v in row]
        scale /= den
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if M[i][k] != 0), None)
            if swap is None:
                return Fraction(0)
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1] * scale


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def det(A):
    A = np.asarray(A)
    if is_exact(A):
        return bareiss_det(A)
    return float(np.linalg.det(A)) if A.size else 1.0


# --- rank / pivots -------------------------------------------------------------

GAP_CEILING = 1e-7
GAP_RATIO = 1e3
NOISE_FLOOR = 1e-14     # relative singular values at this level are rounding


def effective_tol(A, tol=None):
    """Relative singular value threshold used for a float matrix.

    An explicit tol is used as given.  Otherwise the cut goes at the widest
    gap (at least GAP_RATIO) among singular values below GAP_CEILING, which
    separates rounding noise from small true values whatever the noise
    level.  Values below NOISE_FLOOR count as zero.  With no such gap the
    threshold is DEFAULT_TOL.
    """
    if tol is not None:
        return tol
    A = np.asarray(A, dtype=float)
    if A.size == 0:
        return DEFAULT_TOL
    s = np.linalg.svd(A, compute_uv=False)
    if s[0] == 0:
        return DEFAULT_TOL
    s = s / s[0]
    best, cut = GAP_RATIO, None
    for k in range(1, len(s)):
        if s[k] >= GAP_CEILING or s[k - 1] <= NOISE_FLOOR:
            continue
        ratio = s[k - 1] / max(s[k], NOISE_FLOOR)
        if ratio > best:
            best, cut = ratio, k
    if cut is None:
        return DEFAULT_TOL
    return float(np.sqrt(s[cut - 1] * max(s[cut], NOISE_FLOOR)))


def _float_rank(A, tol):
    if A.size == 0:
        return 0
    s = np.linalg.svd(A, compute_uv=False)
    if s[0] == 0:
        return 0
    return int(np.sum(s > tol * s[0]))


def greedy_pivots(A, tol=DEFAULT_TOL):
    """Columns taken left to right whenever they raise the rank."""
    A = np.asarray(A)
    if is_exact(A):
        return rref(A)[1]
    scale = np.linalg.norm(A, 2) if A.size else 0.0
    piv = []
    for j in range(A.shape[1]):
        cols = A[:, piv + [j]]
        s = np.linalg.svd(cols, compute_uv=False)
        if scale > 0 and s[-1] > tol * scale:
            piv.append(j)
    return tuple(piv)


def _null_pivots(A, r):
    """Pivot set of size r whose complement indexes an invertible block of the
    numerical null space, preferring late columns as the dependent ones."""
    m = A.shape[1]
    if r >= m:
        return tuple(range(m))
    N = np.linalg.svd(A)[2][r:].T
    dep = []
    for j in reversed(range(m)):
        rows = N[dep + [j], :]
        if np.linalg.svd(rows, compute_uv=False)[-1] > 1e-6:
            dep.append(j)
        if len(dep) == m - r:
            break
    if len(dep) < m - r:
        dep = list(scipy.linalg.qr(N.T, pivoting=True)[2][:m - r])
    return tuple(j for j in range(m) if j not in dep)


def rank(A, tol=None):
    A = np.asarray(A)
    if is_exact(A):
        piv = rref(A)[1] if A.size else ()
        return RankReport(len(piv), "exact", None, piv)
    tol = effective_tol(A, tol)
    r = _float_rank(A, tol)
    piv = greedy_pivots(A, tol)
    if len(piv) != r:
        piv = _null_pivots(A, r)
    return RankReport(r, "float", tol, piv)


# --- positive semidefiniteness --------------------------------------------------

REFUTE_TOL = 1e-6


def clearly_not_psd(A, tol=None):
    """Non-PSD beyond float noise; exact input falls back to :func:`psd`.

    Meant for matrices built from derived moments (residuals, pushforwards),
    where rounding error is amplified and a tiny negative eigenvalue is not
    evidence against a measure.
    """
    A = np.asarray(A)
    if is_exact(A):
        return not psd(A)
    if A.size == 0:
        return False
    tol = REFUTE_TOL if tol is None else max(tol, REFUTE_TOL)
    w = np.linalg.eigvalsh((A + A.T) / 2)
    return bool(w[0] < -tol * max(abs(w[0]), abs(w[-1])))


def psd(A, tol=None):
    """Positive semidefiniteness.

    Exact mode peels a positive diagonal pivot, replaces the rest by its
    Schur complement and recurses; a zero diagonal entry forces its whole
    row to vanish.
    """
    A = np.asarray(A)
    if not is_exact(A):
        if A.size == 0:
            return True
        tol = effective_tol(A, tol)
        w = np.linalg.eigvalsh((A + A.T) / 2)
        return bool(w[0] >= -tol * max(abs(w[0]), abs(w[-1]), 0.0))
    M = [list(row) for row in A]
    while M:
        n = len(M)
        for i in range(n):
            for j in range(i + 1, n):
                if M[i][j] != M[j][i]:
                    return False
        diag = [M[i][i] for i in range(n)]
        if any(d < 0 for d in diag):
            return False
        zero = [i for i in range(n) if diag[i] == 0]
        if zero:
            if any(M[i][j] != 0 for i in zero for j in range(n)):
                return False
            keep = [i for i in range(n) if diag[i] != 0]
            M = [[M[i][j] for j in keep] for i in keep]
            continue
        p = M[0][0]
        M = [[M[i][j] - M[i][0] * M[0][j] / p for j in range(1, n)] for i in range(1, n)]
    return True


def positive_definite(A, tol=None):
    A = np.asarray(A)
    if A.size == 0:
        return True
    if is_exact(A):
        return psd(A) and rank(A).rank == A.shape[0]
    tol = effective_tol(A, tol)
    w = np.linalg.eigvalsh((A + A.T) / 2)
    return bool(w[0] > tol * max(abs(w[-1]), 1e-300))


# --- kernels and solves ----------------------------------------------------------

def kernel_basis(A, tol=None):
    """Null-space basis, one vector per non-pivot column j.

    The vector for column j has a 1 in slot j, zeros at the other non-pivot
    slots, and expresses column j through the greedy pivot columns.
    """
    A = np.asarray(A)
    m = A.shape[1]
    if is_exact(A):
        R, piv = rref(A)
        out = []
        for j in range(m):
            if j in piv:
                continue
            v = np.full(m, Fraction(0), dtype=object)
            v[j] = Fraction(1)
            for r, p in enumerate(piv):
                v[p] = -R[r, j]
            out.append(v)
        return out
    piv = list(rank(A, tol).pivot_indices)
    out = []
    B = A[:, piv]
    for j in range(m):
        if j in piv:
            continue
        c = np.linalg.lstsq(B, A[:, j], rcond=None)[0] if piv else np.zeros(0)
        v = np.zeros(m)
        v[j] = 1.0
        v[piv] = -c
        out.append(v)
    return out


def solve_consistent(A, b, tol=None):
    """One solution of A x = b, or None when the system is inconsistent.

    Exact mode decides consistency exactly; float mode accepts a least
    squares solution whose residual is at most tol * (|A| |x| + |b|).
    """
    A = np.asarray(A)
    b = np.asarray(b)
    rows, cols = A.shape
    if is_exact(A) or is_exact(b):
        aug = np.empty((rows, cols + 1), dtype=object)
        aug[:, :cols] = as_exact(A)
        aug[:, cols] = as_exact(b.reshape(-1))
        R, piv = rref(aug)
        if cols in piv:
            return None
        x = np.full(cols, Fraction(0), dtype=object)
        for r, p in enumerate(piv):
            x[p] = R[r, cols]
        return x
    tol = 1e-8 if tol is None else tol
    x = np.linalg.lstsq(A, b, rcond=None)[0]
    res = np.linalg.norm(A @ x - b)
    scale = np.linalg.norm(A, 2) * np.linalg.norm(x) + np.linalg.norm(b)
    return x if res <= tol * max(scale, 1e-300) else None


def solution_space(A, b, tol=None):
    """Particular solution plus kernel basis, or None if inconsistent."""
    x = solve_consistent(A, b, tol)
    if x is None:
        return None
    return x, kernel_basis(A, tol)


def inverse(A):
    A = np.asarray(A)
    if not is_exact(A):
        return np.linalg.inv(A)
    m = A.shape[0]
    aug = np.empty((m, 2 * m), dtype=object)
    aug[:, :m] = A
    aug[:, m:] = identity(m)
    R, piv = rref(aug)
    if tuple(piv[:m]) != tuple(range(m)):
        raise SingularBlockError("matrix is singular")
    return R[:, m:]


def solve(A, b):
    A = np.asarray(A)
    if not is_exact(A):
        return np.linalg.solve(A, b)
    return inverse(A) @ np.asarray(b, dtype=object)


# --- compressions, Schur determinant, rank-one reduction -------------------------

def compress(A, idx, base=1):
    """Principal submatrix on ``idx`` (1-based labels by default)."""
    A = np.asarray(A)
    m = A.shape[0]
    pos = [i - base for i in idx]
    if any(p < 0 or p >= m for p in pos):
        raise IndexError(f"compression index out of range 1..{m}")
    return A[np.ix_(pos, pos)]


def schur_det(P):
    """det P = det P0 * (u - t P0^{-1} t^T) for P = [[u, t], [t^T, P0]]."""
    P = np.asarray(P)
    u, t, P0 = P[0, 0], P[0, 1:], P[1:, 1:]
    d0 = det(P0)
    if d0 == 0 or (not is_exact(P) and abs(d0) < 1e-300):
        raise SingularBlockError("Schur identity needs an invertible lower block")
    return d0 * (u - t @ solve(P0, t))


def rank_one_rho(A, v):
    """The rho > 0 with det(A - rho v v^T) = 0, i.e. 1 / (v^T A^{-1} v)."""
    v = np.asarray(v)
    if all(c == 0 for c in v):
        raise ValueError("v must be nonzero")
    q = v @ solve(A, v)
    return 1 / q


def outer(u, v):
    u, v = np.asarray(u), np.asarray(v)
    return np.outer(u, v) if not (is_exact(u) or is_exact(v)) else np.array(
        [[a * b for b in v] for a in u], dtype=object)
