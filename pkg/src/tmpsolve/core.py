"""Moment data model: sequences, moment matrices, Riesz functional, measures."""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from numbers import Rational

import numpy as np


def monomial_basis(n):
    """Exponent pairs (i, j) of x^i y^j with i + j <= n, in graded lex order.

    >>> monomial_basis(1)
    [(0, 0), (1, 0), (0, 1)]
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    return [(i, d - i) for d in range(n + 1) for i in range(d, -1, -1)]


def basis_size(n):
    return (n + 1) * (n + 2) // 2


def monomial_label(m):
    i, j = m
    if i == j == 0:
        return "1"
    part = lambda v, e: "" if e == 0 else (v if e == 1 else f"{v}^{e}")
    return part("X", i) + part("Y", j)


def is_exact_value(v):
    return isinstance(v, Rational) and not isinstance(v, bool)


def to_exact(v):
    if isinstance(v, Fraction):
        return v
    if isinstance(v, (int, np.integer)):
        return Fraction(int(v))
    if isinstance(v, str):
        return Fraction(v.strip())
    return Fraction(float(v))


@dataclass(frozen=True)
class MomentSequence:
    """Moments beta[(i, j)] for 0 <= i + j <= 2n.

    ``mode`` is "exact" when every value is rational (Fraction/int), else
    "float"; values are normalized to match.
    """

    n: int
    beta: dict
    mode: str = field(default="")

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("n must be nonnegative")
        missing = [m for m in monomial_basis(2 * self.n) if m not in self.beta]
        if missing:
            raise KeyError(f"missing moment index {missing[0]}")
        mode = self.mode or ("exact" if all(is_exact_value(v) for v in self.beta.values()) else "float")
        if mode not in ("exact", "float"):
            raise ValueError(f"unknown mode {mode!r}")
        conv = to_exact if mode == "exact" else float
        beta = {m: conv(self.beta[m]) for m in monomial_basis(2 * self.n)}
        object.__setattr__(self, "beta", beta)
        object.__setattr__(self, "mode", mode)

    def __getitem__(self, ij):
        return self.beta[ij]

    @property
    def order(self):
        return 2 * self.n

    @property
    def exact(self):
        return self.mode == "exact"

    def with_mode(self, mode):
        return MomentSequence(self.n, dict(self.beta), mode)

    def truncate(self, n):
        if n > self.n:
            raise ValueError("cannot truncate to a larger order")
        return MomentSequence(n, {m: self.beta[m] for m in monomial_basis(2 * n)}, self.mode)

    def replace(self, **updates):
        beta = dict(self.beta)
        for key, val in updates.items():
            beta[_parse_key(key)] = val
        return MomentSequence(self.n, beta, self.mode)


def _parse_key(key):
    if isinstance(key, tuple):
        return key
    # "b30" style keyword
    digits = key.lstrip("b")
    return int(digits[0]), int(digits[1])


@dataclass(frozen=True)
class MomentMatrix:
    n: int
    entries: np.ndarray
    mode: str

    @cached_property
    def labels(self):
        return monomial_basis(self.n)

    def index(self, monomial):
        return self.labels.index(monomial)

    def block(self, i, j):
        """Hankel block of degree-i rows against degree-j columns."""
        lo_i, lo_j = basis_size(i - 1) if i else 0, basis_size(j - 1) if j else 0
        return self.entries[lo_i:lo_i + i + 1, lo_j:lo_j + j + 1]

    def leading(self, k):
        """The M(k) compression (first basis_size(k) rows/columns)."""
        s = basis_size(k)
        return MomentMatrix(k, self.entries[:s, :s], self.mode)

    def __array__(self, dtype=None, copy=None):
        return self.entries if dtype is None else self.entries.astype(dtype)


def build_moment_matrix(beta, n=None):
    """M(n) with entry (u, w) = beta_{u+w}; n defaults to beta.n."""
    n = beta.n if n is None else n
    if n > beta.n:
        raise ValueError("moment matrix order exceeds the data")
    basis = monomial_basis(n)
    size = len(basis)
    dtype = object if beta.exact else float
    out = np.empty((size, size), dtype=dtype)
    for r, (a, b) in enumerate(basis):
        for c, (p, q) in enumerate(basis):
            out[r, c] = beta.beta[(a + p, b + q)]
    return MomentMatrix(n, out, beta.mode)


def riesz(beta, p):
    """Lambda(p) = sum a_ij beta_ij for a BiPoly (or {(i, j): coef} mapping)."""
    terms = p.coeffs if hasattr(p, "coeffs") else p
    total = Fraction(0) if beta.exact else 0.0
    for (i, j), a in terms.items():
        if i + j > beta.order:
            raise ValueError(f"degree {i + j} exceeds moment order {beta.order}")
        total += a * beta.beta[(i, j)]
    return total


# --- measures ----------------------------------------------------------------

@dataclass(frozen=True)
class AtomicMeasure:
    """Finitely atomic measure.

    ``atoms`` holds explicit (x, y, density) triples; ``blocks`` holds groups
    of algebraic atoms (see :class:`tmpsolve.algebraic.RootBlock`) whose
    coordinates are conjugate irrationals.
    """

    atoms: tuple = ()
    blocks: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "atoms", tuple(tuple(a) for a in self.atoms))
        object.__setattr__(self, "blocks", tuple(self.blocks))

    @property
    def exact(self):
        return all(is_exact_value(c) for a in self.atoms for c in a)

    @property
    def support_size(self):
        return len(self.atoms) + sum(b.size for b in self.blocks)

    def __len__(self):
        return self.support_size

    def float_atoms(self):
        """All atoms as sorted float triples (x, y, density)."""
        pts = [(float(x), float(y), float(w)) for x, y, w in self.atoms]
        for b in self.blocks:
            pts.extend(b.float_atoms())
        return sorted(pts)

    def densities_positive(self):
        return all(w > 0 for _, _, w in self.atoms) and all(b.densities_positive() for b in self.blocks)

    def plus(self, other):
        return AtomicMeasure(self.atoms + other.atoms, self.blocks + other.blocks)

    def mapped(self, affine):
        """Push the measure forward under an affine plane map."""
        atoms = [(*affine(x, y), w) for x, y, w in self.atoms]
        blocks = [b.mapped(affine) for b in self.blocks]
        return AtomicMeasure(atoms, blocks)

    def merged(self):
        """Combine explicit atoms at identical coordinates."""
        acc = {}
        for x, y, w in self.atoms:
            acc[(x, y)] = acc.get((x, y), 0) + w
        return AtomicMeasure([(x, y, w) for (x, y), w in acc.items() if w != 0], self.blocks)

    def __str__(self):
        lines = [f"({_fmt(x)}, {_fmt(y)}) -> {_fmt(w)}" for x, y, w in self.atoms]
        for b in self.blocks:
            lines.extend(f"({x:.12g}, {y:.12g}) -> {w:.12g}  [algebraic]" for x, y, w in b.float_atoms())
        return "\n".join(lines)


def _fmt(v):
    return str(v) if isinstance(v, Fraction) else f"{float(v):.12g}"


def moments_of(mu, order):
    """Moment sequence of ``mu`` through total degree ``order`` (even)."""
    if order < 0 or order % 2:
        raise ValueError("order must be a nonnegative even integer")
    exact = mu.exact
    zero = Fraction(0) if exact else 0.0
    beta = {m: zero for m in monomial_basis(order)}
    for x, y, w in mu.atoms:
        xp = [1]
        yp = [1]
        for _ in range(order):
            xp.append(xp[-1] * x)
            yp.append(yp[-1] * y)
        for (i, j) in beta:
            beta[(i, j)] += w * xp[i] * yp[j]
    for b in mu.blocks:
        for key, val in b.moments(order).items():
            beta[key] += val if exact else float(val)
    return MomentSequence(order // 2, beta, "exact" if exact else "float")


# --- degree-one maps ---------------------------------------------------------

@dataclass(frozen=True)
class AffineMap:
    """(x, y) -> (a x + b y + e, c x + d y + f)."""

    a: object
    b: object
    c: object
    d: object
    e: object = 0
    f: object = 0

    @property
    def det(self):
        return self.a * self.d - self.b * self.c

    def __call__(self, x, y):
        return self.a * x + self.b * y + self.e, self.c * x + self.d * y + self.f

    def inverse(self):
        det = self.det
        if det == 0:
            raise ValueError("affine map is singular")
        ia, ib, ic, id_ = self.d / det, -self.b / det, -self.c / det, self.a / det
        return AffineMap(ia, ib, ic, id_, -(ia * self.e + ib * self.f), -(ic * self.e + id_ * self.f))

    def then(self, other):
        """The composition other(self(.))."""
        return AffineMap(
            other.a * self.a + other.b * self.c, other.a * self.b + other.b * self.d,
            other.c * self.a + other.d * self.c, other.c * self.b + other.d * self.d,
            other.a * self.e + other.b * self.f + other.e, other.c * self.e + other.d * self.f + other.f,
        )

    @classmethod
    def identity(cls):
        return cls(Fraction(1), Fraction(0), Fraction(0), Fraction(1), Fraction(0), Fraction(0))


def transform_moments(beta, phi):
    """Moments of the pushforward: beta'_{ij} = Lambda(phi1^i phi2^j)."""
    from .poly2d import BiPoly

    if phi.det == 0:
        raise ValueError("affine map is singular")
    one = Fraction(1) if beta.exact else 1.0
    p1 = BiPoly({(1, 0): phi.a * one, (0, 1): phi.b * one, (0, 0): phi.e * one})
    p2 = BiPoly({(1, 0): phi.c * one, (0, 1): phi.d * one, (0, 0): phi.f * one})
    order = beta.order
    pw1, pw2 = [BiPoly.constant(one)], [BiPoly.constant(one)]
    for _ in range(order):
        pw1.append(pw1[-1] * p1)
        pw2.append(pw2[-1] * p2)
    out = {(i, j): riesz(beta, pw1[i] * pw2[j]) for (i, j) in monomial_basis(order)}
    return MomentSequence(beta.n, out, beta.mode)
