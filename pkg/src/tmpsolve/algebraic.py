"""Exact groups of conjugate algebraic atoms.

A block stands for the atoms (X(t), Y(t)) with density N(t)/g'(t), one for
each real root t of a squarefree rational polynomial g.  Moments of a block
are rational and computed exactly with the Euler-Jacobi trace identity, so
measures with irrational atoms still reproduce rational data without error.
"""

from dataclasses import dataclass
from fractions import Fraction

from . import upoly as up


@dataclass(frozen=True)
class RootBlock:
    g: tuple   # monic, squarefree, all roots real
    X: tuple
    Y: tuple
    N: tuple

    def __post_init__(self):
        g = up.monic([Fraction(c) for c in self.g])
        reduce = lambda p: tuple(up.rem([Fraction(c) for c in p], g)) if len(g) > 1 else ()
        object.__setattr__(self, "g", tuple(g))
        object.__setattr__(self, "X", reduce(self.X))
        object.__setattr__(self, "Y", reduce(self.Y))
        object.__setattr__(self, "N", reduce(self.N))

    @property
    def size(self):
        return len(self.g) - 1

    def _mulmod(self, p, q):
        return up.rem(up.mul(p, q), list(self.g))

    def moments(self, order):
        g = list(self.g)
        xp = [[Fraction(1)]]
        yp = [[Fraction(1)]]
        for _ in range(order):
            xp.append(self._mulmod(xp[-1], list(self.X)))
            yp.append(self._mulmod(yp[-1], list(self.Y)))
        N = list(self.N)
        out = {}
        for d in range(order + 1):
            for i in range(d, -1, -1):
                j = d - i
                h = self._mulmod(self._mulmod(xp[i], yp[j]), N)
                out[(i, j)] = up.trace_sum(h, g)
        return out

    def reduce(self, poly_xy):
        """poly(X(t), Y(t)) mod g, for a BiPoly-like {(i, j): c} mapping."""
        terms = poly_xy.coeffs if hasattr(poly_xy, "coeffs") else poly_xy
        acc = []
        for (i, j), c in terms.items():
            term = [Fraction(c)]
            for _ in range(i):
                term = self._mulmod(term, list(self.X))
            for _ in range(j):
                term = self._mulmod(term, list(self.Y))
            acc = up.add(acc, term)
        return acc

    def vanishes(self, poly_xy):
        """True when the polynomial is zero at every atom of the block."""
        return not self.reduce(poly_xy)

    def density_signs(self):
        g = list(self.g)
        sn = up.sign_at_roots(list(self.N), g)
        sd = up.sign_at_roots(up.deriv(g), g)
        return [a * b for a, b in zip(sn, sd)]

    def densities_positive(self):
        return all(s > 0 for s in self.density_signs())

    def roots(self, width=Fraction(1, 10**40)):
        """Rational enclosures of the roots, refined below ``width``."""
        g = list(self.g)
        out = []
        for lo, hi in up.isolate_real_roots(g):
            a, b = up.refine_root(g, lo, hi, width)
            out.append((a + b) / 2)
        return out

    def float_atoms(self):
        g = list(self.g)
        dg = up.deriv(g)
        out = []
        for t in self.roots(Fraction(1, 10**20)):
            x = up.evaluate(list(self.X), t)
            y = up.evaluate(list(self.Y), t)
            w = up.evaluate(list(self.N), t) / up.evaluate(dg, t)
            out.append((float(x), float(y), float(w)))
        return out

    def mapped(self, affine):
        X, Y = list(self.X), list(self.Y)
        nx = up.add(up.add(up.scale(X, Fraction(affine.a)), up.scale(Y, Fraction(affine.b))), [Fraction(affine.e)])
        ny = up.add(up.add(up.scale(X, Fraction(affine.c)), up.scale(Y, Fraction(affine.d))), [Fraction(affine.f)])
        return RootBlock(self.g, tuple(nx), tuple(ny), self.N)


def density_numerator(chi, lvals):
    """N(s) with density N(u_k)/chi'(u_k) at each root u_k of monic chi.

    ``lvals[j]`` is the functional applied to u^j, j < deg chi.
    """
    r = len(chi) - 1
    N = [Fraction(0)] * max(r, 1)
    for m in range(1, r + 1):
        a = chi[m]
        if a == 0:
            continue
        for j in range(m):
            N[m - 1 - j] += a * lvals[j]
    return up.trim(N)


def split_atoms(chi, lvals, X, Y):
    """Atoms of the measure with power sums ``lvals`` on the roots of chi.

    Coordinates are X(u), Y(u).  Rational roots become explicit atoms; the
    rest are kept as one :class:`RootBlock`.  Raises ValueError when chi has
    non-real or repeated roots (no such measure).
    """
    chi = up.monic([Fraction(c) for c in chi])
    r = len(chi) - 1
    if up.degree(up.gcd(chi, up.deriv(chi))) > 0:
        raise ValueError("repeated roots")
    if len(up.isolate_real_roots(chi)) != r:
        raise ValueError("non-real roots")
    N = density_numerator(chi, [Fraction(v) for v in lvals])
    dchi = up.deriv(chi)
    roots, rest = up.strip_rational_roots(chi)
    atoms = []
    for q in roots:
        atoms.append((up.evaluate(X, q), up.evaluate(Y, q), up.evaluate(N, q) / up.evaluate(dchi, q)))
    blocks = []
    if up.degree(rest) >= 1:
        R = [Fraction(1)]
        for q in roots:
            R = up.mul(R, [-q, Fraction(1)])
        Nb = up.rem(up.mul(N, up.inverse_mod(R, rest)), rest) if roots else N
        blocks.append(RootBlock(tuple(rest), tuple(X), tuple(Y), tuple(Nb)))
    return atoms, blocks
