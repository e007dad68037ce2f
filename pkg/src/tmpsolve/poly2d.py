"""Sparse bivariate polynomials, common zeros and low-degree factoring."""

import re
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import exactla as la
from . import upoly as up
from .core import is_exact_value, monomial_basis

POINT_MERGE_TOL = 1e-7


def _lead_key(m):
    return (m[0] + m[1], m[0])


class BiPoly:
    """Polynomial in x, y stored as {(i, j): coefficient} without zeros."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        self.coeffs = {k: v for k, v in (coeffs or {}).items() if v != 0}

    # construction
    @classmethod
    def constant(cls, c):
        return cls({(0, 0): c})

    @classmethod
    def x(cls, one=Fraction(1)):
        return cls({(1, 0): one})

    @classmethod
    def y(cls, one=Fraction(1)):
        return cls({(0, 1): one})

    @classmethod
    def from_vector(cls, vec, n=None):
        """Coefficients listed in the graded lex monomial order."""
        vec = list(vec)
        if n is None:
            n = 0
            while (n + 1) * (n + 2) // 2 < len(vec):
                n += 1
        basis = monomial_basis(n)
        if len(vec) != len(basis):
            raise ValueError("vector length does not match a monomial basis")
        return cls(dict(zip(basis, vec)))

    def to_vector(self, n, exact=None):
        exact = self.is_exact if exact is None else exact
        zero = Fraction(0) if exact else 0.0
        if self.degree > n:
            raise ValueError("polynomial degree exceeds basis degree")
        vals = [self.coeffs.get(m, zero) for m in monomial_basis(n)]
        return np.array(vals, dtype=object if exact else float)

    # properties
    @property
    def degree(self):
        return max((i + j for i, j in self.coeffs), default=-1)

    @property
    def deg_x(self):
        return max((i for i, _ in self.coeffs), default=-1)

    @property
    def deg_y(self):
        return max((j for _, j in self.coeffs), default=-1)

    @property
    def is_exact(self):
        return all(is_exact_value(v) for v in self.coeffs.values())

    def is_zero(self):
        return not self.coeffs

    def lead(self):
        m = max(self.coeffs, key=_lead_key)
        return m, self.coeffs[m]

    def top_form(self):
        d = self.degree
        return BiPoly({k: v for k, v in self.coeffs.items() if k[0] + k[1] == d})

    def scale_norm(self):
        return max((abs(float(v)) for v in self.coeffs.values()), default=0.0)

    # arithmetic
    def __add__(self, other):
        if not isinstance(other, BiPoly):
            other = BiPoly.constant(other)
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, 0) + v
        return BiPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return BiPoly({k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other if isinstance(other, BiPoly) else -other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, BiPoly):
            return BiPoly({k: v * other for k, v in self.coeffs.items()})
        out = {}
        for (a, b), u in self.coeffs.items():
            for (c, d), w in other.coeffs.items():
                key = (a + c, b + d)
                out[key] = out.get(key, 0) + u * w
        return BiPoly(out)

    __rmul__ = __mul__

    def __truediv__(self, s):
        if isinstance(s, int):
            s = Fraction(s)
        return BiPoly({k: (Fraction(v) if isinstance(v, int) else v) / s for k, v in self.coeffs.items()})

    def __pow__(self, k):
        out = BiPoly.constant(Fraction(1) if self.is_exact else 1.0)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, BiPoly):
            other = BiPoly.constant(other)
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __call__(self, x, y):
        return evaluate(self, (x, y))

    def __repr__(self):
        return f"BiPoly({format_poly(self)!r})"

    def __str__(self):
        return format_poly(self)

    # structure
    def y_coeffs(self):
        """Coefficient list in y; entry j is a univariate polynomial in x."""
        out = [[] for _ in range(self.deg_y + 1)]
        for (i, j), v in self.coeffs.items():
            row = out[j]
            row.extend([0] * (i + 1 - len(row)))
            row[i] += v
        return [up.trim(r) for r in out]

    def swap(self):
        return BiPoly({(j, i): v for (i, j), v in self.coeffs.items()})

    def at_x(self, x0):
        """Univariate polynomial in y obtained by fixing x = x0."""
        return [up.evaluate(c, x0) for c in self.y_coeffs()]

    def at_y(self, y0):
        return self.swap().at_x(y0)

    def compose(self, phi):
        """p(phi(x, y)) for an affine map phi."""
        one = Fraction(1) if self.is_exact and all(is_exact_value(v) for v in vars(phi).values()) else 1.0
        u = BiPoly({(1, 0): phi.a * one, (0, 1): phi.b * one, (0, 0): phi.e * one})
        w = BiPoly({(1, 0): phi.c * one, (0, 1): phi.d * one, (0, 0): phi.f * one})
        upow = [BiPoly.constant(one)]
        wpow = [BiPoly.constant(one)]
        for _ in range(self.degree):
            upow.append(upow[-1] * u)
            wpow.append(wpow[-1] * w)
        out = BiPoly()
        for (i, j), c in self.coeffs.items():
            out = out + upow[i] * wpow[j] * c
        return out

    def normalized(self):
        """Scaled so the last nonzero coefficient in the monomial order is 1."""
        if self.is_zero():
            return self
        return self / self.lead()[1]

    def cleaned(self, tol=1e-12):
        """Drop float coefficients below tol times the largest one."""
        if self.is_exact:
            return self
        s = self.scale_norm()
        return BiPoly({k: v for k, v in self.coeffs.items() if abs(v) > tol * s})


def evaluate(p, pt):
    x, y = pt
    total = 0
    for (i, j), c in p.coeffs.items():
        total += c * x ** i * y ** j
    return total


def line(a, b, c):
    """The polynomial a x + b y + c."""
    return BiPoly({(1, 0): a, (0, 1): b, (0, 0): c})


# --- text format -----------------------------------------------------------------

_TERM = re.compile(r"[+-]?(?:[^+-]|(?<=\d[eE])[+-])+")


def _num(tok):
    return Fraction(tok)


def parse_poly(text):
    """Parse a sum of ``coef*x^i*y^j`` terms with rational or decimal coefficients."""
    s = text.replace(" ", "").replace("**", "^")
    if not s:
        raise ValueError("empty polynomial")
    out = {}
    pos = 0
    for m in _TERM.finditer(s):
        if m.start() != pos:
            raise ValueError(f"cannot parse polynomial near {s[pos:]!r}")
        pos = m.end()
        term = m.group()
        sign = -1 if term.startswith("-") else 1
        term = term.lstrip("+-")
        coef = Fraction(sign)
        i = j = 0
        for fac in term.split("*"):
            if not fac:
                raise ValueError(f"bad term {m.group()!r}")
            var, _, exp = fac.partition("^")
            if var in ("x", "y"):
                e = int(exp) if exp else 1
                if var == "x":
                    i += e
                else:
                    j += e
            else:
                if exp:
                    raise ValueError(f"bad factor {fac!r}")
                coef *= _num(var)
        out[(i, j)] = out.get((i, j), 0) + coef
    if pos != len(s):
        raise ValueError(f"cannot parse polynomial near {s[pos:]!r}")
    return BiPoly(out)


def _coef_str(c):
    if isinstance(c, Fraction):
        return str(c)
    if isinstance(c, int):
        return str(c)
    return repr(float(c))


def format_poly(p):
    if p.is_zero():
        return "0"
    parts = []
    for (i, j) in sorted(p.coeffs, key=_lead_key, reverse=True):
        c = p.coeffs[(i, j)]
        mono = "*".join(
            v if e == 1 else f"{v}^{e}" for v, e in (("x", i), ("y", j)) if e)
        neg = c < 0
        a = -c if neg else c
        if mono and a == 1:
            body = mono
        elif mono:
            body = f"{_coef_str(a)}*{mono}"
        else:
            body = _coef_str(a)
        parts.append(("- " if neg else "+ ") + body)
    out = " ".join(parts)
    return out[2:] if out.startswith("+ ") else "-" + out[2:]


# --- division and gcd ------------------------------------------------------------

def divide(p, q, tol=1e-8):
    """Exact quotient p / q; raises ValueError when q does not divide p."""
    if q.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    if p.is_exact and q.is_exact:
        r = p
        quo = BiPoly()
        (qi, qj), qc = q.lead()
        while not r.is_zero():
            (ri, rj), rc = r.lead()
            if ri < qi or rj < qj:
                raise ValueError("polynomial does not divide")
            t = BiPoly({(ri - qi, rj - qj): rc / qc})
            quo = quo + t
            r = r - t * q
        return quo
    # float: least squares on the quotient coefficients
    d = p.degree - q.degree
    if d < 0:
        raise ValueError("polynomial does not divide")
    basis = monomial_basis(d)
    rows = monomial_basis(p.degree)
    A = np.zeros((len(rows), len(basis)))
    idx = {m: k for k, m in enumerate(rows)}
    for c, (a, b) in enumerate(basis):
        for (i, j), v in q.coeffs.items():
            A[idx[(a + i, b + j)], c] = float(v)
    rhs = np.array([float(p.coeffs.get(m, 0.0)) for m in rows])
    sol = np.linalg.lstsq(A, rhs, rcond=None)[0]
    if np.linalg.norm(A @ sol - rhs) > tol * max(np.linalg.norm(rhs), 1e-300):
        raise ValueError("polynomial does not divide")
    return BiPoly(dict(zip(basis, sol))).cleaned()


def _mult_matrix(p, deg_mult, rows_deg, exact):
    basis = monomial_basis(deg_mult)
    rows = monomial_basis(rows_deg)
    idx = {m: k for k, m in enumerate(rows)}
    zero = Fraction(0) if exact else 0.0
    A = np.full((len(rows), len(basis)), zero, dtype=object if exact else float)
    for c, (a, b) in enumerate(basis):
        for (i, j), v in p.coeffs.items():
            A[idx[(a + i, b + j)], c] = v if exact else float(v)
    return A, basis


def poly_gcd(p, q, tol=1e-7):
    """Greatest common divisor (normalized), found by linear algebra.

    The gcd has degree >= d exactly when m1 p + m2 q = 0 has a nonzero
    solution with deg m1 <= deg q - d and deg m2 <= deg p - d.
    """
    if p.is_zero():
        return q.normalized()
    if q.is_zero():
        return p.normalized()
    exact = p.is_exact and q.is_exact
    a, b = p.degree, q.degree
    one = Fraction(1) if exact else 1.0
    for d in range(min(a, b), 0, -1):
        A1, b1 = _mult_matrix(p, b - d, a + b - d, exact)
        A2, b2 = _mult_matrix(q, a - d, a + b - d, exact)
        A = np.hstack([A1, A2])
        if exact:
            ker = la.kernel_basis(A)
            if not ker:
                continue
            vec = ker[0]
        else:
            _, s, vt = np.linalg.svd(A.astype(float))
            if s[-1] > tol * s[0] or A.shape[1] > A.shape[0]:
                continue
            vec = vt[-1]
        m1 = BiPoly(dict(zip(b1, vec[:len(b1)])))
        if exact:
            return divide(q, m1).normalized()
        # q = g m1 and p = -g m2: fit g to both by least squares rather than
        # long division, which piles the noise of m1 into the quotient
        m2 = BiPoly(dict(zip(b2, -vec[len(b1):])))
        Q, gb = _mult_matrix(m1, d, b, False)
        P, _ = _mult_matrix(m2, d, a, False)
        rq = [float(q.coeffs.get(m, 0)) for m in monomial_basis(b)]
        rp = [float(p.coeffs.get(m, 0)) for m in monomial_basis(a)]
        sq, sp = max(map(abs, rq)) or 1.0, max(map(abs, rp)) or 1.0
        lhs = np.vstack([Q / sq, P / sp])
        rhs = np.concatenate([np.array(rq) / sq, np.array(rp) / sp])
        coef, *_ = np.linalg.lstsq(lhs, rhs, rcond=None)
        if np.linalg.norm(lhs @ coef - rhs) > max(tol, 1e-8) * 10 * np.linalg.norm(rhs):
            continue
        return BiPoly(dict(zip(gb, coef))).cleaned(1e-8).normalized()
    return BiPoly.constant(one)


def gcd_all(polys, tol=1e-7):
    g = polys[0]
    for p in polys[1:]:
        g = poly_gcd(g, p, tol)
        if g.degree == 0:
            break
    return g.normalized()


# --- resultants ---------------------------------------------------------------------

def _sylvester(f, g):
    """Sylvester matrix of two univariate coefficient lists (low to high)."""
    m, n = len(f) - 1, len(g) - 1
    size = m + n
    zero = Fraction(0)
    S = np.full((size, size), zero, dtype=object)
    fr, gr = f[::-1], g[::-1]
    for r in range(n):
        for k, c in enumerate(fr):
            S[r, r + k] = c
    for r in range(m):
        for k, c in enumerate(gr):
            S[n + r, r + k] = c
    return S


def resultant(p, q, eliminate="y"):
    """Resultant with respect to ``eliminate``, as a polynomial in the other variable.

    Computed exactly by evaluating the Sylvester determinant at enough
    rational points and interpolating (float inputs are rationalized).
    """
    if p.is_zero() and q.is_zero():
        raise ValueError("both polynomials are zero")
    if eliminate == "x":
        p, q = p.swap(), q.swap()
    elif eliminate != "y":
        raise ValueError("eliminate must be 'x' or 'y'")
    exact = p.is_exact and q.is_exact
    rat = lambda P: BiPoly({k: Fraction(v) for k, v in P.coeffs.items()})
    P, Q = rat(p), rat(q)
    if P.is_zero() or Q.is_zero():
        return []
    pc, qc = P.y_coeffs(), Q.y_coeffs()
    bound = max(P.degree, 0) * max(Q.degree, 0)
    xs = [Fraction(k) for k in range(-(bound // 2) - 1, bound - bound // 2 + 1)]
    vals = []
    for x0 in xs:
        f = [up.evaluate(c, x0) for c in pc]
        g = [up.evaluate(c, x0) for c in qc]
        vals.append(la.bareiss_det(_sylvester(f, g)) if len(f) + len(g) > 2 else Fraction(1))
    res = _interpolate(xs, vals)
    return res if exact else [float(c) for c in res]


def _interpolate(xs, ys):
    """Newton divided differences, returned in the monomial basis."""
    n = len(xs)
    coef = list(ys)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    poly = [coef[-1]]
    for i in range(n - 2, -1, -1):
        poly = up.add(up.mul(poly, [-xs[i], Fraction(1)]), [coef[i]])
    return up.trim(poly)


# --- common zeros -------------------------------------------------------------------

@dataclass(frozen=True)
class ZeroSetResult:
    kind: str                  # "finite" or "shared"
    points: tuple = ()
    shared_factor: BiPoly = None
    exact: bool = True         # all points have rational coordinates

    @property
    def is_finite(self):
        return self.kind == "finite"


def merge_points(points, tol=POINT_MERGE_TOL):
    out = []
    for pt in points:
        if any(_dist(pt, q) <= tol for q in out):
            continue
        out.append(pt)
    return out


def _dist(p, q):
    return ((float(p[0]) - float(q[0])) ** 2 + (float(p[1]) - float(q[1])) ** 2) ** 0.5


def _newton2(p, q, x, y, steps=8):
    px, py = derivative(p, "x"), derivative(p, "y")
    qx, qy = derivative(q, "x"), derivative(q, "y")
    f = lambda P: float(evaluate(P, (x, y)))
    for _ in range(steps):
        J = np.array([[f(px), f(py)], [f(qx), f(qy)]])
        F = np.array([f(p), f(q)])
        try:
            dx = np.linalg.solve(J, F)
        except np.linalg.LinAlgError:
            break
        if not np.all(np.isfinite(dx)):
            break
        x, y = x - dx[0], y - dx[1]
        if np.hypot(*dx) <= 1e-15 * max(1.0, np.hypot(x, y)):
            break
    return x, y


def derivative(p, var):
    if var == "x":
        return BiPoly({(i - 1, j): i * c for (i, j), c in p.coeffs.items() if i})
    return BiPoly({(i, j - 1): j * c for (i, j), c in p.coeffs.items() if j})


def _float_y_roots(p, q, x0):
    ys = set()
    for P in (p, q):
        coeffs = [float(c) for c in P.at_x(x0)]
        if any(abs(c) > 0 for c in coeffs):
            ys.update(up.real_roots_float(coeffs, imag_tol=1e-5))
    return sorted(ys)


def _float_common(p, q, tol):
    """Real common zeros of coprime p, q in floating point."""
    res = resultant(p, q)
    res = [float(c) for c in res]
    xs = up.real_roots_float(res, imag_tol=1e-5) if len(up.trim(res)) > 1 else []
    # horizontal asymptote guard: when p, q are free of y the resultant misses nothing
    sp, sq = max(p.scale_norm(), 1e-300), max(q.scale_norm(), 1e-300)
    pts = []
    for x0 in xs:
        for y0 in _float_y_roots(p, q, x0):
            x1, y1 = _newton2(p, q, x0, y0)
            scale = 1 + abs(x1) + abs(y1)
            bound = tol * scale ** max(p.degree, q.degree)
            if abs(float(evaluate(p, (x1, y1)))) <= bound * sp and abs(float(evaluate(q, (x1, y1)))) <= bound * sq:
                pts.append((float(x1), float(y1)))
    return merge_points(sorted(pts))


def common_zeros(p, q, tol=1e-7):
    """Real common zeros of p and q, or their shared factor."""
    if p.is_zero() or q.is_zero():
        raise ValueError("common_zeros needs nonzero polynomials")
    g = poly_gcd(p, q, tol)
    if g.degree > 0:
        return ZeroSetResult("shared", (), g, p.is_exact and q.is_exact)
    if not (p.is_exact and q.is_exact):
        return ZeroSetResult("finite", tuple(_float_common(p, q, tol)), None, False)
    res = resultant(p, q)
    if not res:
        raise ArithmeticError("zero resultant for coprime inputs")
    pts = []
    inexact = []
    if up.degree(res) >= 1:
        xr, rest = up.strip_rational_roots(res)
        for x0 in xr:
            fp, fq = up.trim(p.at_x(x0)), up.trim(q.at_x(x0))
            h = up.gcd(fp, fq) if fp and fq else up.monic(fp or fq)
            if up.degree(h) < 1:
                continue
            yr, yrest = up.strip_rational_roots(h)
            pts.extend((x0, y0) for y0 in yr)
            if up.degree(yrest) >= 1:
                inexact.extend((float(x0), y0) for y0 in up.approx_roots(yrest))
        if up.degree(rest) >= 1:
            for x0 in up.approx_roots(rest):
                for y0 in _float_y_roots(p, q, x0):
                    x1, y1 = _newton2(p, q, x0, y0)
                    scale = (1 + abs(x1) + abs(y1)) ** max(p.degree, q.degree)
                    if (abs(float(evaluate(p, (x1, y1)))) <= tol * scale * p.scale_norm()
                            and abs(float(evaluate(q, (x1, y1)))) <= tol * scale * q.scale_norm()):
                        inexact.append((x1, y1))
    pts = sorted(set(pts))
    inexact = [pt for pt in merge_points(sorted(inexact)) if all(_dist(pt, e) > POINT_MERGE_TOL for e in pts)]
    return ZeroSetResult("finite", tuple(pts) + tuple(inexact), None, not inexact)


# --- lines, conics --------------------------------------------------------------------

def _line_directions(p):
    """Candidate linear top forms (alpha, beta) dividing the top form of p."""
    top = p.top_form()
    d = p.degree
    f = [top.coeffs.get((i, d - i), 0) for i in range(d + 1)]   # top(s, 1) in s
    dirs = []
    if up.trim(f) and up.degree(f) < d:
        dirs.append((0, 1))                  # y divides the top form
    if p.is_exact:
        dirs.extend((Fraction(1), -s) for s in up.rational_roots(f))
    else:
        roots = list(up.real_roots_float(f, imag_tol=1e-6))
        # noise blurs a double root into a complex or close real pair; f' pins it down
        fs = max(abs(c) for c in f)
        df = up.deriv(f)
        if up.degree(df) >= 1:
            for s in up.real_roots_float(df, imag_tol=1e-6):
                if abs(up.evaluate(f, s)) <= 1e-8 * fs * (1 + abs(s)) ** len(f):
                    roots.append(s)
        dirs.extend((1.0, -s) for s in roots)
    return dirs


def _offsets(p, alpha, beta, exact, tol):
    """Offsets gamma with alpha x + beta y + gamma dividing p."""
    # parametrize the line: if alpha != 0, x = -(beta t + gamma)/alpha, y = t
    # the coefficient polynomials (in gamma) of p restricted to the line must all vanish
    one = Fraction(1) if exact else 1.0
    d = p.degree
    # sample-free: expand p(X(t, g), Y(t)) with g symbolic by collecting powers
    # represent as dict (power_t, power_g) -> coefficient
    if alpha != 0:
        X = {(1, 0): -beta * one / alpha, (0, 1): -one / alpha}
        Y = {(1, 0): one}
    else:
        X = {(1, 0): one}
        Y = {(0, 1): -one / beta}
    expanded = {}
    def mul(a, b):
        out = {}
        for (i, j), u in a.items():
            for (k, l), w in b.items():
                out[(i + k, j + l)] = out.get((i + k, j + l), 0) + u * w
        return out
    xp, yp = [{(0, 0): one}], [{(0, 0): one}]
    for _ in range(d):
        xp.append(mul(xp[-1], X))
        yp.append(mul(yp[-1], Y))
    for (i, j), c in p.coeffs.items():
        for key, v in mul(xp[i], yp[j]).items():
            expanded[key] = expanded.get(key, 0) + c * v
    by_t = {}
    for (t, g), v in expanded.items():
        row = by_t.setdefault(t, [])
        row.extend([0] * (g + 1 - len(row)))
        row[g] += v
    polys = [up.trim(r) for r in by_t.values()]
    polys = [r for r in polys if r and (exact or max(abs(c) for c in r) > tol * p.scale_norm())]
    if not polys:
        return None      # every offset works: p vanishes on all parallel lines
    if exact:
        h = polys[0]
        for r in polys[1:]:
            h = up.gcd(h, r)
        if up.degree(h) < 1:
            return []
        return up.rational_roots(h)
    # float: candidate roots of the lowest-degree nonconstant member, then check all
    polys.sort(key=len)
    base = next((r for r in polys if len(r) > 1), None)
    if base is None:
        return []
    out = []
    for g0 in up.real_roots_float(base, imag_tol=1e-6):
        if all(abs(up.evaluate(r, g0)) <= tol * max(abs(c) for c in r) * (1 + abs(g0)) ** len(r) for r in polys):
            out.append(g0)
    return out


def line_factors(p, tol=1e-7):
    """Real linear factors a x + b y + c of p (rational ones in exact mode)."""
    exact = p.is_exact
    out = []
    for alpha, beta in _line_directions(p):
        offs = _offsets(p, alpha, beta, exact, tol)
        if offs is None:
            continue
        for g0 in offs:
            out.append(line(alpha, beta, g0).normalized())
    uniq = []
    for ln in out:
        if not any(_same_line(ln, u, tol) for u in uniq):
            uniq.append(ln)
    return uniq


def _same_line(a, b, tol):
    diff = a - b
    return diff.is_zero() or (not a.is_exact and diff.scale_norm() <= tol * max(a.scale_norm(), 1.0))


class NotFactorable:
    def __bool__(self):
        return False

    def __repr__(self):
        return "NotFactorable"


NOT_FACTORABLE = NotFactorable()


def factor_line_conic(p, tol=1e-7):
    """Split a cubic into (line, conic), or return NOT_FACTORABLE."""
    if p.degree != 3:
        raise ValueError("factor_line_conic needs a cubic")
    for ln in line_factors(p, tol):
        try:
            conic = divide(p, ln, tol=max(tol, 1e-8))
        except ValueError:
            continue
        return ln, conic
    return NOT_FACTORABLE


class ConicClass:
    ELLIPSE = "ellipse"
    PARABOLA = "parabola"
    HYPERBOLA = "hyperbola"
    INTERSECTING = "intersecting-lines"
    PARALLEL = "parallel-lines"
    OTHER = "other-degenerate"


def conic_matrix(c):
    g = lambda i, j: c.coeffs.get((i, j), 0)
    A, B, C, D, E, F = g(2, 0), g(1, 1), g(0, 2), g(1, 0), g(0, 1), g(0, 0)
    half = Fraction(1, 2) if c.is_exact else 0.5
    return [[A, B * half, D * half], [B * half, C, E * half], [D * half, E * half, F]]


def classify_conic(c, tol=1e-9):
    """Affine type of a degree-2 curve from the invariants of its 3x3 matrix."""
    if c.degree != 2:
        raise ValueError("classify_conic needs a degree-2 polynomial")
    Q = conic_matrix(c)
    exact = c.is_exact
    s = c.scale_norm()
    zero = (lambda v: v == 0) if exact else (lambda v, k=1: abs(v) <= tol * s ** 3)
    sign = lambda v: 0 if (v == 0 if exact else abs(v) <= tol * s ** 2) else (1 if v > 0 else -1)
    (A, H, G), (_, C, Fy), (_, _, F) = Q
    Delta = A * (C * F - Fy * Fy) - H * (H * F - Fy * G) + G * (H * Fy - C * G)
    delta = A * C - H * H
    if not zero(Delta):
        sd = sign(delta)
        if sd > 0:
            return ConicClass.ELLIPSE if (A + C) * Delta < 0 else ConicClass.OTHER
        return ConicClass.PARABOLA if sd == 0 else ConicClass.HYPERBOLA
    sd = sign(delta)
    if sd < 0:
        return ConicClass.INTERSECTING
    if sd > 0:
        return ConicClass.OTHER
    K = (A * F - G * G) + (C * F - Fy * Fy)
    return ConicClass.PARALLEL if sign(K) < 0 else ConicClass.OTHER
