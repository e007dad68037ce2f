"""Dense univariate polynomials over Q (or floats).

Coefficient lists run from the constant term upward.  Exact routines expect
``Fraction`` coefficients; the float helpers are marked as such.
"""

from fractions import Fraction
from math import floor, gcd as igcd, lcm

import numpy as np


def trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def degree(p):
    return len(trim(p)) - 1


def add(p, q):
    n = max(len(p), len(q))
    return trim([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)])


def sub(p, q):
    return add(p, [-c for c in q])


def scale(p, s):
    return trim([c * s for c in p])


def mul(p, q):
    p, q = trim(p), trim(q)
    if not p or not q:
        return []
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return trim(out)


def power(p, k):
    out = [Fraction(1)]
    for _ in range(k):
        out = mul(out, p)
    return out


def divmod_poly(a, b):
    a, b = trim(a), trim(b)
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    q = [0] * max(len(a) - len(b) + 1, 1)
    r = list(a)
    lb = b[-1]
    while len(r) >= len(b) and r:
        c = r[-1] / lb
        k = len(r) - len(b)
        q[k] = c
        for i, bc in enumerate(b):
            r[k + i] -= c * bc
        r.pop()
        r = trim(r)
    return trim(q), r


def rem(a, b):
    return divmod_poly(a, b)[1]


def monic(p):
    p = trim(p)
    return [c / p[-1] for c in p] if p else []


def gcd(a, b):
    a, b = trim(a), trim(b)
    while b:
        a, b = b, rem(a, b)
    return monic(a)


def deriv(p):
    return trim([i * c for i, c in enumerate(p)][1:])


def evaluate(p, x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def compose(p, q):
    """p(q(t))."""
    out = []
    for c in reversed(trim(p)):
        out = add(mul(out, q), [c])
    return out


def squarefree(p):
    p = trim(p)
    if degree(p) < 1:
        return p
    g = gcd(p, deriv(p))
    return monic(divmod_poly(p, g)[0]) if degree(g) > 0 else monic(p)


def inverse_mod(a, m):
    """Inverse of a modulo m (extended Euclid); m and a must be coprime."""
    r0, r1 = trim(m), rem(a, m)
    s0, s1 = [], [Fraction(1)]
    while r1:
        q, r = divmod_poly(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, sub(s0, mul(q, s1))
    if degree(r0) != 0:
        raise ValueError("polynomials are not coprime")
    return scale(s0, 1 / r0[0])


def trace_sum(h, g):
    """Sum of h(t)/g'(t) over all (complex) roots t of the squarefree g.

    Uses the Euler-Jacobi identity: the sum equals the coefficient of
    t^(d-1) in (h mod g), divided by the leading coefficient of g.
    """
    g = trim(g)
    d = len(g) - 1
    r = rem(h, g) if d > 0 else []
    top = r[d - 1] if len(r) >= d else 0
    return top / g[-1]


# --- real roots, exact -----------------------------------------------------

def sturm_sequence(p):
    seq = [trim(p), deriv(p)]
    while seq[-1] and degree(seq[-1]) > 0:
        seq.append([-c for c in rem(seq[-2], seq[-1])])
    return [s for s in seq if s]


def sign_at(ints, x):
    """Sign of an integer-coefficient polynomial at a rational x.

    Evaluates the homogenized form sum c_i n^i d^(deg - i) with integers only.
    """
    x = Fraction(x)
    n, d = x.numerator, x.denominator
    dp = 1
    acc = ints[-1] if ints else 0
    for c in reversed(ints[:-1]):
        dp *= d
        acc = acc * n + c * dp
    return (acc > 0) - (acc < 0)


def _sign_changes(seq, x):
    if seq and isinstance(seq[0][0], int) and not isinstance(seq[0][0], bool):
        vals = [sign_at(s, x) for s in seq]
    else:
        vals = [evaluate(s, x) for s in seq]
    vals = [v for v in vals if v != 0]
    return sum(1 for a, b in zip(vals, vals[1:]) if (a < 0) != (b < 0))


def count_roots(seq, lo, hi):
    """Distinct real roots in (lo, hi] of the polynomial heading ``seq``."""
    return _sign_changes(seq, lo) - _sign_changes(seq, hi)


def root_bound(p):
    p = trim(p)
    lead = abs(p[-1])
    return 1 + max((abs(Fraction(c)) / lead for c in p[:-1]), default=0)


def isolate_real_roots(p):
    """Disjoint intervals (lo, hi], each holding exactly one real root.

    Intervals are sorted; ``p`` is made squarefree first.
    """
    p = squarefree([Fraction(c) for c in p])
    if degree(p) < 1:
        return []
    seq = [to_integer_coeffs(q) for q in sturm_sequence(p)]
    b = Fraction(root_bound(p))
    b = Fraction(floor(b) + 1)
    out = []
    stack = [(-b, b)]
    while stack:
        lo, hi = stack.pop()
        k = count_roots(seq, lo, hi)
        if k == 0:
            continue
        if k == 1:
            out.append((lo, hi))
            continue
        mid = (lo + hi) / 2
        stack.append((lo, mid))
        stack.append((mid, hi))
    out.sort()
    return out


def refine_root(p, lo, hi, width):
    """Shrink an isolating interval (lo, hi] of squarefree p below ``width``."""
    ints = to_integer_coeffs(p)
    fhi = sign_at(ints, hi)
    if fhi == 0:
        return hi, hi
    while hi - lo > width:
        mid = (lo + hi) / 2
        fm = sign_at(ints, mid)
        if fm == 0:
            return mid, mid
        if (fm < 0) == (fhi < 0):
            hi, fhi = mid, fm
        else:
            lo = mid
    return lo, hi


def to_integer_coeffs(p):
    p = trim([Fraction(c) for c in p])
    den = lcm(*[c.denominator for c in p]) if p else 1
    ints = [int(c * den) for c in p]
    g = 0
    for c in ints:
        g = igcd(g, c)
    g = g or 1
    return [c // g for c in ints]


def rational_roots(p):
    """All rational roots of a rational polynomial, sorted."""
    p = trim([Fraction(c) for c in p])
    if degree(p) < 1:
        return []
    sf = squarefree(p)
    ints = to_integer_coeffs(sf)
    lead = abs(ints[-1])
    out = []
    for lo, hi in isolate_real_roots(sf):
        if evaluate(sf, hi) == 0:
            out.append(hi)
            continue
        guess = Fraction((lo + hi) / 2).limit_denominator(10**6)
        if lo < guess <= hi and evaluate(sf, guess) == 0:
            out.append(guess)
            continue
        a, b = refine_root(sf, lo, hi, Fraction(1, 2 * lead * lead))
        if a == b:
            out.append(a)
            continue
        cand = ((a + b) / 2).limit_denominator(lead)
        if evaluate(sf, cand) == 0:
            out.append(cand)
    return sorted(out)


def strip_rational_roots(p):
    """Split p into (rational roots, cofactor without rational roots)."""
    roots = rational_roots(p)
    rest = monic(squarefree(p))
    for r in roots:
        rest = divmod_poly(rest, [-r, Fraction(1)])[0]
    return roots, rest


def approx_roots(p, tol=Fraction(1, 10**18)):
    """Float approximations of the real roots of an exact polynomial."""
    sf = squarefree(p)
    out = []
    for lo, hi in isolate_real_roots(sf):
        a, b = refine_root(sf, lo, hi, tol)
        out.append(float((a + b) / 2))
    return out


def sign_at_roots(h, g):
    """Signs of h at the real roots of squarefree g, in increasing root order.

    Exact: each isolating interval is refined until h has no root left
    inside it, then h is evaluated at a rational point.
    """
    g = trim([Fraction(c) for c in g])
    h = trim([Fraction(c) for c in h])
    signs = []
    common = gcd(g, h) if h else g
    ints = lambda seq: [to_integer_coeffs(q) for q in seq]
    hseq = ints(sturm_sequence(squarefree(h))) if degree(h) >= 1 else None
    cseq = ints(sturm_sequence(common)) if degree(common) >= 1 else None
    gseq = ints(sturm_sequence(squarefree(g)))
    gi = to_integer_coeffs(g)
    hi_ = to_integer_coeffs(h) if h else []
    for lo, hi in isolate_real_roots(g):
        if not h:
            signs.append(0)
            continue
        if cseq is not None and count_roots(cseq, lo, hi) > 0:
            signs.append(0)
            continue
        if hseq is not None:
            while count_roots(hseq, lo, hi) > 0:
                mid = (lo + hi) / 2
                if sign_at(gi, mid) == 0:
                    lo = hi = mid
                    break
                if count_roots(gseq, lo, mid) == 1:
                    hi = mid
                else:
                    lo = mid
        signs.append(sign_at(hi_, hi))
    return signs


# --- floats -----------------------------------------------------------------

def real_roots_float(p, imag_tol=1e-7):
    """Real roots of a float polynomial via companion eigenvalues + Newton."""
    p = [float(c) for c in p]
    while p and abs(p[-1]) == 0.0:
        p.pop()
    if len(p) < 2:
        return []
    roots = np.roots(p[::-1])
    scale_ = max(1.0, float(np.max(np.abs(roots)))) if len(roots) else 1.0
    dp = deriv(p)
    out = []
    for z in roots:
        if abs(z.imag) > imag_tol * scale_:
            continue
        x = float(z.real)
        for _ in range(6):
            d = evaluate(dp, x)
            if d == 0:
                break
            step = evaluate(p, x) / d
            x -= step
            if abs(step) <= 1e-16 * max(1.0, abs(x)):
                break
        out.append(x)
    out.sort()
    merged = []
    for x in out:
        if merged and abs(x - merged[-1]) <= 1e-9 * max(1.0, abs(x)):
            continue
        merged.append(x)
    return merged
