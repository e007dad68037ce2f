"""Worked sextic moment families used in demos and tests."""

from fractions import Fraction

from .core import MomentSequence, monomial_basis

# M(3) of a rank-7 family on a line plus three points; entry (X^3, X^3) is free
_LINE_PLUS_THREE = """
8 19 3 233 35 67 1441 247 1 -303
19 233 35 1441 247 1 14501 1511 365 455
3 35 67 247 1 -303 1511 365 455 2503
233 1441 247 14501 1511 365 121489 14671 1633 151
35 247 1 1511 365 455 14671 1633 151 -2111
67 1 -303 365 455 2503 1633 151 -2111 -16527
1441 14501 1511 121489 14671 1633 B60 122015 15245 2543
247 1511 365 14671 1633 151 122015 15245 2543 3413
1 365 455 1633 151 -2111 15245 2543 3413 17615
-303 455 2503 151 -2111 -16527 2543 3413 17615 118447
"""

# beta_60 at which the family stops being rank 7 (M(3) drops to rank 6)
LINE_PLUS_THREE_THRESHOLD = Fraction(260767531, 227)


def line_plus_three_family(b60):
    """Sextic data with variety 'line y = 1 plus three points', beta_60 free."""
    basis = monomial_basis(3)
    beta = {}
    rows = [r.split() for r in _LINE_PLUS_THREE.strip().splitlines()]
    for r, (a, b) in enumerate(basis):
        for c, (p, q) in enumerate(basis):
            tok = rows[r][c]
            val = Fraction(b60) if tok == "B60" else Fraction(int(tok))
            key = (a + p, b + q)
            if key in beta and beta[key] != val:
                raise AssertionError(f"inconsistent Hankel entry at {key}")
            beta[key] = val
    return MomentSequence(3, beta)


NINE_POINTS = tuple((Fraction(x), Fraction(y)) for x, y in
                    [(-5, 0), (-4, -3), (-4, 3), (0, -3), (0, 0), (0, 3), (4, -3), (4, 3), (5, 0)])

# the symmetric range of beta_30 where M(3) stays positive with rank 8 is (-k, k),
# k^2 = (3727 - sqrt(7754209)) / 1128
NINE_POINT_K_SQUARED = (3727, 7754209, 1128)


def nine_point_family(b30, b40):
    """Rank-8 sextic data supported on the nine points x(x^2+y^2-25) = y^3-9y = 0."""
    b30, b40 = Fraction(b30), Fraction(b40)
    z = Fraction(0)
    beta = {
        (0, 0): Fraction(1), (1, 0): z, (0, 1): z,
        (2, 0): Fraction(1), (1, 1): z, (0, 2): Fraction(1),
        (3, 0): b30, (2, 1): z, (1, 2): -b30, (0, 3): z,
        (4, 0): b40, (3, 1): z, (2, 2): 25 - b40, (1, 3): z, (0, 4): Fraction(9),
        (5, 0): 41 * b30, (4, 1): z, (3, 2): -16 * b30, (2, 3): z, (1, 4): -9 * b30, (0, 5): z,
        (6, 0): -400 + 41 * b40, (5, 1): z, (4, 2): 400 - 16 * b40, (3, 3): z,
        (2, 4): 225 - 9 * b40, (1, 5): z, (0, 6): Fraction(81),
    }
    return MomentSequence(3, beta)
