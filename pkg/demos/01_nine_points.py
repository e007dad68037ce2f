"""Rank-8 sextic data on nine points, swept over beta_30.

The data live on the nine common zeros of x^3 + x y^2 - 25x and y^3 - 9y.
M(3) has rank 8, one less than the number of points, so the solver peels
masses at two of the points and finishes on the residual.  Depending on
beta_30 the residual is flat, extremal, or no measure exists.

    python demos/01_nine_points.py
"""

from fractions import Fraction

from tmpsolve import classify, solve, verify_measure
from tmpsolve.datasets import nine_point_family

print("case tag at beta_30 = 0:", classify(nine_point_family(0, 20)))
print()

for b30 in (Fraction(4, 5), Fraction(-4, 5), Fraction(0), Fraction(9, 10), Fraction(-9, 10)):
    beta = nine_point_family(b30, 20)
    out = solve(beta)
    c = out.certificate
    print(f"beta_30 = {b30}: {out.status}{' (' + out.reason + ')' if out.reason else ''}")
    if out.ok:
        print(f"  peeled at {c['points'][0]} and {c['points'][1]} with m1 = {c['m1']}, m2 = {c['m2']}")
        print(f"  residual rank {c['residual_rank']}, finished by the {c['sub_route']} route")
        rep = verify_measure(beta, out.measure)
        print(f"  {out.measure.support_size} atoms, exact reproduction: {rep.exact_match}")
        for x, y, w in out.measure.atoms:
            print(f"    ({x}, {y})  weight {w}")
    else:
        # every pair of points was tried before giving up
        print(f"  pairs with negative masses: {len(c['infeasible_pairs'])}, "
              f"pairs with a non-psd residual: {len(c['not_psd_pairs'])}")
    print()
