"""Rank-7 data whose variety is a line plus three points.

Below a threshold value of beta_60 the moment matrix drops to rank 6 (and is
flat).  Above it, the rank is 7 and the variety is infinite, so the solver
samples candidate atoms, peels one, and extracts a flat residual.

The three isolated points always carry weight 1: a quadratic times (y - 1)
vanishing on two of them isolates the third.  So every 7-atomic measure
here has exactly four atoms on the line.

    python demos/02_line_plus_three.py
"""

from tmpsolve import build_moment_matrix, classify, compute_variety, column_relations, exactla
from tmpsolve.datasets import LINE_PLUS_THREE_THRESHOLD, line_plus_three_family
from tmpsolve.solver import solve_rank7

t = LINE_PLUS_THREE_THRESHOLD
print(f"threshold beta_60 = {t} (about {float(t):.3f})")
print("rank at the threshold:", exactla.rank(build_moment_matrix(line_plus_three_family(t)).entries).rank)

beta = line_plus_three_family(t + 1)
V = compute_variety(column_relations(build_moment_matrix(beta)))
print("variety:", V.describe())
print("case tag:", classify(beta))
print()

for extra in (1, 100, 10**4):
    out = solve_rank7(line_plus_three_family(t + extra))
    c = out.certificate
    on_line = sum(1 for _, y, _ in out.measure.float_atoms() if abs(y - 1) < 1e-12)
    print(f"beta_60 = threshold + {extra}: peeled {c['point']} with rho = {c['rho']}, "
          f"{out.measure.support_size} atoms, {on_line} on y = 1")
    for x, y, w in sorted(out.measure.float_atoms()):
        print(f"    ({x:9.5f}, {y:9.5f})  weight {w:.6g}")
