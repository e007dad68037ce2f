"""Separating atoms on two lines: XY = 0 and X^2 = X.

For data on the coordinate axes, the total mass w given to the y-axis is
free inside an interval.  At either end one of the two line summands becomes
flat.  The interval width is a ratio of determinants of the data.

    python demos/03_two_lines.py
"""

from tmpsolve import verify_measure
from tmpsolve.foundry import GenSpec, generate
from tmpsolve.solver import solve_x2x, solve_xy0, x2x_quantities, xy0_quantities

g = generate(GenSpec(7, "xy0", seed=5, variant="separated"))
print("atoms on the axes:", [(str(x), str(y)) for x, y, _ in g.measure.atoms])
Q = xy0_quantities(g.beta)
print(f"interval for w: [{Q['w_lo']}, {Q['w_hi']}]")
print(f"width {Q['w_hi'] - Q['w_lo']} = d6 / (d_A d_B) = {Q['d6'] / (Q['d_A'] * Q['d_B'])}")
out = solve_xy0(g.beta)
print(f"chose w = {out.certificate['w']}; {out.measure.support_size} atoms, "
      f"exact: {verify_measure(g.beta, out.measure).exact_match}")
print()

g = generate(GenSpec(7, "x2x", seed=5, variant="separated"))
Q = x2x_quantities(g.beta)
print(f"x^2 = x data: tau in [{Q['q1']}, {Q['q0']}]")
print(f"width {Q['q0'] - Q['q1']} = det(compression {Q['compression']}) / (d0 d1) = "
      f"{Q['d_compressed'] / (Q['d3_0'] * Q['d3_1'])}")
out = solve_x2x(g.beta)
print(f"chose tau = {out.certificate['tau']}; {out.measure.support_size} atoms, "
      f"exact: {verify_measure(g.beta, out.measure).exact_match}")
