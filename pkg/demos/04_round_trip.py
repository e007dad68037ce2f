"""Random measures in, moments out, measures back.

Each foundry template places atoms on a known configuration.  Solving the
moments and verifying the result exercises every route of the dispatcher,
in exact and in float arithmetic.

    python demos/04_round_trip.py [count]
"""

import collections
import sys
import time

from tmpsolve import solve, verify_measure
from tmpsolve.foundry import TEMPLATES, GenSpec, generate

count = int(sys.argv[1]) if len(sys.argv) > 1 else 140
routes = collections.Counter()
worst = 0.0
failures = []
t0 = time.perf_counter()
for i in range(count):
    t = TEMPLATES[i % len(TEMPLATES)]
    k = 8 + i % 2 if t == "on-cubic-pair" else 1 + (i // len(TEMPLATES)) % 8
    spec = GenSpec(k, t, mode="float" if i % 4 == 3 else "exact", seed=i)
    g = generate(spec)
    out = solve(g.beta)
    if not out.ok:
        failures.append((spec, out.reason))
        continue
    rep = verify_measure(g.beta, out.measure)
    if not rep.passed:
        failures.append((spec, "verification"))
    if not g.beta.exact:
        worst = max(worst, rep.max_rel_deviation)
    routes[(out.certificate["case"].route, g.beta.mode)] += 1

print(f"{count} instances in {time.perf_counter() - t0:.1f}s, {len(failures)} failures")
print(f"worst float relative deviation {worst:.2e}")
for (route, mode), n in sorted(routes.items()):
    print(f"  {route:12s} {mode:6s} {n}")
for spec, why in failures:
    print("  failed:", spec, why)
