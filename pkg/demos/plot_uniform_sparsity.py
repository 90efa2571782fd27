"""
Twenty points to thirty points
==============================

Uniform mass on 20 red points is moved onto uniform mass on 30 blue points.
No bijection exists, but an optimal plan can still be very sparse: every red
point splits over at most 30/gcd(20, 30) = 3 blue points and every blue point
is fed by at most 20/gcd(20, 30) = 2 red points.
"""

import sys
from collections import Counter
from pathlib import Path

import numpy as np

from sparse_ot import expansion_counts, plan_stats, solve, uniform_measure
from sparse_ot.svg import plan_svg

# %%
# Random planar points from a fixed seed
rng = np.random.default_rng(2024)
mu = uniform_measure(rng.random((20, 2)))
nu = uniform_measure(rng.random((30, 2)))

# %%
# The replication: 3 copies of each red point, 2 of each blue point,
# 60 atoms of mass 1/60 on each side
counts = expansion_counts(20, 30)
print(counts)

# %%
# Solve the 60 x 60 assignment and fold it back onto the original points
sol = solve(mu, nu, "euclidean", path="expanded")
stats = plan_stats(sol.plan, mu, nu)
print(stats.summary())
print("out-degree histogram:", dict(sorted(Counter(stats.out_degree).items())))
print("in-degree histogram: ", dict(sorted(Counter(stats.in_degree).items())))

# %%
# Every mass is a multiple of gcd(m, n)/(m n) = 1/60
print(sorted({q for _, _, q in sol.plan.entries}))

# %%
# Same measures on both sides: the plan is a permutation
square = solve(mu, mu, "euclidean")
print("m = n support:", square.plan.support_size)

# %%
# Write the picture
out = Path(sys.argv[1] if len(sys.argv) > 1 else "twenty_to_thirty.svg")
out.write_text(plan_svg(sol.plan, mu, nu))
print("wrote", out)
