"""
Two solver paths and an exhaustive check
========================================

The expanded path solves the N x N atom assignment. The compressed path
solves the m x n transportation problem with integer supplies, which
avoids building N x N matrices. Both give the same optimal cost.
"""

import time

import numpy as np

from sparse_ot import CostSpec, brute_force_assignment, expand, ground_cost, solve
from sparse_ot.generate import random_instance

# %%
# Timing on a few sizes
for m, n in [(20, 30), (64, 96), (150, 100)]:
    inst = random_instance(m, n, seed=m + n)
    row = []
    for path in ("expanded", "compressed"):
        t0 = time.perf_counter()
        sol = solve(inst.mu, inst.nu, inst.cost, path=path)
        row.append((path, time.perf_counter() - t0, sol.plan.cost))
    print(m, n, sol.instance.N, [(p, f"{t:.3f}s", f"{c:.6f}") for p, t, c in row])

# %%
# Negative explicit costs are fine: only differences between plans matter
rng = np.random.default_rng(1)
inst = random_instance(2, 4, seed=1)
cost = CostSpec.explicit(rng.uniform(-1, 1, size=(2, 4)))
sol = solve(inst.mu, inst.nu, cost, path="expanded")

# %%
# lcm(2, 4) = 4 atoms per side, few enough to enumerate all 4! bijections
atoms = expand(inst.mu, inst.nu)
atom_cost = ground_cost(inst.mu, inst.nu, cost)[np.ix_(atoms.src_atoms, atoms.dst_atoms)]
oracle = brute_force_assignment(atom_cost)
print("solver:", sol.plan.cost, "exhaustive:", oracle.cost * float(atoms.atom_mass))
