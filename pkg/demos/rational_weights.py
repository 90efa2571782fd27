"""
Rational weights and the lcm blow-up
====================================

With weights a_i/b_i the replication needs B = lcm(b_i) on the source side,
D = lcm(d_j) on the target side and L = lcm(B, D) atoms per side.
"""

from fractions import Fraction

from sparse_ot import (
    AtomBudgetExceeded,
    common_denominator,
    construction_bounds,
    expand,
    measure,
    plan_stats,
    solve,
    uniform_measure,
)

# %%
# Common-denominator form: 1/2, 1/3, 1/6 is 3/6, 2/6, 1/6
mu = measure([[0.0], [1.0], [2.0]], ["1/2", "1/3", "1/6"])
print(common_denominator(mu))

# %%
# Two sources, three targets, source weights 2/3 and 1/3
mu = measure([[0.0, 0.0], [1.0, 0.0]], ["2/3", "1/3"])
nu = uniform_measure([[0.0, 1.0], [0.5, 1.0], [1.0, 1.0]])
inst = expand(mu, nu)
print("B =", inst.src_denominator, "D =", inst.dst_denominator, "L =", inst.N)
print("source atoms:", inst.src_atoms.tolist(), "target atoms:", inst.dst_atoms.tolist())

# %%
# B = D = 3 gives D/gcd(B, D) = 1, yet the 2/3 source has to reach two of
# the 1/3 targets. The bound that does hold scales with the source's
# multiplicity: k_i * D/gcd(B, D).
sol = solve(mu, nu)
stats = plan_stats(sol.plan, mu, nu)
print("out-degrees:", stats.out_degree, "bounds:", construction_bounds(mu, nu)[0])
for i, j, q in sol.plan.entries:
    print(f"  {i} -> {j}: {q}")

# %%
# Coprime denominators make L explode; the expansion refuses rather than allocate
first = [Fraction(1, 97), Fraction(1, 89), Fraction(1, 101)]
big = measure([[float(i)] for i in range(4)], first + [1 - sum(first)])
try:
    expand(big, uniform_measure([[0.0], [1.0]]))
except AtomBudgetExceeded as exc:
    print(exc)
