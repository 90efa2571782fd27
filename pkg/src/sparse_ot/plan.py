"""Transport plans on the original points: collapse, sparsity statistics, verification."""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .expansion import ExpandedInstance, expand_rational
from .measures import DiscreteMeasure, format_rational
from .solver import Assignment, CompressedFlow, CostSpec, ground_cost

COST_RTOL = 1e-9


class MarginalMismatch(ValueError):
    pass


@dataclass(frozen=True)
class TransportPlan:
    m: int
    n: int
    entries: tuple[tuple[int, int, Fraction], ...]
    cost: float

    def __post_init__(self):
        entries = tuple(sorted((int(i), int(j), Fraction(q)) for i, j, q in self.entries))
        object.__setattr__(self, "entries", entries)

    @property
    def support_size(self) -> int:
        return len(self.entries)

    def dense(self) -> np.ndarray:
        out = np.zeros((self.m, self.n))
        for i, j, q in self.entries:
            out[i, j] += float(q)
        return out

    def row_sums(self) -> list[Fraction]:
        rows = [Fraction(0)] * self.m
        for i, _, q in self.entries:
            rows[i] += q
        return rows

    def col_sums(self) -> list[Fraction]:
        cols = [Fraction(0)] * self.n
        for _, j, q in self.entries:
            cols[j] += q
        return cols


def _plan_from_counts(instance: ExpandedInstance, counts, atom_cost: float) -> TransportPlan:
    entries = tuple((i, j, k * instance.atom_mass) for (i, j), k in counts.items() if k)
    return TransportPlan(instance.m, instance.n, entries, float(instance.atom_mass) * atom_cost)


def collapse(instance: ExpandedInstance, assignment: Assignment) -> TransportPlan:
    """Sum atom-pair masses per (source, target) pair of original points."""
    if len(assignment.perm) != instance.N:
        raise ValueError(f"assignment has {len(assignment.perm)} atoms, instance has {instance.N}")
    src, dst = instance.src_atoms, instance.dst_atoms
    counts = Counter(zip(src.tolist(), dst[list(assignment.perm)].tolist()))
    return _plan_from_counts(instance, counts, assignment.cost)


def collapse_flow(instance: ExpandedInstance, flow: CompressedFlow) -> TransportPlan:
    counts: Counter = Counter()
    rows = [0] * instance.m
    cols = [0] * instance.n
    for i, j, units in flow.flow:
        if units <= 0:
            raise MarginalMismatch(f"non-positive flow {units} on ({i}, {j})")
        counts[i, j] += units
        rows[i] += units
        cols[j] += units
    if tuple(rows) != instance.src_mult or tuple(cols) != instance.dst_mult:
        raise MarginalMismatch("flow row/column sums do not match the atom multiplicities")
    return _plan_from_counts(instance, counts, flow.cost)


@dataclass(frozen=True)
class PlanStats:
    out_degree: tuple[int, ...]
    in_degree: tuple[int, ...]
    support_size: int
    max_out: int
    max_in: int
    bound_out: tuple[int, ...]
    bound_in: tuple[int, ...]
    cost: float

    @property
    def within_bounds(self) -> bool:
        return all(d <= b for d, b in zip(self.out_degree, self.bound_out)) and all(
            d <= b for d, b in zip(self.in_degree, self.bound_in)
        )

    def summary(self) -> str:
        return (
            f"support={self.support_size} max_out={self.max_out}≤{max(self.bound_out)} "
            f"max_in={self.max_in}≤{max(self.bound_in)} within_bounds={str(self.within_bounds).lower()} "
            f"cost={self.cost!r}"
        )


def degrees(plan: TransportPlan) -> tuple[tuple[int, ...], tuple[int, ...]]:
    out = [0] * plan.m
    inn = [0] * plan.n
    for i, j, _ in plan.entries:
        out[i] += 1
        inn[j] += 1
    return tuple(out), tuple(inn)


def construction_bounds(mu: DiscreteMeasure, nu: DiscreteMeasure) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Per-point degree bounds k_i*D/gcd(B,D) and l_j*B/gcd(B,D).

    For uniform measures these are n/gcd(m,n) and m/gcd(m,n) for every point.
    """
    inst = expand_rational(mu, nu, max_atoms=None)
    return inst.out_bounds(), inst.in_bounds()


def _check_marginals(plan: TransportPlan, mu: DiscreteMeasure, nu: DiscreteMeasure) -> str | None:
    if (plan.m, plan.n) != (len(mu), len(nu)):
        return f"plan is {plan.m}x{plan.n}, measures are {len(mu)}x{len(nu)}"
    for i, (got, want) in enumerate(zip(plan.row_sums(), mu.weights)):
        if got != want:
            return f"row {i} sums to {format_rational(got)}, expected {format_rational(want)}"
    for j, (got, want) in enumerate(zip(plan.col_sums(), nu.weights)):
        if got != want:
            return f"column {j} sums to {format_rational(got)}, expected {format_rational(want)}"
    return None


def plan_stats(plan: TransportPlan, mu: DiscreteMeasure, nu: DiscreteMeasure) -> PlanStats:
    problem = _check_marginals(plan, mu, nu)
    if problem:
        raise MarginalMismatch(problem)
    out, inn = degrees(plan)
    bound_out, bound_in = construction_bounds(mu, nu)
    return PlanStats(
        out_degree=out,
        in_degree=inn,
        support_size=plan.support_size,
        max_out=max(out),
        max_in=max(inn),
        bound_out=bound_out,
        bound_in=bound_in,
        cost=plan.cost,
    )


def plan_cost(plan: TransportPlan, c: np.ndarray) -> float:
    return math.fsum(float(q) * c[i, j] for i, j, q in plan.entries)


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class VerificationReport:
    checks: tuple[Check, ...] = field(default_factory=tuple)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failed(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "checks": [{"name": c.name, "passed": c.passed, "detail": c.detail} for c in self.checks],
        }

    def __str__(self) -> str:
        lines = [f"{'PASS' if c.passed else 'FAIL'} {c.name}: {c.detail}".rstrip(": ") for c in self.checks]
        lines.append("verification " + ("passed" if self.passed else "FAILED"))
        return "\n".join(lines)


def verify_plan(
    plan: TransportPlan,
    mu: DiscreteMeasure,
    nu: DiscreteMeasure,
    cost: CostSpec,
    bounds: tuple[Sequence[int], Sequence[int]] | None = None,
) -> VerificationReport:
    """Check a plan (from this package or elsewhere) against the sparsity guarantees.

    ``bounds`` overrides the per-point degree bounds; by default they come from
    the expansion of ``mu`` and ``nu``.
    """
    checks = []

    structural = None
    pairs = [(i, j) for i, j, _ in plan.entries]
    if len(set(pairs)) != len(pairs):
        structural = "duplicate (i, j) entries"
    elif any(not (0 <= i < plan.m and 0 <= j < plan.n) for i, j in pairs):
        structural = "entry index out of range"
    checks.append(Check("structure", structural is None, structural or f"{len(pairs)} entries"))

    bad = [(i, j) for i, j, q in plan.entries if q <= 0]
    checks.append(
        Check("positivity", not bad, f"non-positive mass at {bad[0]}" if bad else "all masses > 0")
    )

    marg = _check_marginals(plan, mu, nu)
    checks.append(Check("marginals", marg is None, marg or "row and column sums exact"))
    if marg is not None and (plan.m, plan.n) != (len(mu), len(nu)):
        return VerificationReport(tuple(checks))

    big_l = math.lcm(*(w.denominator for w in mu.weights + nu.weights))
    off = [(i, j) for i, j, q in plan.entries if (q * big_l).denominator != 1]
    checks.append(
        Check(
            "quantization",
            not off,
            f"mass at {off[0]} is not a multiple of 1/{big_l}" if off else f"all masses multiples of 1/{big_l}",
        )
    )

    # bounds are pure integer arithmetic; no atoms are materialized
    bo, bi = bounds if bounds is not None else construction_bounds(mu, nu)
    out, inn = degrees(plan)
    viol = [f"source {i} out-degree {d} > {b}" for i, (d, b) in enumerate(zip(out, bo)) if d > b]
    viol += [f"target {j} in-degree {d} > {b}" for j, (d, b) in enumerate(zip(inn, bi)) if d > b]
    if viol:
        detail = viol[0] + (f" (+{len(viol) - 1} more)" if len(viol) > 1 else "")
    else:
        detail = f"max_out={max(out)} max_in={max(inn)}"
    checks.append(Check("degree_bounds", not viol, detail))

    c = ground_cost(mu, nu, cost)
    recomputed = plan_cost(plan, c)
    scale = math.fsum(abs(float(q) * c[i, j]) for i, j, q in plan.entries)
    ok = math.isclose(recomputed, plan.cost, rel_tol=COST_RTOL, abs_tol=COST_RTOL * scale)
    checks.append(Check("cost", ok, f"reported {plan.cost!r}, recomputed {recomputed!r}"))
    return VerificationReport(tuple(checks))
