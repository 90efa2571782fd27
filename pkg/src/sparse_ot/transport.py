"""End-to-end solve: expand, pick a solver path, collapse back to a plan."""
from __future__ import annotations

from dataclasses import dataclass

from .expansion import DEFAULT_MAX_ATOMS, ExpandedInstance, expand
from .measures import DiscreteMeasure
from .plan import TransportPlan, collapse, collapse_flow
from .solver import CostSpec, atom_cost_matrix, choose_path, ground_cost, solve_assignment, solve_compressed


@dataclass(frozen=True)
class Solution:
    plan: TransportPlan
    instance: ExpandedInstance
    path: str
    exact_atom_cost: int | None


def solve(
    mu: DiscreteMeasure,
    nu: DiscreteMeasure,
    cost: CostSpec | str = "euclidean",
    path: str = "auto",
    max_atoms: int | None = DEFAULT_MAX_ATOMS,
) -> Solution:
    """Optimal plan in which source i reaches at most k_i*D/gcd(B,D) targets.

    ``path="expanded"`` solves the N x N atom assignment literally;
    ``"compressed"`` solves the equivalent m x n integral flow. ``"auto"``
    switches to the flow above 512 atoms.
    """
    if isinstance(cost, str):
        cost = CostSpec(cost)
    inst = expand(mu, nu, max_atoms)
    chosen = choose_path(inst, path)
    if chosen == "expanded":
        assignment = solve_assignment(atom_cost_matrix(inst, cost))
        return Solution(collapse(inst, assignment), inst, chosen, assignment.exact_cost)
    flow = solve_compressed(inst.src_mult, inst.dst_mult, ground_cost(mu, nu, cost))
    return Solution(collapse_flow(inst, flow), inst, chosen, flow.exact_cost)
