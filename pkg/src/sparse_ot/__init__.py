"""Sparse optimal transport between finitely supported measures with rational weights.

Each source point of a uniform m-point measure splits its mass over at most
n/gcd(m, n) targets of a uniform n-point measure, and each target receives
from at most m/gcd(m, n) sources. The solver gets there by replicating points
into equal-mass atoms and solving an exact assignment between them.
"""
from .expansion import (
    DEFAULT_MAX_ATOMS,
    AtomBudgetExceeded,
    ExpandedInstance,
    ExpansionCounts,
    NonUniformMeasure,
    expand,
    expand_rational,
    expand_uniform,
    expansion_counts,
)
from .formats import FormatError, Instance, instance_from_dict, instance_to_dict, plan_from_dict, plan_to_dict
from .measures import (
    CommonDenominatorForm,
    DiscreteMeasure,
    InvalidMeasure,
    Point,
    Rational,
    common_denominator,
    measure,
    uniform_measure,
    validate,
)
from .oracle import OracleBudgetExceeded, brute_force_assignment, brute_force_transport
from .plan import (
    MarginalMismatch,
    PlanStats,
    TransportPlan,
    VerificationReport,
    collapse,
    collapse_flow,
    construction_bounds,
    plan_stats,
    verify_plan,
)
from .solver import (
    Assignment,
    CompressedFlow,
    CostSpec,
    atom_cost_matrix,
    ground_cost,
    solve_assignment,
    solve_compressed,
)
from .transport import Solution, solve

__version__ = "0.1.0"
