"""JSON forms of instances and plans. Masses and weights travel as exact ``"p/q"`` strings."""
from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .measures import DiscreteMeasure, InvalidMeasure, check, format_rational, parse_weight, uniform_measure
from .plan import TransportPlan
from .solver import COST_KINDS, CostSpec


class FormatError(ValueError):
    pass


@dataclass(frozen=True)
class Instance:
    mu: DiscreteMeasure
    nu: DiscreteMeasure
    cost: CostSpec


def _measure_from(obj, name: str) -> DiscreteMeasure:
    if not isinstance(obj, dict) or "points" not in obj:
        raise FormatError(f"{name}: expected an object with 'points'")
    points = obj["points"]
    if not isinstance(points, list):
        raise FormatError(f"{name}.points must be a list")
    try:
        if obj.get("weights") is None:
            meas = uniform_measure(points)
        else:
            meas = DiscreteMeasure(tuple(points), tuple(parse_weight(w) for w in obj["weights"]))
        check(meas)
    except (InvalidMeasure, TypeError) as exc:
        raise FormatError(f"{name}: {exc}") from None
    return meas


def _cost_from(obj) -> CostSpec:
    if isinstance(obj, str) and obj in COST_KINDS and obj != "explicit":
        return CostSpec(obj)
    if isinstance(obj, dict) and "matrix" in obj:
        try:
            return CostSpec.explicit(obj["matrix"])
        except (ValueError, TypeError) as exc:
            raise FormatError(f"cost: {exc}") from None
    raise FormatError(f"cost must be one of euclidean/sqeuclidean/manhattan or {{'matrix': ...}}, got {obj!r}")


def instance_from_dict(data) -> Instance:
    if not isinstance(data, dict):
        raise FormatError("instance must be a JSON object")
    for key in ("mu", "nu"):
        if key not in data:
            raise FormatError(f"instance is missing {key!r}")
    mu = _measure_from(data["mu"], "mu")
    nu = _measure_from(data["nu"], "nu")
    cost = _cost_from(data.get("cost", "euclidean"))
    if cost.kind == "explicit":
        if cost.matrix.shape != (len(mu), len(nu)):
            raise FormatError(f"cost matrix has shape {cost.matrix.shape}, expected {(len(mu), len(nu))}")
    elif mu.dim != nu.dim:
        raise FormatError(f"mu points are {mu.dim}-dimensional, nu points {nu.dim}-dimensional")
    return Instance(mu, nu, cost)


def _measure_to(meas: DiscreteMeasure) -> dict:
    return {
        "points": [list(p.coords) for p in meas.points],
        "weights": [format_rational(w) for w in meas.weights],
    }


def instance_to_dict(inst: Instance) -> dict:
    cost = {"matrix": inst.cost.matrix.tolist()} if inst.cost.kind == "explicit" else inst.cost.kind
    return {"mu": _measure_to(inst.mu), "nu": _measure_to(inst.nu), "cost": cost}


def plan_to_dict(plan: TransportPlan) -> dict:
    return {
        "m": plan.m,
        "n": plan.n,
        "entries": [[i, j, format_rational(q)] for i, j, q in plan.entries],
        "cost": plan.cost,
    }


def plan_from_dict(data) -> TransportPlan:
    try:
        entries = [(int(i), int(j), parse_weight(q)) for i, j, q in data["entries"]]
        return TransportPlan(int(data["m"]), int(data["n"]), tuple(entries), float(data["cost"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"malformed plan: {exc}") from None


def dumps(obj) -> str:
    return json.dumps(obj, indent=1) + "\n"


def read_json(path: str | Path):
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise FormatError(f"cannot read {path}: {exc}") from None


def load_instance(path: str | Path) -> Instance:
    return instance_from_dict(read_json(path))


def load_plan(path: str | Path) -> TransportPlan:
    return plan_from_dict(read_json(path))


def with_cost(inst: Instance, kind: str | None) -> Instance:
    """Override the instance's cost by a named kind (``matrix`` keeps the file's matrix)."""
    if kind is None or kind == inst.cost.kind or (kind == "matrix" and inst.cost.kind == "explicit"):
        return inst
    if kind == "matrix":
        raise FormatError("--cost matrix needs an instance with an explicit cost matrix")
    return Instance(inst.mu, inst.nu, CostSpec(kind))
