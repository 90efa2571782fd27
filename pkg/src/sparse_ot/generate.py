"""Seeded random instances."""
from __future__ import annotations

from fractions import Fraction

import numpy as np

from .formats import Instance
from .measures import DiscreteMeasure, uniform_measure
from .solver import CostSpec


def random_composition(rng: np.random.Generator, total: int, parts: int) -> list[int]:
    """Uniformly random composition of ``total`` into ``parts`` positive integers."""
    if parts > total:
        raise ValueError(f"cannot split {total} into {parts} positive parts")
    cuts = np.sort(rng.choice(np.arange(1, total), size=parts - 1, replace=False)) if parts > 1 else []
    edges = [0, *[int(c) for c in cuts], total]
    return [b - a for a, b in zip(edges, edges[1:])]


def random_rational_weights(rng: np.random.Generator, m: int, max_denominator: int) -> list[Fraction]:
    """Positive weights summing to exactly 1, each with reduced denominator <= ``max_denominator``."""
    if max_denominator < m:
        raise ValueError(f"max denominator {max_denominator} is too small for {m} positive weights")
    q = int(rng.integers(m, max_denominator + 1))
    return [Fraction(k, q) for k in random_composition(rng, q, m)]


def random_measure(
    rng: np.random.Generator, m: int, dim: int, weights: str = "uniform", max_denominator: int = 12
) -> DiscreteMeasure:
    pts = rng.random((m, dim)).tolist()
    if weights == "uniform":
        return uniform_measure(pts)
    if weights == "rational":
        return DiscreteMeasure(tuple(pts), tuple(random_rational_weights(rng, m, max_denominator)))
    raise ValueError(f"unknown weight mode {weights!r}")


def random_instance(
    m: int,
    n: int,
    dim: int = 2,
    weights: str = "uniform",
    max_denominator: int = 12,
    seed: int = 0,
    cost: CostSpec | str = "euclidean",
) -> Instance:
    if m < 1 or n < 1 or dim < 1:
        raise ValueError("m, n and dim must be positive")
    rng = np.random.default_rng(seed)
    mu = random_measure(rng, m, dim, weights, max_denominator)
    nu = random_measure(rng, n, dim, weights, max_denominator)
    if isinstance(cost, str):
        cost = CostSpec(cost)
    return Instance(mu, nu, cost)
