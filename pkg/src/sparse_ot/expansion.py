"""Replicate support points into equal-mass atoms.

A source point of weight ``k_i / B`` becomes ``k_i * L / B`` atoms and a
target point of weight ``l_j / D`` becomes ``l_j * L / D`` atoms, where
``L = lcm(B, D)``. Both sides then hold ``L`` atoms of mass ``1/L`` and the
transport problem is an assignment problem between them.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import numpy as np

from .measures import DiscreteMeasure, check, common_denominator

DEFAULT_MAX_ATOMS = 1_000_000


class AtomBudgetExceeded(ValueError):
    def __init__(self, atoms: int, max_atoms: int):
        self.atoms = atoms
        self.max_atoms = max_atoms
        super().__init__(f"expansion needs lcm = {atoms} atoms per side, budget is {max_atoms}")


class NonUniformMeasure(ValueError):
    pass


@dataclass(frozen=True)
class ExpansionCounts:
    g: int
    rx: int
    ry: int
    N: int
    atom_mass: Fraction


def expansion_counts(m: int, n: int) -> ExpansionCounts:
    if m < 1 or n < 1:
        raise ValueError(f"need m, n >= 1, got {m}, {n}")
    g = math.gcd(m, n)
    return ExpansionCounts(g=g, rx=n // g, ry=m // g, N=m * n // g, atom_mass=Fraction(g, m * n))


@dataclass(frozen=True)
class ExpandedInstance:
    """Atom multiplicities per original point, with provenance arrays on demand.

    ``src_denominator``/``dst_denominator`` are the B and D of the two
    measures; ``N`` is lcm(B, D).
    """

    src_measure: DiscreteMeasure
    dst_measure: DiscreteMeasure
    src_mult: tuple[int, ...]
    dst_mult: tuple[int, ...]
    atom_mass: Fraction
    src_denominator: int
    dst_denominator: int

    @property
    def N(self) -> int:
        return self.atom_mass.denominator

    @property
    def m(self) -> int:
        return len(self.src_mult)

    @property
    def n(self) -> int:
        return len(self.dst_mult)

    @cached_property
    def src_atoms(self) -> np.ndarray:
        return _atoms(self.src_mult)

    @cached_property
    def dst_atoms(self) -> np.ndarray:
        return _atoms(self.dst_mult)

    def out_bounds(self) -> tuple[int, ...]:
        """Most distinct targets any source can reach: k_i * D / gcd(B, D)."""
        step = self.dst_denominator // math.gcd(self.src_denominator, self.dst_denominator)
        return tuple(k * step for k in self._ks(self.src_mult, self.src_denominator))

    def in_bounds(self) -> tuple[int, ...]:
        step = self.src_denominator // math.gcd(self.src_denominator, self.dst_denominator)
        return tuple(l * step for l in self._ks(self.dst_mult, self.dst_denominator))

    def _ks(self, mult, denom):
        scale = self.N // denom
        return [c // scale for c in mult]


def _atoms(mult) -> np.ndarray:
    atoms = np.repeat(np.arange(len(mult)), mult)
    atoms.setflags(write=False)
    return atoms


def _check_budget(atoms: int, max_atoms: int | None) -> None:
    if max_atoms is not None and atoms > max_atoms:
        raise AtomBudgetExceeded(atoms, max_atoms)


def expand_uniform(
    mu: DiscreteMeasure, nu: DiscreteMeasure, max_atoms: int | None = DEFAULT_MAX_ATOMS
) -> ExpandedInstance:
    for name, meas in (("mu", mu), ("nu", nu)):
        check(meas)
        if not meas.is_uniform:
            raise NonUniformMeasure(f"{name} is not uniform; use expand_rational")
    m, n = len(mu), len(nu)
    counts = expansion_counts(m, n)
    _check_budget(counts.N, max_atoms)
    return ExpandedInstance(
        src_measure=mu,
        dst_measure=nu,
        src_mult=(counts.rx,) * m,
        dst_mult=(counts.ry,) * n,
        atom_mass=counts.atom_mass,
        src_denominator=m,
        dst_denominator=n,
    )


def expand_rational(
    mu: DiscreteMeasure, nu: DiscreteMeasure, max_atoms: int | None = DEFAULT_MAX_ATOMS
) -> ExpandedInstance:
    src = common_denominator(mu)
    dst = common_denominator(nu)
    big_l = math.lcm(src.denominator, dst.denominator)
    _check_budget(big_l, max_atoms)
    sx = big_l // src.denominator
    sy = big_l // dst.denominator
    return ExpandedInstance(
        src_measure=mu,
        dst_measure=nu,
        src_mult=tuple(k * sx for k in src.multiplicities),
        dst_mult=tuple(l * sy for l in dst.multiplicities),
        atom_mass=Fraction(1, big_l),
        src_denominator=src.denominator,
        dst_denominator=dst.denominator,
    )


def expand(
    mu: DiscreteMeasure, nu: DiscreteMeasure, max_atoms: int | None = DEFAULT_MAX_ATOMS
) -> ExpandedInstance:
    if mu.is_uniform and nu.is_uniform:
        return expand_uniform(mu, nu, max_atoms)
    return expand_rational(mu, nu, max_atoms)
