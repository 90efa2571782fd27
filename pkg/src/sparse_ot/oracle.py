"""Exhaustive reference solvers for desk-sized instances.

Nothing here is shared with :mod:`sparse_ot.solver`; costs are summed
independently so that a bug in one path cannot hide in the other.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

MAX_ASSIGNMENT_N = 9
MAX_TRANSPORT_UNITS = 12
MAX_TRANSPORT_CELLS = 12


class OracleBudgetExceeded(ValueError):
    pass


def _entries(cost) -> list[list]:
    """Rows as Python numbers: ints when every entry is integral, floats otherwise."""
    rows = [[float(v) for v in row] for row in cost]
    if all(v.is_integer() and abs(v) < 2**53 for row in rows for v in row):
        return [[int(v) for v in row] for row in rows]
    return rows


def _total(values) -> int | float:
    values = list(values)
    if all(isinstance(v, int) for v in values):
        return sum(values)
    return math.fsum(values)


@dataclass(frozen=True)
class OracleAssignment:
    cost: int | float
    perm: tuple[int, ...]
    candidates: int


@lru_cache(maxsize=None)
def _permutations(n: int) -> np.ndarray:
    """All permutations of range(n), one per row, in lexicographic order."""
    table = np.array(list(itertools.permutations(range(n))), dtype=np.intp).reshape(-1, n)
    table.setflags(write=False)
    return table


def brute_force_assignment(cost) -> OracleAssignment:
    """Minimum over all N! permutations; the first minimizer in lexicographic order wins."""
    rows = _entries(cost)
    n = len(rows)
    if n == 0 or any(len(r) != n for r in rows):
        raise ValueError("need a non-empty square matrix")
    if n > MAX_ASSIGNMENT_N:
        raise OracleBudgetExceeded(f"N = {n} exceeds the exhaustive limit {MAX_ASSIGNMENT_N}")
    exact = isinstance(rows[0][0], int)
    perms = _permutations(n)
    table = np.array(rows, dtype=np.int64 if exact else float)
    totals = table[np.arange(n), perms].sum(axis=1)
    k = int(np.argmin(totals))
    best = tuple(int(p) for p in perms[k])
    if exact:
        value = sum(rows[p][q] for p, q in enumerate(best))
    else:
        value = math.fsum(rows[p][q] for p, q in enumerate(best))
    return OracleAssignment(value, best, len(perms))


@dataclass(frozen=True)
class OracleTransport:
    cost: int | float
    matrix: tuple[tuple[int, ...], ...]
    feasible: int


def _row_fillings(total: int, caps: Sequence[int]):
    """All nonnegative integer vectors summing to ``total`` with entry j <= caps[j]."""
    if not caps:
        if total == 0:
            yield ()
        return
    for first in range(min(total, caps[0]) + 1):
        for rest in _row_fillings(total - first, caps[1:]):
            yield (first, *rest)


def brute_force_transport(src_mult: Sequence[int], dst_mult: Sequence[int], cost) -> OracleTransport:
    """Minimum cost over every integer matrix with the given row and column sums."""
    src = [int(s) for s in src_mult]
    dst = [int(d) for d in dst_mult]
    rows = _entries(cost)
    m, n = len(src), len(dst)
    if len(rows) != m or any(len(r) != n for r in rows):
        raise ValueError("cost shape does not match multiplicities")
    if sum(src) != sum(dst):
        raise ValueError("unbalanced multiplicities")
    if sum(src) > MAX_TRANSPORT_UNITS or m * n > MAX_TRANSPORT_CELLS:
        raise OracleBudgetExceeded(
            f"{sum(src)} units on {m}x{n} exceeds the limits "
            f"{MAX_TRANSPORT_UNITS} units / {MAX_TRANSPORT_CELLS} cells"
        )

    best = None
    best_matrix = None
    feasible = 0

    def recurse(i: int, remaining: list[int], chosen: list[tuple[int, ...]]):
        nonlocal best, best_matrix, feasible
        if i == m:
            if any(remaining):
                return
            feasible += 1
            val = _total(u * rows[a][b] for a, r in enumerate(chosen) for b, u in enumerate(r))
            if best is None or val < best:
                best, best_matrix = val, tuple(chosen)
            return
        for row in _row_fillings(src[i], remaining):
            recurse(i + 1, [r - u for r, u in zip(remaining, row)], chosen + [row])

    recurse(0, dst, [])
    return OracleTransport(best, best_matrix, feasible)
