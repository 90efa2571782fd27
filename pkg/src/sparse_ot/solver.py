"""Exact solvers for the atom assignment problem and its compressed flow form."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .expansion import ExpandedInstance
from .measures import DiscreteMeasure

COST_KINDS = ("euclidean", "sqeuclidean", "manhattan", "explicit")
AUTO_COMPRESS_ABOVE = 512


@dataclass(frozen=True)
class CostSpec:
    kind: str = "euclidean"
    matrix: np.ndarray | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.kind not in COST_KINDS:
            raise ValueError(f"unknown cost kind {self.kind!r}")
        if (self.kind == "explicit") != (self.matrix is not None):
            raise ValueError("an explicit cost needs a matrix, and only it")
        if self.matrix is not None:
            mat = np.array(self.matrix, dtype=float)
            if mat.ndim != 2:
                raise ValueError("cost matrix must be two-dimensional")
            if not np.all(np.isfinite(mat)):
                raise ValueError("cost matrix has non-finite entries")
            mat.setflags(write=False)
            object.__setattr__(self, "matrix", mat)

    @classmethod
    def explicit(cls, matrix) -> "CostSpec":
        return cls("explicit", np.asarray(matrix, dtype=float))


def ground_cost(mu: DiscreteMeasure, nu: DiscreteMeasure, cost: CostSpec) -> np.ndarray:
    """m x n matrix of point-to-point costs."""
    m, n = len(mu), len(nu)
    if cost.kind == "explicit":
        if cost.matrix.shape != (m, n):
            raise ValueError(f"cost matrix has shape {cost.matrix.shape}, expected {(m, n)}")
        return cost.matrix
    x, y = mu.coords(), nu.coords()
    if x.shape[1] != y.shape[1]:
        raise ValueError(f"source dimension {x.shape[1]} != target dimension {y.shape[1]}")
    diff = x[:, None, :] - y[None, :, :]
    if cost.kind == "manhattan":
        return np.abs(diff).sum(axis=2)
    sq = (diff**2).sum(axis=2)
    return sq if cost.kind == "sqeuclidean" else np.sqrt(sq)


def atom_cost_matrix(instance: ExpandedInstance, cost: CostSpec) -> np.ndarray:
    c = ground_cost(instance.src_measure, instance.dst_measure, cost)
    return c[np.ix_(instance.src_atoms, instance.dst_atoms)]


def integer_matrix(c: np.ndarray) -> list[list[int]] | None:
    """The matrix as Python ints if every entry is an exactly representable integer."""
    if np.all(np.abs(c) < 2.0**53) and np.array_equal(c, np.round(c)):
        return [[int(v) for v in row] for row in c]
    return None


@dataclass(frozen=True)
class Assignment:
    perm: tuple[int, ...]
    cost: float
    exact_cost: int | None = None


def _check_square(cost) -> np.ndarray:
    c = np.asarray(cost, dtype=float)
    if c.ndim != 2 or c.shape[0] != c.shape[1] or c.shape[0] == 0:
        raise ValueError(f"need a non-empty square matrix, got shape {c.shape}")
    if not np.all(np.isfinite(c)):
        raise ValueError("cost matrix has non-finite entries")
    return c


def solve_assignment(cost) -> Assignment:
    """Minimum-cost perfect matching by shortest augmenting paths with row/column potentials.

    Rows are inserted one at a time; each insertion runs a Dijkstra search
    over reduced costs ``c[i, j] - u[i] - v[j]`` and flips the alternating
    path it finds. O(N^3) overall, the inner relaxation vectorized.
    """
    c0 = _check_square(cost)
    # row shift keeps every reduced cost nonnegative; all permutations move by the same constant
    c = c0 - c0.min(axis=1, keepdims=True)
    n = c.shape[0]
    u = np.zeros(n + 1)
    v = np.zeros(n + 1)
    owner = np.zeros(n + 1, dtype=np.int64)  # owner[j]: 1-based row matched to column j, 0 if free
    way = np.zeros(n + 1, dtype=np.int64)
    for i in range(1, n + 1):
        owner[0] = i
        j0 = 0
        minv = np.full(n + 1, np.inf)
        used = np.zeros(n + 1, dtype=bool)
        while True:
            used[j0] = True
            i0 = owner[j0]
            free = ~used[1:]
            cur = c[i0 - 1] - u[i0] - v[1:]
            better = free & (cur < minv[1:])
            minv[1:][better] = cur[better]
            way[1:][better] = j0
            masked = np.where(free, minv[1:], np.inf)
            j1 = int(np.argmin(masked)) + 1
            delta = masked[j1 - 1]
            u[owner[used]] += delta
            v[used] -= delta
            minv[~used] -= delta
            j0 = j1
            if owner[j0] == 0:
                break
        while j0:
            j1 = way[j0]
            owner[j0] = owner[j1]
            j0 = j1
    perm = [0] * n
    for j in range(1, n + 1):
        perm[owner[j] - 1] = j - 1
    total = float(c0[np.arange(n), perm].sum())
    ints = integer_matrix(c0)
    exact = sum(ints[p][q] for p, q in enumerate(perm)) if ints is not None else None
    return Assignment(tuple(perm), total, exact)


@dataclass(frozen=True)
class CompressedFlow:
    """Integral flow in units of one atom; ``cost`` is in atom units too."""

    flow: tuple[tuple[int, int, int], ...]
    cost: float
    exact_cost: int | None = None


def solve_compressed(src_mult: Sequence[int], dst_mult: Sequence[int], cost) -> CompressedFlow:
    """Min-cost transportation by successive shortest paths with node potentials.

    Supplies and demands are the atom multiplicities. Every augmentation moves
    an integer number of units, so the optimum found is integral.
    """
    supply = np.array([int(s) for s in src_mult], dtype=np.int64)
    demand = np.array([int(d) for d in dst_mult], dtype=np.int64)
    c = np.asarray(cost, dtype=float)
    m, n = len(supply), len(demand)
    if c.shape != (m, n):
        raise ValueError(f"cost has shape {c.shape}, expected {(m, n)}")
    if not np.all(np.isfinite(c)):
        raise ValueError("cost matrix has non-finite entries")
    if np.any(supply <= 0) or np.any(demand <= 0):
        raise ValueError("multiplicities must be positive")
    if supply.sum() != demand.sum():
        raise ValueError(f"unbalanced: supply {supply.sum()} != demand {demand.sum()}")

    flow = np.zeros((m, n), dtype=np.int64)
    rem_s = supply.copy()
    rem_d = demand.copy()
    # potentials are shortest distances from the super source in the initial (acyclic) network
    pot_r = np.zeros(m)
    pot_c = c.min(axis=0)
    pot_t = pot_c.min()

    while rem_s.any():
        dist_r = np.where(rem_s > 0, -pot_r, np.inf)
        dist_c = np.full(n, np.inf)
        dist_t = np.inf
        pred_r = np.full(m, -1, dtype=np.int64)  # column reached through a backward edge, -1 = source
        pred_c = np.full(n, -1, dtype=np.int64)
        pred_t = -1
        done_r = np.zeros(m, dtype=bool)
        done_c = np.zeros(n, dtype=bool)
        while True:
            cand_r = np.where(done_r, np.inf, dist_r)
            cand_c = np.where(done_c, np.inf, dist_c)
            ir = int(np.argmin(cand_r))
            jc = int(np.argmin(cand_c))
            best = min(cand_r[ir], cand_c[jc], dist_t)
            if best == np.inf:
                raise RuntimeError("residual network disconnected; supplies cannot be routed")
            if dist_t <= best:
                break
            if cand_r[ir] <= cand_c[jc]:
                done_r[ir] = True
                d = dist_r[ir]
                nd = d + c[ir] + pot_r[ir] - pot_c
                upd = ~done_c & (nd < dist_c)
                dist_c[upd] = nd[upd]
                pred_c[upd] = ir
            else:
                done_c[jc] = True
                d = dist_c[jc]
                back = np.nonzero(flow[:, jc] > 0)[0]
                if back.size:
                    nd = d - c[back, jc] + pot_c[jc] - pot_r[back]
                    upd = ~done_r[back] & (nd < dist_r[back])
                    dist_r[back[upd]] = nd[upd]
                    pred_r[back[upd]] = jc
                if rem_d[jc] > 0:
                    nd = d + pot_c[jc] - pot_t
                    if nd < dist_t:
                        dist_t = nd
                        pred_t = jc

        pot_r += np.minimum(dist_r, dist_t)
        pot_c += np.minimum(dist_c, dist_t)
        pot_t += dist_t

        # walk back from the sink, collecting the alternating path
        path = []
        j = pred_t
        while True:
            i = int(pred_c[j])
            path.append((i, j))
            jb = int(pred_r[i])
            if jb < 0:
                break
            path.append((i, jb))
            j = jb
        first_row = path[-1][0]
        units = min(rem_s[first_row], rem_d[pred_t])
        backward = path[1::2]
        for i, jb in backward:
            units = min(units, flow[i, jb])
        for i, jf in path[0::2]:
            flow[i, jf] += units
        for i, jb in backward:
            flow[i, jb] -= units
        rem_s[first_row] -= units
        rem_d[pred_t] -= units

    ii, jj = np.nonzero(flow)
    entries = tuple((int(i), int(j), int(flow[i, j])) for i, j in zip(ii, jj))
    total = float(sum(u * c[i, j] for i, j, u in entries))
    ints = integer_matrix(c)
    exact = sum(u * ints[i][j] for i, j, u in entries) if ints is not None else None
    return CompressedFlow(entries, total, exact)


def choose_path(instance: ExpandedInstance, path: str = "auto") -> str:
    if path not in ("auto", "expanded", "compressed"):
        raise ValueError(f"unknown solve path {path!r}")
    if path == "auto":
        return "compressed" if instance.N > AUTO_COMPRESS_ABOVE else "expanded"
    return path
