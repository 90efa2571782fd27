import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from sparse_ot import (
    CostSpec,
    atom_cost_matrix,
    brute_force_assignment,
    expand_uniform,
    solve_assignment,
    solve_compressed,
    uniform_measure,
)
from sparse_ot.generate import random_composition

from conftest import costs_close

LINE_COST = [[0.0, 0.5, 1.0], [1.0, 0.5, 0.0]]


def test_atom_cost_matrix_single_pair():
    inst = expand_uniform(uniform_measure([[0.0, 0.0]]), uniform_measure([[0.0, 2.0]]))
    assert atom_cost_matrix(inst, CostSpec("euclidean")).tolist() == [[2.0]]


def test_atom_cost_matrix_line(line_instance):
    inst = expand_uniform(*line_instance)
    euc = atom_cost_matrix(inst, CostSpec("euclidean"))
    assert euc.shape == (6, 6)
    assert euc[0].tolist() == [0, 0, 0.5, 0.5, 1, 1]
    assert euc[5].tolist() == [1, 1, 0.5, 0.5, 0, 0]
    assert atom_cost_matrix(inst, CostSpec("sqeuclidean"))[0].tolist() == [0, 0, 0.25, 0.25, 1, 1]
    assert atom_cost_matrix(inst, CostSpec("manhattan"))[0].tolist() == [0, 0, 0.5, 0.5, 1, 1]


def test_atom_cost_matrix_explicit_shape(line_instance):
    inst = expand_uniform(*line_instance)
    assert atom_cost_matrix(inst, CostSpec.explicit(LINE_COST))[3].tolist() == [1, 1, 0.5, 0.5, 0, 0]
    with pytest.raises(ValueError, match="shape"):
        atom_cost_matrix(inst, CostSpec.explicit([[1.0, 2.0]]))


def test_cost_spec_validation():
    with pytest.raises(ValueError):
        CostSpec("chebyshev")
    with pytest.raises(ValueError):
        CostSpec("explicit")
    with pytest.raises(ValueError):
        CostSpec.explicit([[np.nan]])


@pytest.mark.parametrize(
    "cost, perm, total",
    [
        ([[0.0]], (0,), 0),
        ([[1, 2], [3, 0]], (0, 1), 1),
        ([[4, 1, 3], [2, 0, 5], [3, 2, 2]], (1, 0, 2), 5),
    ],
)
def test_solve_assignment_examples(cost, perm, total):
    a = solve_assignment(cost)
    assert a.perm == perm
    assert a.cost == total and a.exact_cost == total


@pytest.mark.parametrize("bad", [np.zeros((2, 3)), np.zeros((0, 0)), [[np.inf]]])
def test_solve_assignment_rejects(bad):
    with pytest.raises(ValueError):
        solve_assignment(bad)


def test_solve_assignment_deterministic():
    c = np.ones((6, 6))
    assert solve_assignment(c).perm == solve_assignment(c).perm


square = st.integers(1, 7).flatmap(
    lambda n: arrays(np.float64, (n, n), elements=st.floats(-1, 1, allow_nan=False, width=64))
)


@settings(max_examples=150, deadline=None)
@given(square)
def test_assignment_matches_oracle(c):
    a = solve_assignment(c)
    assert sorted(a.perm) == list(range(len(c)))
    assert costs_close(a.cost, brute_force_assignment(c).cost)


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 7).flatmap(lambda n: arrays(np.int64, (n, n), elements=st.integers(-20, 20))))
def test_assignment_exact_integer(c):
    assert solve_assignment(c).exact_cost == brute_force_assignment(c).cost


@settings(max_examples=60, deadline=None)
@given(square, st.floats(0.01, 100))
def test_scaling_equivariance(c, lam):
    base = solve_assignment(c)
    scaled = solve_assignment(lam * c)
    tol = 1e-9 * lam * max(1.0, float(np.abs(c).sum()))
    assert abs(scaled.cost - lam * base.cost) <= tol
    # the unscaled argmin stays optimal after scaling
    assert abs(float((lam * c)[np.arange(len(c)), base.perm].sum()) - scaled.cost) <= tol


def test_solve_compressed_examples():
    f = solve_compressed([1], [1], [[7.0]])
    assert f.flow == ((0, 0, 1),) and f.cost == 7.0 and f.exact_cost == 7

    f = solve_compressed([3, 3], [2, 2, 2], LINE_COST)
    assert costs_close(f.cost, 1.0)
    assert f.flow == ((0, 0, 2), (0, 1, 1), (1, 1, 1), (1, 2, 2))

    f = solve_compressed([2, 1], [1, 1, 1], LINE_COST)
    assert f.flow == ((0, 0, 1), (0, 1, 1), (1, 2, 1))
    assert costs_close(f.cost, 0.5)


def test_solve_compressed_rejects_unbalanced():
    with pytest.raises(ValueError, match="unbalanced"):
        solve_compressed([2], [1, 2], [[0.0, 0.0]])
    with pytest.raises(ValueError, match="shape"):
        solve_compressed([1], [1], [[0.0, 0.0]])


def _random_transport(rng, max_units=200):
    m, n = rng.integers(1, 9, size=2)
    src = rng.integers(1, 6, size=m)
    total = int(src.sum())
    n = min(int(n), total)
    dst = random_composition(rng, total, n)
    return src.tolist(), dst, rng.uniform(-1, 1, size=(m, n))


@pytest.mark.parametrize("seed", range(40))
def test_path_equivalence(seed):
    rng = np.random.default_rng(seed)
    src, dst, c = _random_transport(rng)
    flow = solve_compressed(src, dst, c)
    atoms = c[np.ix_(np.repeat(np.arange(len(src)), src), np.repeat(np.arange(len(dst)), dst))]
    assert costs_close(flow.cost, solve_assignment(atoms).cost)
    rows = np.zeros(len(src), dtype=int)
    cols = np.zeros(len(dst), dtype=int)
    for i, j, u in flow.flow:
        assert u > 0
        rows[i] += u
        cols[j] += u
    assert rows.tolist() == src and cols.tolist() == dst


def test_compressed_scaling_and_shift():
    rng = np.random.default_rng(3)
    src, dst, c = [3, 2, 4], [1, 5, 3], rng.uniform(-1, 1, size=(3, 3))
    base = solve_compressed(src, dst, c)
    assert costs_close(solve_compressed(src, dst, 3.5 * c).cost, 3.5 * base.cost)
