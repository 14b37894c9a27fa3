from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lcp_homotopy import (
    LcpInstance,
    LemkeStatus,
    NoFeasiblePointError,
    TooLargeError,
    brute_force_solutions,
    check_solution,
    compute_w,
    lemke_solve,
    strictly_feasible_point,
)

from .conftest import random_feasible


def test_instance_validation():
    with pytest.raises(ValueError):
        LcpInstance(np.ones((2, 3)), [1, 2])
    with pytest.raises(ValueError):
        LcpInstance(np.eye(2), [1, 2, 3])
    with pytest.raises(ValueError):
        LcpInstance([[np.nan, 0], [0, 1]], [1, 1])
    inst = LcpInstance(np.eye(2), [1, 1])
    with pytest.raises(ValueError):
        inst.A[0, 0] = 5.0


@pytest.mark.parametrize(
    "name, x, w",
    [
        ("ex4_1", [1, 0], [0, 2.5]),
        ("ex4_1", [0, 0], [1, -0.5]),
        ("ex4_7", [0.5, 0, 0, 0, 1], [0, 1, 8, 2.5, 0]),
    ],
)
def test_compute_w_examples(examples, name, x, w):
    np.testing.assert_allclose(compute_w(examples[name].inst, x), w, atol=1e-12)


def test_check_solution_examples(examples):
    inst = examples["ex4_1"].inst
    ok, sol = check_solution(inst, [1, 0])
    assert ok and sol.complementarity_gap == 0.0
    ok, sol = check_solution(inst, [0.5, 0.5])
    assert not ok
    assert check_solution(inst, [1 - 1e-9, 0])[0]
    assert not check_solution(inst, [-1e-3, 0])[0]
    with pytest.raises(ValueError):
        check_solution(inst, [1, 0], tol=0)


def test_strictly_feasible_point_examples(examples):
    x = strictly_feasible_point(LcpInstance(np.eye(2), [1, 1]))
    np.testing.assert_array_equal(x, [0.1, 0.1])
    np.testing.assert_array_equal(strictly_feasible_point(LcpInstance(np.eye(3), np.ones(3)), [1.0]), np.ones(3))
    assert np.all(compute_w(examples["ex4_2"].inst, [2, 1]) > 0)
    for name, f in examples.items():
        if name == "ex4_5":
            # the cyclic -2 couplings need a lopsided x; the lattice misses it and x0 must be supplied
            with pytest.raises(NoFeasiblePointError):
                strictly_feasible_point(f.inst)
            continue
        x = strictly_feasible_point(f.inst)
        assert np.all(x > 0) and np.all(compute_w(f.inst, x) > 0)
    with pytest.raises(ValueError):
        strictly_feasible_point(LcpInstance(np.eye(2), [1, 1]), [])
    with pytest.raises(NoFeasiblePointError):
        strictly_feasible_point(LcpInstance(np.zeros((2, 2)), [-1, -1]))


@pytest.mark.parametrize(
    "a, q, expected",
    [
        (np.eye(2), [1, 1], [[0, 0]]),
        (np.eye(2), [-1, -2], [[1, 2]]),
        ([[-1, 0], [0, -1]], [1, 1], [[0, 0], [1, 0], [0, 1], [1, 1]]),
    ],
)
def test_brute_force_examples(a, q, expected):
    sols = brute_force_solutions(LcpInstance(a, q))
    got = sorted(tuple(np.round(s.x, 9)) for s in sols)
    assert got == sorted(tuple(map(float, e)) for e in expected)


def test_brute_force_degenerate_example(examples):
    sols = brute_force_solutions(examples["ex4_6"].inst)
    assert any(np.allclose(s.x, [1, 0, 2, 0]) for s in sols)
    for s in sols:
        assert check_solution(examples["ex4_6"].inst, s.x, 1e-9)[0]


def test_brute_force_size_guard():
    with pytest.raises(TooLargeError):
        brute_force_solutions(LcpInstance(np.eye(13), np.ones(13)))


@pytest.mark.parametrize("seed", range(5))
def test_brute_force_exhaustive_against_sampling(seed):
    rng = np.random.default_rng(seed)
    inst = LcpInstance(rng.integers(-3, 4, (2, 2)).astype(float), rng.integers(-3, 4, 2).astype(float))
    sols = brute_force_solutions(inst)
    # coarse lattice over [0, 4]^2 with step 1/8 contains every rational solution with denominator 1, 2, 4, 8
    grid = np.stack(np.meshgrid(np.arange(33) / 8, np.arange(33) / 8), -1).reshape(-1, 2)
    w = grid @ inst.A.T + inst.q
    hits = grid[np.all(w >= -1e-9, axis=1) & (np.max(np.abs(grid * w), axis=1) <= 1e-9)]
    for h in hits:
        assert any(np.max(np.abs(s.x - h)) <= 1e-9 for s in sols), h
    # random nonnegative samples that pass the check must also be known
    pts = rng.uniform(0, 4, (10_000, 2)) * rng.integers(0, 2, (10_000, 2))
    for p in pts:
        if check_solution(inst, p, 1e-9)[0]:
            assert any(np.max(np.abs(s.x - p)) <= 1e-6 for s in sols)


def test_lemke_trivial_q_nonnegative():
    out = lemke_solve(LcpInstance([[-5.0, 1.0], [2.0, -7.0]], [0.0, 3.0]))
    assert out.kind is LemkeStatus.SOLUTION and out.pivots == 0
    np.testing.assert_array_equal(out.solution.x, [0, 0])


def test_lemke_psd_example(examples):
    out = lemke_solve(examples["ex4_2"].inst)
    assert out.kind is LemkeStatus.SOLUTION
    np.testing.assert_allclose(out.solution.x, [0.5, 0], atol=1e-12)
    assert out.pivot_sequence[0][0] == "z0"


def test_lemke_ray_on_n_matrix(examples):
    out = lemke_solve(examples["ex4_1"].inst)
    assert out.kind is LemkeStatus.RAY_TERMINATION
    assert "RayTermination" in out.describe()


def test_lemke_cycle_limit(examples):
    out = lemke_solve(examples["ex4_7"].inst, max_pivots=1)
    assert out.kind is LemkeStatus.CYCLE_LIMIT
    with pytest.raises(ValueError):
        lemke_solve(examples["ex4_7"].inst, max_pivots=0)


@given(seed=st.integers(0, 10_000), n=st.integers(1, 4))
@settings(max_examples=80, deadline=None)
def test_lemke_solutions_are_oracle_solutions(seed, n):
    rng = np.random.default_rng(seed)
    inst, _ = random_feasible(rng, n)
    inst = LcpInstance(inst.A, rng.uniform(-2, 2, n))
    out = lemke_solve(inst)
    if out.kind is LemkeStatus.SOLUTION:
        assert check_solution(inst, out.solution.x, 1e-6)[0]
        assert any(np.max(np.abs(s.x - out.solution.x)) <= 1e-6 for s in brute_force_solutions(inst))


@pytest.mark.parametrize("seed", range(10))
def test_lemke_solves_positive_definite(seed):
    rng = np.random.default_rng(seed)
    m = rng.normal(size=(4, 4))
    inst = LcpInstance(m @ m.T + 0.5 * np.eye(4), rng.uniform(-2, 2, 4))
    out = lemke_solve(inst)
    assert out.kind is LemkeStatus.SOLUTION
    (only,) = brute_force_solutions(inst)
    np.testing.assert_allclose(out.solution.x, only.x, atol=1e-8)


def test_lemke_deterministic(examples):
    for f in examples.values():
        a, b = lemke_solve(f.inst), lemke_solve(f.inst)
        assert a.pivot_sequence == b.pivot_sequence and a.kind is b.kind
