from math import inf

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from degdet.errors import BoxTooSmall, CapExceeded, NoDescentProgress
from degdet.lconvex import (
    SdaTrace,
    ZFunction,
    box_minimum,
    iteration_bound_check,
    network_flow_dual,
    random_convex_phi,
    sda_zn,
    steepest_direction,
)


def test_steepest_direction_examples():
    g = ZFunction(2, lambda x: abs(x[0]) + abs(x[1]))
    assert steepest_direction(g, (-1, -1)) == (1, 1)
    assert steepest_direction(g, (0, 0)) == (0, 0)
    band = ZFunction(2, lambda x: -x[0] if abs(x[0] - x[1]) <= 1 else inf)
    u = steepest_direction(band, (0, 1))
    assert u == (1, 0) and abs((0 + u[0]) - (1 + u[1])) <= 1


def test_tie_break_prefers_small_support_then_lex():
    g = ZFunction(3, lambda x: 0 if x == (0, 0, 0) else -1)
    assert steepest_direction(g, (0, 0, 0)) == (0, 0, 1)


def test_enumeration_cap():
    g = ZFunction(21, lambda x: 0)
    with pytest.raises(CapExceeded):
        steepest_direction(g, (0,) * 21)


def test_constant_function_returns_start():
    g = ZFunction(3, lambda x: 7)
    x, trace = sda_zn(g, (1, 2, 3))
    assert x == (1, 2, 3) and trace.steps == 0
    assert iteration_bound_check(trace, g, (1, 2, 3))


def test_difference_function_five_steps():
    g = ZFunction(2, lambda x: (x[1] - x[0] - 5) ** 2)
    x, trace = sda_zn(g, (0, 0))
    assert x == (0, 5) and trace.steps == 5
    assert iteration_bound_check(trace, g, (0, 0))


def test_optimal_start_takes_no_steps():
    g = ZFunction(2, lambda x: (x[1] - x[0] - 5) ** 2)
    _, trace = sda_zn(g, (2, 7))
    assert trace.steps == 0
    assert iteration_bound_check(trace, g, (2, 7))


def test_two_targets_converge_in_max_gap_steps():
    g = ZFunction(3, lambda x: abs(x[1] - x[0] - 1) + abs(x[2] - x[0] - 4))
    x, trace = sda_zn(g, (0, 0, 0))
    assert x == (0, 1, 4) and trace.steps == 4
    assert trace.directions[0] == (0, 1, 1)


def test_descent_along_ones_is_rejected():
    g = ZFunction(2, lambda x: -(x[0] + x[1]))
    with pytest.raises(NoDescentProgress):
        sda_zn(g, (0, 0))


def test_iteration_fuse():
    g = ZFunction(1, lambda x: -x[0])
    with pytest.raises(NoDescentProgress):
        sda_zn(g, (0,), max_iter=3)
    g2 = ZFunction(2, lambda x: -x[0] if x[1] == 0 else inf)
    with pytest.raises(CapExceeded):
        sda_zn(g2, (0, 0), max_iter=3)


def test_spot_check_catches_supermodular_function():
    g = ZFunction(3, lambda x: -(x[0] - x[2]) * (x[1] - x[2]))
    with pytest.raises(ValueError, match="submodularity"):
        sda_zn(g, (0, 0, 0), spot_check=np.random.default_rng(0))


def test_caller_supplied_direction():
    calls = []

    def finder(g, x):
        calls.append(x)
        return steepest_direction(g, x)

    g = ZFunction(2, lambda x: abs(x[1] - x[0] - 2))
    x, _ = sda_zn(g, (0, 0), direction=finder)
    assert x == (0, 2) and len(calls) == 3


def test_box_too_small():
    g = ZFunction(2, lambda x: (x[1] - x[0] - 5) ** 2)
    _, trace = sda_zn(g, (0, 0))
    with pytest.raises(BoxTooSmall):
        iteration_bound_check(trace, g, (0, 0), radius=2)
    inf_g = ZFunction(1, lambda x: inf)
    with pytest.raises(BoxTooSmall):
        iteration_bound_check(SdaTrace([(0,)], [inf], []), inf_g, (0,), radius=1)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_network_flow_duals(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(1, 4))
    phis = {(i, j): random_convex_phi(rng) for i in range(n) for j in range(n) if i != j and rng.random() < 0.6}
    g = network_flow_dual(n, phis)
    x0 = (0,) * n
    if g(x0) == inf:
        return
    x, trace = sda_zn(g, x0, spot_check=np.random.default_rng(seed))
    assert all(a > b for a, b in zip(trace.values, trace.values[1:]))
    val, _ = box_minimum(g, [v - 6 for v in x], [v + 6 for v in x])
    assert g(x) == val
    assert iteration_bound_check(trace, g, x0)
