"""Steepest descent for L-convex functions on Z^n.

A point is a global minimizer as soon as no ``u`` in ``{0,1}^n`` improves
it, and starting from ``x0`` the descent needs exactly as many steps as the
l-infinity distance to the nearest minimizer above ``x0``.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import product
from math import inf, isinf
from typing import Callable, Sequence

import numpy as np

from .errors import BoxTooSmall, CapExceeded, NoDescentProgress

Point = tuple[int, ...]


@dataclass
class ZFunction:
    dim: int
    eval: Callable[[Point], float]
    submodular_checked: bool = False
    lin_periodic: bool = False

    def __call__(self, x: Sequence[int]) -> float:
        return self.eval(tuple(int(v) for v in x))


@dataclass
class SdaTrace:
    points: list[Point] = dc_field(default_factory=list)
    values: list[float] = dc_field(default_factory=list)
    directions: list[Point] = dc_field(default_factory=list)

    @property
    def steps(self) -> int:
        return len(self.directions)


def _add(x: Point, u: Point) -> Point:
    return tuple(a + b for a, b in zip(x, u))


def steepest_direction(g: ZFunction, x: Sequence[int], cap: int = 20) -> Point:
    """``u`` in ``{0,1}^n`` minimising ``g(x + u)``; ties go to the smallest
    support, then the lexicographically smallest vector.
    """
    n = g.dim
    if n > cap:
        raise CapExceeded(f"2^{n} candidates exceed the enumeration cap of 2^{cap}")
    x = tuple(int(v) for v in x)
    best_u: Point = (0,) * n
    best_v = g(x)
    if isinf(best_v) and best_v > 0:
        raise ValueError("g(x) must be finite")
    for u in sorted(product((0, 1), repeat=n), key=lambda u: (sum(u), u)):
        v = g(_add(x, u))
        if v < best_v:
            best_u, best_v = u, v
    return best_u


def sda_zn(
    g: ZFunction,
    x0: Sequence[int],
    max_iter: int = 10**6,
    direction: Callable[[ZFunction, Point], Point] | None = None,
    spot_check: np.random.Generator | None = None,
) -> tuple[Point, SdaTrace]:
    """Minimise an L-convex ``g`` (translation invariant along all-ones).

    ``direction`` replaces the 2^n enumeration of the best step.  With
    ``spot_check`` set, random pairs near ``x0`` are tested for
    submodularity first and a violation raises ValueError.
    """
    find = direction or steepest_direction
    x = tuple(int(v) for v in x0)
    if spot_check is not None:
        near = list(product(*(range(a - 1, a + 2) for a in x)))
        spot_check_submodular(g, near, spot_check)
    trace = SdaTrace([x], [g(x)], [])
    ones = (1,) * g.dim
    while True:
        u = find(g, x)
        y = _add(x, u)
        gy = g(y)
        if not gy < trace.values[-1]:
            return x, trace
        if u == ones:
            raise NoDescentProgress("descent along the all-ones direction: g has no minimizer")
        if trace.steps >= max_iter:
            raise CapExceeded(f"no convergence within {max_iter} steps")
        x = y
        trace.points.append(x)
        trace.values.append(gy)
        trace.directions.append(u)


def box_minimum(g: ZFunction, lo: Sequence[int], hi: Sequence[int]) -> tuple[float, list[Point]]:
    """Minimum value over the integer box and every point attaining it."""
    best, pts = inf, []
    for x in product(*(range(a, b + 1) for a, b in zip(lo, hi))):
        v = g(x)
        if v < best:
            best, pts = v, [x]
        elif v == best and not isinf(v):
            pts.append(x)
    return best, pts


def iteration_bound_check(trace: SdaTrace, g: ZFunction, x0: Sequence[int], radius: int | None = None) -> bool:
    """Trace length is at most the l-inf distance from ``x0`` to the nearest
    minimizer ``y* >= x0``, found by brute force over ``x0 + [0, radius]^n``.
    """
    x0 = tuple(int(v) for v in x0)
    R = radius if radius is not None else trace.steps + 1
    val, pts = box_minimum(g, x0, tuple(a + R for a in x0))
    if isinf(val):
        raise BoxTooSmall("no finite point in the box")
    if trace.values[-1] < val:
        raise BoxTooSmall("the box above x0 contains no minimizer")
    if trace.values[-1] > val:
        return False
    k = min(max(b - a for a, b in zip(x0, y)) for y in pts)
    return trace.steps <= k


def spot_check_submodular(g: ZFunction, points: Sequence[Point], rng: np.random.Generator, pairs: int = 50) -> None:
    """Raise ValueError with the offending pair if (SUB) fails on random pairs."""
    for _ in range(pairs):
        x = points[int(rng.integers(len(points)))]
        y = points[int(rng.integers(len(points)))]
        lo = tuple(min(a, b) for a, b in zip(x, y))
        hi = tuple(max(a, b) for a, b in zip(x, y))
        if g(x) + g(y) < g(lo) + g(hi):
            raise ValueError(f"submodularity fails at x={x}, y={y}")


def network_flow_dual(n: int, phis: dict[tuple[int, int], Callable[[int], float]]) -> ZFunction:
    """``g(x) = sum phi_ij(x_i - x_j)``; L-convex whenever every phi is convex."""

    def ev(x: Point) -> float:
        return sum(phi(x[i] - x[j]) for (i, j), phi in phis.items())

    return ZFunction(n, ev, lin_periodic=True)


def random_convex_phi(rng: np.random.Generator, reach: int = 3) -> Callable[[int], float]:
    """Piecewise-linear convex function, infinite outside a random window."""
    center = int(rng.integers(-reach, reach + 1))
    slopes_l = int(rng.integers(0, 4))
    slopes_r = int(rng.integers(0, 4))
    curv = int(rng.integers(0, 3))
    lo = center - int(rng.integers(1, reach + 2))
    hi = center + int(rng.integers(1, reach + 2))
    bounded = bool(rng.random() < 0.3)

    def phi(d: int) -> float:
        if bounded and not lo <= d <= hi:
            return inf
        e = d - center
        return curv * e * e + (slopes_r * e if e > 0 else -slopes_l * e)

    return phi
