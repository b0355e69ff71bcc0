"""Deterministic scenario generation: spaces, measures, functions, maps.

Everything is driven by an explicit random.Random so that a seed fully
determines every sampled object.
"""

from __future__ import annotations

import functools
import math
import random

from .maxplus import LN2
from .measure import IdempotentMeasure, canonicalize
from .space import (FiniteMetricSpace, SpaceMap, TestFunction, ValidationError,
                    build_space)
from .subspace import peak_threshold

# Dyadic grid step for samplers that need bit-exact float sums.
DYADIC = 2.0 ** -20


def dyadic_uniform(rng: random.Random, lo: float, hi: float) -> float:
    """Uniform draw on the dyadic grid; sums of such values round exactly."""
    n_lo = math.ceil(lo / DYADIC)
    n_hi = math.floor(hi / DYADIC)
    return (n_lo + int(rng.random() * (n_hi - n_lo + 1))) * DYADIC


def _euclidean_table(coords: list[tuple[float, ...]]) -> list[list[float]]:
    n = len(coords)
    table = [[0.0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            d = math.dist(coords[i], coords[j])
            table[i][j] = table[j][i] = d
    return table


def grid_1d(n: int) -> FiniteMetricSpace:
    """n equispaced points on [0, 1]."""
    if n < 1:
        raise ValidationError("need at least one point")
    coords = [(0.0,)] if n == 1 else [(i / (n - 1),) for i in range(n)]
    points = [(f"p{i:03d}", c) for i, c in enumerate(coords)]
    return build_space(points, _euclidean_table(coords))


def circle(n: int) -> FiniteMetricSpace:
    """n-th roots of unity with the chordal (Euclidean) metric."""
    if n < 1:
        raise ValidationError("need at least one point")
    coords = [(math.cos(2 * math.pi * i / n), math.sin(2 * math.pi * i / n))
              for i in range(n)]
    points = [(f"p{i:03d}", c) for i, c in enumerate(coords)]
    return build_space(points, _euclidean_table(coords))


def random_points(d: int, n: int, seed: int) -> FiniteMetricSpace:
    """n points uniform in [0,1]^d, fully determined by the seed."""
    if n < 1 or d < 1:
        raise ValidationError("need n >= 1 points in dimension d >= 1")
    rng = random.Random(seed)
    coords = [tuple(rng.random() for _ in range(d)) for _ in range(n)]
    points = [(f"p{i:03d}", c) for i, c in enumerate(coords)]
    return build_space(points, _euclidean_table(coords))


def generate_space(spec: str) -> FiniteMetricSpace:
    """Parse "grid_1d:64", "circle:8" or "random_points:2:10:7"."""
    parts = spec.split(":")
    kind, args = parts[0], parts[1:]
    try:
        if kind == "grid_1d" and len(args) == 1:
            return grid_1d(int(args[0]))
        if kind == "circle" and len(args) == 1:
            return circle(int(args[0]))
        if kind == "random_points" and len(args) == 3:
            return random_points(int(args[0]), int(args[1]), int(args[2]))
    except ValueError as exc:
        raise ValidationError(f"bad space spec {spec!r}: {exc}") from exc
    raise ValidationError(f"unknown space spec {spec!r}")


def random_measure(space: FiniteMetricSpace, rng: random.Random,
                   max_support: int | None = None,
                   depth: float = 3.0) -> IdempotentMeasure:
    """Random canonical measure: one zero atom, the rest dyadic in [-depth, 0]."""
    limit = min(len(space), max_support or len(space))
    k = rng.randint(1, limit)
    pts = rng.sample(space.ids, k)
    atoms = [(pts[0], 0.0)]
    atoms += [(p, dyadic_uniform(rng, -depth, 0.0)) for p in pts[1:]]
    return canonicalize(space, atoms)


def random_single_peak(space: FiniteMetricSpace, rng: random.Random,
                       max_support: int | None = None,
                       margin: float = 0.0) -> IdempotentMeasure:
    """Random member of the single-peak subspace.

    Non-top weights sit at least `margin` below the -ln(n+1) bound, so
    callers can guarantee headroom for perturbation tests.
    """
    limit = min(len(space), max_support or len(space))
    k = rng.randint(1, limit)
    pts = rng.sample(space.ids, k)
    bound = peak_threshold(k) - margin
    atoms = [(pts[0], 0.0)]
    atoms += [(p, bound - rng.uniform(0.0, 2.0)) for p in pts[1:]]
    return canonicalize(space, atoms)


def random_near_dirac(space: FiniteMetricSpace, rng: random.Random,
                      max_support: int | None = None) -> IdempotentMeasure:
    """Random measure in some basic Dirac neighborhood: non-top weights < -ln 2."""
    limit = min(len(space), max_support or len(space))
    k = rng.randint(1, limit)
    pts = rng.sample(space.ids, k)
    atoms = [(pts[0], 0.0)]
    atoms += [(p, -LN2 - 1e-6 - rng.uniform(0.0, 2.5)) for p in pts[1:]]
    return canonicalize(space, atoms)


def random_function(space: FiniteMetricSpace, rng: random.Random,
                    amp: float = 2.0, tight: bool = False,
                    dyadic: bool = True) -> TestFunction:
    """Random function with values in [-amp, amp] and a valid Lipschitz bound.

    tight=True computes the least bound (O(n^2)); otherwise a cheap valid
    bound from the minimal pairwise distance is declared.
    """
    draw = (lambda: dyadic_uniform(rng, -amp, amp)) if dyadic \
        else (lambda: rng.uniform(-amp, amp))
    vals = {p: draw() for p in space.ids}
    if tight:
        from .space import function_from_values
        return function_from_values(space, vals)
    return TestFunction(space=space,
                        values=tuple(vals[p] for p in space.ids),
                        lipschitz=2.0 * amp / _min_pairwise_distance(space))


@functools.lru_cache(maxsize=64)
def _min_pairwise_distance(space: FiniteMetricSpace) -> float:
    return min((space.dist[i][j]
                for i in range(len(space)) for j in range(i + 1, len(space))),
               default=1.0)


def random_map(domain: FiniteMetricSpace, codomain: FiniteMetricSpace,
               rng: random.Random) -> SpaceMap:
    # images are drawn from codomain.ids, so build_map validation is redundant
    table = tuple(rng.choices(codomain.ids, k=len(domain)))
    return SpaceMap(domain=domain, codomain=codomain, table=table)
