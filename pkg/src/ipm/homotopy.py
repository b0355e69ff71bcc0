"""The three explicit homotopies: fibre contraction, deformation onto the
Diracs, and the functorial lift of point-level homotopy witnesses.

The interval homotopies use the normalized log-coefficient pair, so the
endpoint identities fall out of semiring absorption rather than special
cases in the code.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

from .maxplus import ln_coeffs
from .measure import (IdempotentMeasure, MeasureError, dirac, measure_to_json,
                      pushforward, tropical_combination)
from .space import HomotopyWitness
from .subspace import classify, fibre_contains, retract_to_dirac


@dataclass(frozen=True)
class HomotopyTrack:
    """A homotopy sampled on a t-grid: one canonical measure per grid point."""
    t_grid: tuple[float, ...]
    states: tuple[IdempotentMeasure, ...]


def fibre_homotopy(mu: IdempotentMeasure, x: str, t: float) -> IdempotentMeasure:
    """Contract the fibre over x: t=0 gives the Dirac at x, t=1 gives mu."""
    if not fibre_contains(x, mu):
        raise MeasureError(f"measure is not in the fibre over {x!r}")
    a, b = ln_coeffs(t)
    return tropical_combination(a, dirac(mu.space, x), b, mu)


def deformation_homotopy(mu: IdempotentMeasure, t: float) -> IdempotentMeasure:
    """Deform a single-peak measure onto its Dirac: t=0 gives mu, t=1 the Dirac."""
    c = classify(mu)
    if not c.in_If:
        raise MeasureError(f"not single-peak: {c.violation}")
    a, b = ln_coeffs(t)
    return tropical_combination(a, mu, b, retract_to_dirac(mu))


def track(kind: str, mu: IdempotentMeasure, t_grid: Sequence[float],
          x: str | None = None) -> HomotopyTrack:
    """Sample one of the closed-form homotopies on a grid containing 0 and 1."""
    grid = tuple(float(t) for t in t_grid)
    if not grid or grid[0] != 0.0 or grid[-1] != 1.0:
        raise MeasureError("t-grid must start at 0 and end at 1")
    if any(grid[k] >= grid[k + 1] for k in range(len(grid) - 1)):
        raise MeasureError("t-grid must be strictly increasing")
    if kind == "fibre":
        if x is None:
            raise MeasureError("fibre track needs the fibre point x")
        states = tuple(fibre_homotopy(mu, x, t) for t in grid)
    elif kind == "deformation":
        states = tuple(deformation_homotopy(mu, t) for t in grid)
    else:
        raise MeasureError(f"unknown track kind {kind!r}")
    return HomotopyTrack(t_grid=grid, states=states)


def uniform_grid(n: int) -> tuple[float, ...]:
    if n < 2:
        raise MeasureError("grid needs at least the two endpoints")
    return tuple(k / (n - 1) for k in range(n))


def functor_map_at(w: HomotopyWitness, k: int,
                   mu: IdempotentMeasure) -> IdempotentMeasure:
    """Lift of the k-th witness step: relocate atoms along h_k, merge collisions."""
    if not 0 <= k < len(w.steps):
        raise MeasureError(f"step index {k} out of range")
    return pushforward(w.steps[k], mu)


def lift_witness(w: HomotopyWitness,
                 sample: Sequence[IdempotentMeasure]) -> list[list[IdempotentMeasure]]:
    """Lifted step sequence for every measure in the sample."""
    return [[functor_map_at(w, k, mu) for k in range(len(w.steps))]
            for mu in sample]


# --- JSON export ----------------------------------------------------------

def track_to_json(tr: HomotopyTrack) -> dict:
    return {"t": list(tr.t_grid),
            "states": [measure_to_json(m) for m in tr.states]}


def track_to_json_str(tr: HomotopyTrack) -> str:
    return json.dumps(track_to_json(tr), sort_keys=True, indent=2) + "\n"
