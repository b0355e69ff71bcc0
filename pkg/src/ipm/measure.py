"""Idempotent probability measures with finite support.

A measure is kept in canonical form: atoms sorted by space order, pairwise
distinct points, no BOTTOM weight, and max weight exactly 0.  Structural
equality of canonical forms is measure equality.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence

from .maxplus import BOTTOM, odot, oplus
from .space import FiniteMetricSpace, SpaceMap, TestFunction


class MeasureError(ValueError):
    """Raised for non-normalizable atom lists and space mismatches."""


@dataclass(frozen=True)
class IdempotentMeasure:
    space: FiniteMetricSpace
    atoms: tuple[tuple[str, float], ...]

    def weight(self, point: str) -> float:
        """Atom weight at a point, BOTTOM if the point carries no mass."""
        for p, w in self.atoms:
            if p == point:
                return w
        return BOTTOM

    def __len__(self) -> int:
        return len(self.atoms)


def canonicalize(space: FiniteMetricSpace,
                 raw_atoms: Iterable[tuple[str, float]],
                 mode: str = "reject") -> IdempotentMeasure:
    """Merge duplicates by max, drop BOTTOM atoms, enforce max weight 0.

    mode="shift" translates all weights so the max becomes 0; mode="reject"
    errors out on non-normalized input.
    """
    merged: dict[str, float] = {}
    for p, w in raw_atoms:
        if p not in space:
            raise MeasureError(f"unknown point {p!r}")
        if w == BOTTOM:
            continue
        if w != w or w == float("inf"):
            raise MeasureError(f"invalid weight {w!r} at {p!r}")
        merged[p] = oplus(merged[p], w) if p in merged else w
    if not merged:
        raise MeasureError("empty effective support")
    top = max(merged.values())
    if top != 0.0:
        if mode == "reject":
            raise MeasureError(f"not normalized: max weight {top} != 0")
        if mode != "shift":
            raise MeasureError(f"unknown mode {mode!r}")
        merged = {p: w - top for p, w in merged.items()}
    order = space._index
    atoms = tuple(sorted(merged.items(), key=lambda pw: order[pw[0]]))
    return IdempotentMeasure(space=space, atoms=atoms)


def dirac(space: FiniteMetricSpace, x: str) -> IdempotentMeasure:
    if x not in space:
        raise MeasureError(f"unknown point {x!r}")
    return IdempotentMeasure(space=space, atoms=((x, 0.0),))


def evaluate(mu: IdempotentMeasure, phi: TestFunction) -> float:
    """mu(phi) = max_i (weight_i + phi(x_i))."""
    if phi.space is not mu.space and phi.space != mu.space:
        raise MeasureError("function lives on a different space")
    values, index = phi.values, mu.space._index
    return max(w + values[index[p]] for p, w in mu.atoms)


def verify_axioms(mu: IdempotentMeasure, phi: TestFunction, psi: TestFunction,
                  lam: float) -> dict[str, float]:
    """Residuals of the three defining properties of an idempotent measure."""
    space = mu.space
    const = TestFunction(space=space, values=(lam,) * len(space), lipschitz=0.0)
    shifted = TestFunction(space=space,
                           values=tuple(lam + v for v in phi.values),
                           lipschitz=phi.lipschitz)
    joined = TestFunction(space=space,
                          values=tuple(map(max, phi.values, psi.values)),
                          lipschitz=max(phi.lipschitz, psi.lipschitz))
    return {
        "normalization": abs(evaluate(mu, const) - lam),
        "homogeneity": abs(evaluate(mu, shifted) - odot(lam, evaluate(mu, phi))),
        "additivity": abs(evaluate(mu, joined)
                          - oplus(evaluate(mu, phi), evaluate(mu, psi))),
    }


def support(mu: IdempotentMeasure) -> set[str]:
    return {p for p, _ in mu.atoms}


def support_oracle(mu: IdempotentMeasure) -> set[str]:
    """Literal smallest-closed-carrier computation by exhaustive subset scan.

    Intersects all subsets A with mu carried on A, where "carried on A" is
    probed through evaluation alone: spike functions detect mass per point.
    Exponential in |X|; guarded at 20 points.
    """
    space = mu.space
    n = len(space)
    if n > 20:
        raise MeasureError(f"oracle limited to 20 points, space has {n}")

    # A point carries mass iff spiking it ever dominates: mu(spike_y) is
    # stable under deepening the off-spike penalty exactly when y is an atom.
    def carries(i: int) -> bool:
        vals_a = tuple(0.0 if j == i else -1e6 for j in range(n))
        vals_b = tuple(0.0 if j == i else -2e6 for j in range(n))
        ev_a = max(w + vals_a[space.index(p)] for p, w in mu.atoms)
        ev_b = max(w + vals_b[space.index(p)] for p, w in mu.atoms)
        return ev_a == ev_b

    mass_mask = 0
    for i in range(n):
        if carries(i):
            mass_mask |= 1 << i
    full = (1 << n) - 1
    inter = full
    for a in range(1 << n):
        if mass_mask & ~a & full == 0:  # all mass lies inside A
            inter &= a
    return {space.ids[i] for i in range(n) if inter >> i & 1}


def pushforward(f: SpaceMap, mu: IdempotentMeasure) -> IdempotentMeasure:
    """Relocate atoms along f, merging collisions by max."""
    if f.domain is not mu.space and f.domain != mu.space:
        raise MeasureError("map domain does not match measure space")
    table, index = f.table, f.domain._index
    return canonicalize(f.codomain, ((table[index[p]], w) for p, w in mu.atoms))


def tropical_combination(lam1: float, nu: IdempotentMeasure,
                         lam2: float, mu: IdempotentMeasure) -> IdempotentMeasure:
    """Atomwise max of lam1 (.) nu and lam2 (.) mu; needs lam1 oplus lam2 = 0."""
    if oplus(lam1, lam2) != 0.0:
        raise MeasureError(f"coefficients not normalized: max({lam1},{lam2}) != 0")
    if nu.space != mu.space:
        raise MeasureError("measures live on different spaces")
    raw = [(p, odot(lam1, w)) for p, w in nu.atoms]
    raw += [(p, odot(lam2, w)) for p, w in mu.atoms]
    return canonicalize(nu.space, raw)


def eval_gap(mu: IdempotentMeasure, nu: IdempotentMeasure,
             family: Sequence[TestFunction]) -> float:
    """max over the family of |mu(phi) - nu(phi)|; a pseudometric in (mu, nu)."""
    if not family:
        raise MeasureError("empty function family")
    return max(abs(evaluate(mu, phi) - evaluate(nu, phi)) for phi in family)


# --- JSON literals --------------------------------------------------------

def measure_to_json(mu: IdempotentMeasure) -> dict:
    return {"atoms": [[p, w] for p, w in mu.atoms]}


def measure_from_json(doc: dict | str, space: FiniteMetricSpace) -> IdempotentMeasure:
    """{"atoms":[["a",0.0],["b",-1.5]]}; weights are finite decimals."""
    if isinstance(doc, str):
        doc = json.loads(doc)
    return canonicalize(space, [(p, float(w)) for p, w in doc["atoms"]])
