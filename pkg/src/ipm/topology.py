"""Weak-topology neighborhoods of finitely supported measures.

Bracket sets trap the support of a nearby measure in open balls around the
base atoms and bound the weight gaps; subbase sets bound a single
evaluation gap.  Refinement turns a subbase set into a bracket subset of
it, and the openness check verifies both inclusion directions of the image
of a bracket under the Dirac retraction.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from typing import Sequence

from .maxplus import LN3
from .measure import (IdempotentMeasure, MeasureError, canonicalize, dirac,
                      evaluate, measure_to_json)
from .space import TestFunction
from .subspace import classify, retract_to_dirac

# Radius cap for near-constant functions in refine_to_bracket.
L_MIN = 1e-9


@dataclass(frozen=True)
class BracketNeighborhood:
    """<mu; U_1..U_n; eps>: one open ball per atom of the base measure."""
    base: IdempotentMeasure
    radii: tuple[float, ...]
    epsilon: float
    balls: tuple[frozenset[str], ...] = field(init=False, compare=False)

    def __post_init__(self):
        if len(self.radii) != len(self.base.atoms):
            raise MeasureError("need one ball radius per base atom")
        if any(r <= 0.0 for r in self.radii):
            raise MeasureError("ball radii must be positive")
        if self.epsilon <= 0.0:
            raise MeasureError("epsilon must be positive")
        space = self.base.space
        balls = tuple(frozenset(space.ball(p, r))
                      for (p, _), r in zip(self.base.atoms, self.radii))
        object.__setattr__(self, "balls", balls)


@dataclass(frozen=True)
class SubbaseNeighborhood:
    """<mu; phi; eps>: measures whose evaluation of phi is eps-close to the base's."""
    base: IdempotentMeasure
    phi: TestFunction
    epsilon: float

    def __post_init__(self):
        if self.epsilon <= 0.0:
            raise MeasureError("epsilon must be positive")


def bracket_contains(N: BracketNeighborhood, nu: IdempotentMeasure) -> bool:
    if nu.space != N.base.space:
        raise MeasureError("measure lives on a different space")
    covered = frozenset().union(*N.balls)
    if any(p not in covered for p, _ in nu.atoms):
        return False
    for (x_i, lam_i), ball in zip(N.base.atoms, N.balls):
        gaps = [abs(lam_i - g) for p, g in nu.atoms if p in ball]
        if not gaps or max(gaps) >= N.epsilon:
            return False
    return True


def subbase_contains(N: SubbaseNeighborhood, nu: IdempotentMeasure) -> bool:
    if nu.space != N.base.space:
        raise MeasureError("measure lives on a different space")
    return abs(evaluate(N.base, N.phi) - evaluate(nu, N.phi)) < N.epsilon


def refine_to_bracket(N: SubbaseNeighborhood) -> BracketNeighborhood:
    """Bracket subset of a subbase set: radius eps/(2L) balls, half the epsilon."""
    L = max(N.phi.lipschitz, L_MIN)
    rho = N.epsilon / (2.0 * L)
    return BracketNeighborhood(base=N.base,
                               radii=(rho,) * len(N.base.atoms),
                               epsilon=N.epsilon / 2.0)


def sample_in_bracket(N: BracketNeighborhood, rng: random.Random,
                      count: int, max_tries: int = 200,
                      require_single_peak: bool = False) -> list[IdempotentMeasure]:
    """Rejection-sample measures inside a bracket.

    Perturbs atom locations within the balls and weights within epsilon,
    canonicalizes, and keeps only what bracket_contains accepts.
    """
    space = N.base.space
    out: list[IdempotentMeasure] = []
    for _ in range(count):
        for _ in range(max_tries):
            raw = []
            for (x_i, lam_i), ball in zip(N.base.atoms, N.balls):
                pts = sorted(ball)
                y = pts[rng.randrange(len(pts))]
                g = lam_i + rng.uniform(-N.epsilon, N.epsilon)
                raw.append((y, min(g, 0.0)))
            try:
                nu = canonicalize(space, raw, mode="shift")
            except MeasureError:
                continue
            if require_single_peak and not classify(nu).in_If:
                continue
            if bracket_contains(N, nu):
                out.append(nu)
                break
    return out


def openness_check(N: BracketNeighborhood, grid: Sequence[str],
                   samples: Sequence[IdempotentMeasure]) -> dict:
    """Both directions of the openness argument for the Dirac retraction.

    (forward) every sampled single-peak measure in the bracket retracts to a
    Dirac inside the top ball; (backward) for every grid point y in the top
    ball the witness measure, obtained from the base by moving the top atom
    to y, lies in the bracket and retracts to the Dirac at y.
    """
    c = classify(N.base)
    if not c.in_If:
        raise MeasureError(f"base is not single-peak: {c.violation}")
    if not 0.0 < N.epsilon < LN3:
        raise MeasureError(f"epsilon must lie in (0, ln 3), got {N.epsilon}")
    for i in range(len(N.balls)):
        for j in range(i + 1, len(N.balls)):
            common = N.balls[i] & N.balls[j]
            if common:
                raise MeasureError(
                    f"balls {i} and {j} are not disjoint (share {sorted(common)})")

    space = N.base.space
    i0 = next(i for i, (p, _) in enumerate(N.base.atoms) if p == c.top_index)
    top_ball = N.balls[i0]

    forward_failures = []
    for nu in samples:
        if not bracket_contains(N, nu):
            continue
        img = retract_to_dirac(nu)
        if img.atoms[0][0] not in top_ball:
            forward_failures.append(measure_to_json(nu))

    backward_failures = []
    checked = 0
    for y in grid:
        if y not in top_ball:
            continue
        checked += 1
        raw = [(y, 0.0)] + [(p, w) for i, (p, w) in enumerate(N.base.atoms)
                            if i != i0]
        witness = canonicalize(space, raw)
        ok = bracket_contains(N, witness) and retract_to_dirac(witness) == dirac(space, y)
        if not ok:
            backward_failures.append({"point": y,
                                      "witness": measure_to_json(witness)})
    return {
        "forward_checked": len(samples),
        "forward_failures": forward_failures,
        "backward_checked": checked,
        "backward_failures": backward_failures,
        "passed": not forward_failures and not backward_failures,
    }


# --- JSON literals --------------------------------------------------------

def bracket_from_json(doc: dict | str, space) -> BracketNeighborhood:
    """{"measure":{...}, "radii":[...], "epsilon":0.5}"""
    from .measure import measure_from_json
    if isinstance(doc, str):
        doc = json.loads(doc)
    base = measure_from_json(doc["measure"], space)
    return BracketNeighborhood(base=base, radii=tuple(doc["radii"]),
                               epsilon=float(doc["epsilon"]))


def subbase_from_json(doc: dict | str, space) -> SubbaseNeighborhood:
    """{"measure":{...}, "phi":{"values":{...},"lipschitz":1.0}, "epsilon":0.5}"""
    from .measure import measure_from_json
    from .space import build_function
    if isinstance(doc, str):
        doc = json.loads(doc)
    base = measure_from_json(doc["measure"], space)
    phi = build_function(space, doc["phi"]["values"], doc["phi"]["lipschitz"])
    return SubbaseNeighborhood(base=base, phi=phi, epsilon=float(doc["epsilon"]))
