"""Membership predicates for the single-peak subspace and its four retractions.

"Single-peak" measures: exactly one atom of weight 0 (the top atom) and all
other weights at most -ln(n+1), n the support size.  The retraction onto
Dirac measures sends such a measure to the Dirac at its top atom.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Optional

from .maxplus import LN2
from .measure import (IdempotentMeasure, MeasureError, canonicalize, dirac,
                      pushforward)
from .space import FiniteMetricSpace, SpaceMap, ValidationError, build_map


@dataclass(frozen=True)
class IfClassification:
    in_In: int                     # smallest n with |supp| <= n
    in_If: bool
    top_index: Optional[str]       # the unique zero-weight atom, if in_If
    violation: Optional[str]       # reason when not in_If


def peak_threshold(n: int) -> float:
    """Weight bound -ln(n+1) for non-top atoms of a single-peak measure."""
    return -math.log(n + 1)


def classify(mu: IdempotentMeasure) -> IfClassification:
    n = len(mu.atoms)
    zeros = [p for p, w in mu.atoms if w == 0.0]
    if len(zeros) != 1:
        return IfClassification(n, False, None, "non-unique zero weight")
    bound = peak_threshold(n)
    for p, w in mu.atoms:
        if w != 0.0 and w > bound:
            return IfClassification(
                n, False, None,
                f"weight {w} at {p!r} exceeds -ln({n}+1) = {bound}")
    return IfClassification(n, True, zeros[0], None)


def retract_to_dirac(mu: IdempotentMeasure) -> IdempotentMeasure:
    """Send a single-peak measure to the Dirac at its top atom."""
    c = classify(mu)
    if not c.in_If:
        raise MeasureError(f"not single-peak: {c.violation}")
    return dirac(mu.space, c.top_index)


def fibre_contains(x: str, mu: IdempotentMeasure) -> bool:
    """True iff mu is single-peak with top atom at x."""
    c = classify(mu)
    return c.in_If and c.top_index == x


def o_delta_contains(x: str, nu: IdempotentMeasure) -> bool:
    """Basic neighborhood of a Dirac: weight 0 at x, all others < -ln 2."""
    if nu.weight(x) != 0.0:
        return False
    return all(w < -LN2 for p, w in nu.atoms if p != x)


def _o_delta_top(nu: IdempotentMeasure) -> str:
    for p, w in nu.atoms:
        if w == 0.0 and o_delta_contains(p, nu):
            return p
    raise MeasureError("measure is outside every Dirac neighborhood")


def neighborhood_retract(nu: IdempotentMeasure,
                         variant: str = "atom_clamp") -> IdempotentMeasure:
    """Retract a measure near some Dirac onto the single-peak subspace.

    paper_literal: if any non-top weight exceeds -ln(n+1), ALL non-top
    weights are set to -ln(n+1); otherwise the measure is returned as is.
    atom_clamp: each non-top weight is clamped to min(w, -ln(n+1)); this
    variant is continuous across the case boundary.
    """
    if variant not in ("paper_literal", "atom_clamp"):
        raise MeasureError(f"unknown variant {variant!r}")
    top = _o_delta_top(nu)
    bound = peak_threshold(len(nu.atoms))
    if variant == "paper_literal":
        if all(w <= bound for p, w in nu.atoms if p != top):
            return nu
        atoms = tuple((p, 0.0 if p == top else bound) for p, _ in nu.atoms)
    else:
        atoms = tuple((p, w) if p == top else (p, min(w, bound))
                      for p, w in nu.atoms)
    return IdempotentMeasure(space=nu.space, atoms=atoms)


@dataclass(frozen=True)
class AmbientRetractionData:
    """A retraction r: U -> X inside an ambient space Y, with X <= U <= Y."""
    Y: FiniteMetricSpace
    X: frozenset[str]
    U: frozenset[str]
    r: SpaceMap  # total on Y; only its values on U are used


def build_retraction_data(Y: FiniteMetricSpace, X: set[str], U: set[str],
                          r_table: dict[str, str]) -> AmbientRetractionData:
    if not X <= U:
        raise ValidationError("X must be contained in U")
    if not U <= set(Y.ids):
        raise ValidationError("U must be contained in the ambient space")
    table = dict(r_table)
    for x in X:
        table.setdefault(x, x)
        if table[x] != x:
            raise ValidationError(f"r must fix {x!r} in X")
    for u in U:
        if u not in table:
            raise ValidationError(f"r undefined at {u!r}")
        if table[u] not in X:
            raise ValidationError(f"r({u!r}) = {table[u]!r} lands outside X")
    # r is only consumed on U; pad it arbitrarily to make the point map total
    filler = sorted(X)[0]
    for u in set(Y.ids) - U:
        table.setdefault(u, filler)
    r = build_map(Y, Y, table)
    return AmbientRetractionData(Y=Y, X=frozenset(X), U=frozenset(U), r=r)


def ambient_merge(nu: IdempotentMeasure, U: frozenset[str] | set[str]) -> IdempotentMeasure:
    """Fold all mass outside U into the top atom by max; support ends inside U."""
    top = _o_delta_top(nu)
    if top not in U:
        raise MeasureError(f"top atom {top!r} lies outside U")
    raw = [(top if p not in U else p, w) for p, w in nu.atoms]
    return canonicalize(nu.space, raw)


def ambient_retract(nu: IdempotentMeasure,
                    data: AmbientRetractionData) -> IdempotentMeasure:
    """Merge mass outside U into the top atom, then push forward along r."""
    if nu.space != data.Y:
        raise MeasureError("measure does not live on the ambient space")
    merged = ambient_merge(nu, data.U)
    return pushforward(data.r, merged)


# --- JSON -----------------------------------------------------------------

def retraction_data_from_json(doc: dict | str,
                              Y: FiniteMetricSpace) -> AmbientRetractionData:
    """{"X":[ids], "U":[ids], "r":{"y2":"y1"}}"""
    if isinstance(doc, str):
        doc = json.loads(doc)
    return build_retraction_data(Y, set(doc["X"]), set(doc["U"]), dict(doc["r"]))
