"""Finite metric spaces, Lipschitz test functions, point maps and homotopy witnesses.

A finite metric space stands in for a compact: an ordered list of point ids
with an exhaustively validated distance table.  Continuity statements are
carried quantitatively by Lipschitz bounds (functions) and per-step
displacement bounds (homotopy witnesses).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

# Slack for metric / Lipschitz checks: distance tables computed from
# coordinates can miss exact identities by a few ulps.
METRIC_TOL = 1e-9


class ValidationError(ValueError):
    """Raised when a space, function, map or witness violates its axioms."""


@dataclass(frozen=True)
class FiniteMetricSpace:
    ids: tuple[str, ...]
    dist: tuple[tuple[float, ...], ...]
    coords: tuple[tuple[float, ...], ...] | None = None
    _index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_index", {p: i for i, p in enumerate(self.ids)})

    def __len__(self) -> int:
        return len(self.ids)

    def __contains__(self, point: str) -> bool:
        return point in self._index

    def index(self, point: str) -> int:
        try:
            return self._index[point]
        except KeyError:
            raise ValidationError(f"unknown point {point!r}") from None

    def d(self, x: str, y: str) -> float:
        return self.dist[self.index(x)][self.index(y)]

    def ball(self, center: str, radius: float) -> set[str]:
        """Open metric ball: strict inequality, boundary excluded."""
        row = self.dist[self.index(center)]
        return {p for p, dv in zip(self.ids, row) if dv < radius}


def build_space(points: Sequence[tuple[str, Sequence[float] | None]],
                metric: Sequence[Sequence[float]]) -> FiniteMetricSpace:
    """Validate and build a space; reports every violated axiom instance."""
    if not points:
        raise ValidationError("empty point list")
    ids = tuple(p for p, _ in points)
    if len(set(ids)) != len(ids):
        raise ValidationError("duplicate point ids")
    n = len(ids)
    if len(metric) != n or any(len(row) != n for row in metric):
        raise ValidationError(f"metric table must be {n}x{n}")

    errors = []
    for i in range(n):
        if metric[i][i] != 0.0:
            errors.append(f"d({ids[i]},{ids[i]}) = {metric[i][i]} != 0")
        for j in range(i + 1, n):
            dij, dji = metric[i][j], metric[j][i]
            if dij != dji:
                errors.append(f"d({ids[i]},{ids[j]})={dij} != d({ids[j]},{ids[i]})={dji}")
            if dij <= 0.0:
                errors.append(f"d({ids[i]},{ids[j]}) = {dij} not positive for distinct points")
    for i in range(n):
        for j in range(n):
            dij = metric[i][j]
            for k in range(n):
                if dij > metric[i][k] + metric[k][j] + METRIC_TOL:
                    errors.append(
                        f"triangle violated: d({ids[i]},{ids[j]})={dij} > "
                        f"d({ids[i]},{ids[k]})+d({ids[k]},{ids[j]})="
                        f"{metric[i][k] + metric[k][j]}")
    if errors:
        raise ValidationError("; ".join(errors))

    dist = tuple(tuple(float(v) for v in row) for row in metric)
    cs = None
    if all(c is not None for _, c in points):
        cs = tuple(tuple(float(v) for v in c) for _, c in points)
    return FiniteMetricSpace(ids=ids, dist=dist, coords=cs)


@dataclass(frozen=True)
class TestFunction:
    """A real function on the points of a space with a declared Lipschitz bound."""
    space: FiniteMetricSpace
    values: tuple[float, ...]
    lipschitz: float

    def __call__(self, point: str) -> float:
        return self.values[self.space.index(point)]


def build_function(space: FiniteMetricSpace, values: Mapping[str, float],
                   lipschitz: float, validate: bool = True) -> TestFunction:
    vals = tuple(float(values[p]) for p in space.ids)
    if lipschitz < 0.0:
        raise ValidationError("Lipschitz bound must be >= 0")
    if validate:
        n = len(space)
        for i in range(n):
            for j in range(i + 1, n):
                gap = abs(vals[i] - vals[j])
                if gap > lipschitz * space.dist[i][j] + METRIC_TOL:
                    raise ValidationError(
                        f"|f({space.ids[i]})-f({space.ids[j]})| = {gap} exceeds "
                        f"L*d = {lipschitz * space.dist[i][j]}")
    return TestFunction(space=space, values=vals, lipschitz=float(lipschitz))


def function_from_values(space: FiniteMetricSpace,
                         values: Mapping[str, float]) -> TestFunction:
    """Build a function with its tight Lipschitz constant computed from the table."""
    vals = tuple(float(values[p]) for p in space.ids)
    lip = 0.0
    n = len(space)
    for i in range(n):
        for j in range(i + 1, n):
            lip = max(lip, abs(vals[i] - vals[j]) / space.dist[i][j])
    return TestFunction(space=space, values=vals, lipschitz=lip)


@dataclass(frozen=True)
class SpaceMap:
    """A total map between the point sets of two spaces."""
    domain: FiniteMetricSpace
    codomain: FiniteMetricSpace
    table: tuple[str, ...]  # image of domain.ids[i]

    def __call__(self, point: str) -> str:
        return self.table[self.domain.index(point)]


def build_map(domain: FiniteMetricSpace, codomain: FiniteMetricSpace,
              table: Mapping[str, str]) -> SpaceMap:
    images = []
    for p in domain.ids:
        if p not in table:
            raise ValidationError(f"map undefined at {p!r}")
        q = table[p]
        if q not in codomain:
            raise ValidationError(f"image {q!r} of {p!r} not in codomain")
        images.append(q)
    return SpaceMap(domain=domain, codomain=codomain, table=tuple(images))


def identity_map(space: FiniteMetricSpace) -> SpaceMap:
    return SpaceMap(domain=space, codomain=space, table=space.ids)


def compose_maps(f: SpaceMap, g: SpaceMap) -> SpaceMap:
    """g after f."""
    if f.codomain is not g.domain and f.codomain != g.domain:
        raise ValidationError("codomain of f does not match domain of g")
    return SpaceMap(domain=f.domain, codomain=g.codomain,
                    table=tuple(g(q) for q in f.table))


@dataclass(frozen=True)
class HomotopyWitness:
    """A homotopy discretized as a step sequence h_0, ..., h_K with a step bound.

    Consecutive steps move every point by at most step_bound in the codomain.
    """
    steps: tuple[SpaceMap, ...]
    step_bound: float

    @property
    def domain(self) -> FiniteMetricSpace:
        return self.steps[0].domain

    @property
    def codomain(self) -> FiniteMetricSpace:
        return self.steps[0].codomain


def build_witness(steps: Sequence[SpaceMap], step_bound: float) -> HomotopyWitness:
    if not steps:
        raise ValidationError("witness needs at least one step")
    dom, cod = steps[0].domain, steps[0].codomain
    for s in steps[1:]:
        if s.domain != dom or s.codomain != cod:
            raise ValidationError("witness steps must share domain and codomain")
    for k in range(len(steps) - 1):
        for p in dom.ids:
            move = cod.d(steps[k](p), steps[k + 1](p))
            if move > step_bound + METRIC_TOL:
                raise ValidationError(
                    f"step {k}->{k + 1} moves {p!r} by {move} > bound {step_bound}")
    return HomotopyWitness(steps=tuple(steps), step_bound=float(step_bound))


def verify_collapse(w: HomotopyWitness) -> bool:
    """True iff the witness starts at the identity and ends at a constant map."""
    first, last = w.steps[0], w.steps[-1]
    if first.domain != first.codomain:
        return False
    if any(first(p) != p for p in first.domain.ids):
        return False
    return len(set(last.table)) == 1


# --- JSON ingestion -------------------------------------------------------

def space_from_json(doc: dict | str) -> FiniteMetricSpace:
    """{"points":[{"id":..., "coords":[...]}], "metric":[[...]]}"""
    if isinstance(doc, str):
        doc = json.loads(doc)
    points = [(p["id"], p.get("coords")) for p in doc["points"]]
    return build_space(points, doc["metric"])


def map_from_json(doc: dict | str, domain: FiniteMetricSpace,
                  codomain: FiniteMetricSpace) -> SpaceMap:
    """{"table":{"a":"p", ...}}"""
    if isinstance(doc, str):
        doc = json.loads(doc)
    return build_map(domain, codomain, doc["table"])


def witness_from_json(doc: dict | str, domain: FiniteMetricSpace,
                      codomain: FiniteMetricSpace) -> HomotopyWitness:
    """{"steps":[{"table":...}, ...], "step_bound": 0.1}"""
    if isinstance(doc, str):
        doc = json.loads(doc)
    steps = [build_map(domain, codomain, s["table"]) for s in doc["steps"]]
    return build_witness(steps, doc["step_bound"])


def discrete_space(ids: Iterable[str]) -> FiniteMetricSpace:
    """Space with the discrete metric; fallback when only point ids are known."""
    ids = tuple(ids)
    metric = [[0.0 if i == j else 1.0 for j in range(len(ids))]
              for i in range(len(ids))]
    return build_space([(p, None) for p in ids], metric)
