"""Theorem-keyed property suites with deterministic seeded scenarios.

Each suite draws every object from a single RNG seeded by the scenario, so
a report is a pure function of its scenario and replay is exact.  Failed checks carry
replayable counterexample payloads.
"""

from __future__ import annotations

import json
import random
import time
from dataclasses import asdict, dataclass

import numpy as np

from . import __version__
from .gen import (DYADIC, dyadic_uniform, generate_space, random_function,
                  random_map, random_measure, random_near_dirac,
                  random_points, random_single_peak)
from .homotopy import (deformation_homotopy, lift_witness, track,
                       uniform_grid)
from .maxplus import (BOTTOM, LN2, LN3, ln_coeffs, ln_coeffs_literal, odot,
                      oplus)
from .measure import (canonicalize, dirac, eval_gap, evaluate,
                      measure_to_json, pushforward, support, support_oracle,
                      tropical_combination, verify_axioms)
from .space import (HomotopyWitness, build_map, build_witness, compose_maps,
                    identity_map, verify_collapse)
from .subspace import (build_retraction_data, ambient_retract, classify,
                       fibre_contains, neighborhood_retract, peak_threshold,
                       retract_to_dirac)
from .topology import (BracketNeighborhood, SubbaseNeighborhood,
                       bracket_contains, openness_check, refine_to_bracket,
                       sample_in_bracket, subbase_contains)

SUITE_NAMES = ("semiring", "axioms", "thm1_retraction", "thm1_homotopy",
               "thm1_base", "thm1_openness", "prop1", "prop2_lemma1",
               "thm2", "thm3", "support_oracle")

MAX_COUNTEREXAMPLES = 5


class ScenarioError(ValueError):
    """Bad scenario configuration (unknown suite, unusable space, ...)."""


@dataclass(frozen=True)
class Scenario:
    suite: str
    space: str = "grid_1d:16"
    trials: int = 1000
    seed: int = 42
    tolerance: float = 1e-12
    variant: str = "atom_clamp"

    def __post_init__(self):
        if self.suite not in SUITE_NAMES:
            raise ScenarioError(f"unknown suite {self.suite!r}")
        if self.trials < 1:
            raise ScenarioError("trials must be >= 1")
        if self.variant not in ("atom_clamp", "paper_literal"):
            raise ScenarioError(f"unknown variant {self.variant!r}")


class Check:
    """Pass/fail accumulator for one named property."""

    def __init__(self, name: str):
        self.name = name
        self.trials = 0
        self.failures = 0
        self.max_residual = 0.0
        self.counterexamples: list[dict] = []

    def record(self, ok: bool, residual: float = 0.0, cex: dict | None = None):
        self.trials += 1
        if residual > self.max_residual:
            self.max_residual = residual
        if not ok:
            self.failures += 1
            if cex is not None and len(self.counterexamples) < MAX_COUNTEREXAMPLES:
                self.counterexamples.append(cex)

    def as_dict(self) -> dict:
        return {"name": self.name, "trials": self.trials,
                "failures": self.failures, "max_residual": self.max_residual,
                "counterexamples": self.counterexamples}


def _cex(sc: Scenario, trial: int, check: str, detail: dict) -> dict:
    return {"suite": sc.suite, "space": sc.space, "seed": sc.seed,
            "trials": sc.trials, "tolerance": sc.tolerance,
            "variant": sc.variant, "trial": trial, "check": check,
            "detail": detail}


# --- suites ---------------------------------------------------------------

def _suite_semiring(sc: Scenario, space) -> tuple[list[Check], dict]:
    laws = Check("semiring_laws")
    coeffs = Check("ln_coeffs")
    tol = sc.tolerance
    n = sc.trials
    rng = np.random.default_rng(sc.seed)

    # dyadic operands: max and + on them are exact in binary floating point
    def draw() -> np.ndarray:
        vals = (rng.integers(0, 1 << 26, n) - (1 << 25)) * DYADIC
        vals[rng.integers(0, 64, n) == 0] = BOTTOM
        return vals

    a, b, c = draw(), draw(), draw()
    mx = np.maximum
    ok = (
        (mx(mx(a, b), c) == mx(a, mx(b, c)))
        & (mx(a, b) == mx(b, a))
        & (mx(a, a) == a)
        & (mx(a, BOTTOM) == a)
        & ((a + b) + c == a + (b + c))
        & (a + 0.0 == a)
        & (a + BOTTOM == BOTTOM)
        & (a + mx(b, c) == mx(a + b, a + c))
    )
    laws.trials = n
    bad = np.flatnonzero(~ok)
    laws.failures = int(bad.size)
    for i in bad[:MAX_COUNTEREXAMPLES]:
        laws.counterexamples.append(_cex(
            sc, int(i), "semiring_laws",
            {"a": float(a[i]), "b": float(b[i]), "c": float(c[i])}))

    # normalization / symmetry / literal-form agreement, scalar code path
    for i, t in enumerate(rng.random(max(1000, n // 16))):
        t = float(t)
        ca, cb = ln_coeffs(t)
        sa, sb = ln_coeffs(1.0 - t)
        la, lb = ln_coeffs_literal(t)
        res = max(abs(ca - sb), abs(cb - sa), abs(ca - la), abs(cb - lb))
        ok = max(ca, cb) == 0.0 and res <= tol
        coeffs.record(ok, residual=res,
                      cex=None if ok else _cex(sc, i, "ln_coeffs", {"t": t}))
    # endpoints, exactly
    for t, want in ((0.0, (0.0, BOTTOM)), (1.0, (BOTTOM, 0.0))):
        coeffs.record(ln_coeffs(t) == want,
                      cex=_cex(sc, -1, "ln_coeffs", {"t": t}))
    return [laws, coeffs], {}


def _suite_axioms(sc: Scenario, space) -> tuple[list[Check], dict]:
    if len(space) > 20:
        raise ScenarioError("axioms suite expects a space with at most 20 points")
    axioms = Check("measure_axioms")
    affinity = Check("combination_affinity")
    functor_id = Check("pushforward_identity")
    functor_comp = Check("pushforward_composition")
    gap_metric = Check("eval_gap_pseudometric")
    tol = sc.tolerance
    ident = identity_map(space)
    rng = random.Random(sc.seed)
    for i in range(sc.trials):
        mu = random_measure(space, rng)
        phi = random_function(space, rng)
        psi = random_function(space, rng)
        lam = dyadic_uniform(rng, -4.0, 4.0)
        res = max(verify_axioms(mu, phi, psi, lam).values())
        axioms.record(res <= tol, residual=res,
                      cex=None if res <= tol else _cex(
                          sc, i, "measure_axioms",
                          {"mu": measure_to_json(mu), "lambda": lam}))

        nu = random_measure(space, rng)
        u = dyadic_uniform(rng, -3.0, 0.0)
        l1, l2 = (0.0, u) if rng.getrandbits(1) else (u, 0.0)
        comb = tropical_combination(l1, nu, l2, mu)
        want = oplus(odot(l1, evaluate(nu, phi)), odot(l2, evaluate(mu, phi)))
        res = abs(evaluate(comb, phi) - want)
        affinity.record(res == 0.0, residual=res,
                        cex=None if res == 0.0 else _cex(
                            sc, i, "combination_affinity",
                            {"l1": l1, "l2": l2, "mu": measure_to_json(mu),
                             "nu": measure_to_json(nu)}))

        f = random_map(space, space, rng)
        g = random_map(space, space, rng)
        ok = pushforward(ident, mu) == mu
        functor_id.record(ok, cex=None if ok else _cex(
            sc, i, "pushforward_identity", {"mu": measure_to_json(mu)}))
        ok = pushforward(compose_maps(f, g), mu) == pushforward(g, pushforward(f, mu))
        functor_comp.record(ok, cex=None if ok else _cex(
            sc, i, "pushforward_composition", {"mu": measure_to_json(mu),
                                               "f": list(f.table),
                                               "g": list(g.table)}))

        rho = random_measure(space, rng)
        fam = [phi, psi]
        d_mn, d_nm = eval_gap(mu, nu, fam), eval_gap(nu, mu, fam)
        d_mr, d_rn = eval_gap(mu, rho, fam), eval_gap(rho, nu, fam)
        ok = (d_mn == d_nm and d_mn <= d_mr + d_rn + tol
              and eval_gap(mu, mu, fam) == 0.0)
        gap_metric.record(ok, cex=None if ok else _cex(
            sc, i, "eval_gap_pseudometric", {"mu": measure_to_json(mu),
                                             "nu": measure_to_json(nu),
                                             "rho": measure_to_json(rho)}))
    return [axioms, affinity, functor_id, functor_comp, gap_metric], {}


def _suite_support_oracle(sc: Scenario, space) -> tuple[list[Check], dict]:
    agree = Check("support_equals_oracle")
    rng = random.Random(sc.seed)
    for i in range(sc.trials):
        n = rng.randint(3, 12)
        sp = random_points(2, n, seed=rng.getrandbits(32))
        mu = random_measure(sp, rng)
        ok = support(mu) == support_oracle(mu)
        agree.record(ok, cex=None if ok else _cex(
            sc, i, "support_equals_oracle", {"mu": measure_to_json(mu),
                                             "n_points": n}))
    return [agree], {}


def _suite_thm1_retraction(sc: Scenario, space) -> tuple[list[Check], dict]:
    idem = Check("retraction_idempotent")
    fixes = Check("retraction_fixes_diracs")
    partition = Check("fibre_partition")
    closure = Check("subfunctor_closure")
    interval = Check("interval_stays_in_fibre")
    rng = random.Random(sc.seed)
    for i in range(sc.trials):
        mu = random_single_peak(space, rng, max_support=8)
        r1 = retract_to_dirac(mu)
        ok = retract_to_dirac(r1) == r1
        idem.record(ok, cex=None if ok else _cex(
            sc, i, "retraction_idempotent", {"mu": measure_to_json(mu)}))
        x = space.ids[rng.randrange(len(space))]
        ok = retract_to_dirac(dirac(space, x)) == dirac(space, x)
        fixes.record(ok, cex=None if ok else _cex(
            sc, i, "retraction_fixes_diracs", {"x": x}))
        hits = [p for p, _ in mu.atoms if fibre_contains(p, mu)]
        ok = len(hits) == 1 and hits[0] == r1.atoms[0][0]
        partition.record(ok, cex=None if ok else _cex(
            sc, i, "fibre_partition", {"mu": measure_to_json(mu)}))
        f = random_map(space, space, rng)
        ok = classify(pushforward(f, mu)).in_If
        closure.record(ok, cex=None if ok else _cex(
            sc, i, "subfunctor_closure", {"mu": measure_to_json(mu),
                                          "f": list(f.table)}))
        top = r1.atoms[0][0]
        u = rng.uniform(-3.0, 0.0)
        l1, l2 = (0.0, u) if rng.getrandbits(1) else (u, 0.0)
        comb = tropical_combination(l1, dirac(space, top), l2, mu)
        ok = fibre_contains(top, comb)
        interval.record(ok, cex=None if ok else _cex(
            sc, i, "interval_stays_in_fibre", {"mu": measure_to_json(mu),
                                               "l1": l1, "l2": l2}))
    return [idem, fixes, partition, closure, interval], {}


def _homotopy_plot(tr) -> dict:
    """(t, weight) arrays per atom plus the consecutive evaluation-gap curve."""
    pts = sorted({p for st in tr.states for p, _ in st.atoms})
    series = {p: [st.weight(p) for st in tr.states] for p in pts}
    return {"t": list(tr.t_grid), "weights": series}


def _suite_thm1_homotopy(sc: Scenario, space) -> tuple[list[Check], dict]:
    endpoints = Check("fibre_homotopy_endpoints")
    member = Check("fibre_membership_along_track")
    plateau = Check("fibre_plateau_second_half")
    grid = uniform_grid(101)
    plot = None
    rng = random.Random(sc.seed)
    for i in range(sc.trials):
        mu = random_single_peak(space, rng, max_support=6)
        x = classify(mu).top_index
        tr = track("fibre", mu, grid, x=x)
        ok = tr.states[0] == dirac(space, x) and tr.states[-1] == mu
        endpoints.record(ok, cex=None if ok else _cex(
            sc, i, "fibre_homotopy_endpoints", {"mu": measure_to_json(mu)}))
        ok = all(fibre_contains(x, st) for st in tr.states)
        member.record(ok, cex=None if ok else _cex(
            sc, i, "fibre_membership_along_track", {"mu": measure_to_json(mu)}))
        ok = all(st == mu for t, st in zip(tr.t_grid, tr.states) if t >= 0.5)
        plateau.record(ok, cex=None if ok else _cex(
            sc, i, "fibre_plateau_second_half", {"mu": measure_to_json(mu)}))
        if plot is None and len(mu) > 1:
            plot = _homotopy_plot(tr)
    return [endpoints, member, plateau], {"plot": plot} if plot else {}


def _suite_prop1(sc: Scenario, space) -> tuple[list[Check], dict]:
    endpoints = Check("deformation_endpoints")
    strong = Check("strong_deformation_fixes_diracs")
    plateau = Check("deformation_plateau_first_half")
    member = Check("single_peak_along_track")
    grid = uniform_grid(101)
    plot = None
    rng = random.Random(sc.seed)
    for i in range(sc.trials):
        mu = random_single_peak(space, rng, max_support=6)
        tr = track("deformation", mu, grid)
        r_mu = retract_to_dirac(mu)
        ok = tr.states[0] == mu and tr.states[-1] == r_mu
        endpoints.record(ok, cex=None if ok else _cex(
            sc, i, "deformation_endpoints", {"mu": measure_to_json(mu)}))
        ok = all(st == mu for t, st in zip(tr.t_grid, tr.states) if t <= 0.5)
        plateau.record(ok, cex=None if ok else _cex(
            sc, i, "deformation_plateau_first_half", {"mu": measure_to_json(mu)}))
        ok = all(classify(st).in_If for st in tr.states)
        member.record(ok, cex=None if ok else _cex(
            sc, i, "single_peak_along_track", {"mu": measure_to_json(mu)}))
        x = space.ids[rng.randrange(len(space))]
        dx = dirac(space, x)
        ok = all(deformation_homotopy(dx, t) == dx for t in grid)
        strong.record(ok, cex=None if ok else _cex(
            sc, i, "strong_deformation_fixes_diracs", {"x": x}))
        if plot is None and len(mu) > 1:
            plot = _homotopy_plot(tr)
    return [endpoints, strong, plateau, member], {"plot": plot} if plot else {}


def _suite_thm1_base(sc: Scenario, space) -> tuple[list[Check], dict]:
    sound = Check("bracket_refines_subbase")
    base_member = Check("base_in_own_bracket")
    samples_per_config = 100
    rng = random.Random(sc.seed)
    for i in range(sc.trials):
        mu = random_measure(space, rng, max_support=5)
        phi = random_function(space, rng, tight=True)
        eps = rng.uniform(0.2, 1.0)
        sub = SubbaseNeighborhood(base=mu, phi=phi, epsilon=eps)
        bracket = refine_to_bracket(sub)
        base_member.record(bracket_contains(bracket, mu),
                           cex=_cex(sc, i, "base_in_own_bracket",
                                    {"mu": measure_to_json(mu)}))
        for nu in sample_in_bracket(bracket, rng, samples_per_config):
            ok = subbase_contains(sub, nu)
            sound.record(ok, cex=None if ok else _cex(
                sc, i, "bracket_refines_subbase",
                {"mu": measure_to_json(mu), "nu": measure_to_json(nu),
                 "epsilon": eps, "phi_values": list(phi.values),
                 "lipschitz": phi.lipschitz}))
    return [sound, base_member], {}


def _pick_separated_atoms(space, rng: random.Random, k: int,
                          min_sep: float) -> list[str] | None:
    for _ in range(200):
        pts = rng.sample(space.ids, k)
        if all(space.d(pts[i], pts[j]) >= min_sep
               for i in range(k) for j in range(i + 1, k)):
            return pts
    return None


def _suite_thm1_openness(sc: Scenario, space) -> tuple[list[Check], dict]:
    open_ok = Check("openness_both_directions")
    grid_size = Check("witness_grid_at_least_11")
    min_sep = 0.36
    rng = random.Random(sc.seed)
    for i in range(sc.trials):
        k = rng.randint(2, 3) if len(space) >= 32 else 2
        pts = _pick_separated_atoms(space, rng, k, min_sep)
        if pts is None:
            raise ScenarioError(
                "space too small or too clustered for disjoint-ball configurations")
        bound = peak_threshold(k)
        atoms = [(pts[0], 0.0)]
        atoms += [(p, bound - 1.2 - rng.uniform(0.0, 0.8)) for p in pts[1:]]
        base = canonicalize(space, atoms)
        radius = min_sep / 2.01
        eps = rng.uniform(0.2, min(1.0, LN3 - 1e-6))
        bracket = BracketNeighborhood(base=base, radii=(radius,) * k,
                                      epsilon=eps)
        samples = sample_in_bracket(bracket, rng, 20, require_single_peak=True)
        top = classify(base).top_index
        grid = sorted(space.ball(top, radius))
        report = openness_check(bracket, grid, samples)
        grid_size.record(report["backward_checked"] >= 11,
                         cex=None if report["backward_checked"] >= 11 else _cex(
                             sc, i, "witness_grid_at_least_11",
                             {"checked": report["backward_checked"]}))
        open_ok.record(report["passed"], cex=None if report["passed"] else _cex(
            sc, i, "openness_both_directions",
            {"base": measure_to_json(base), "epsilon": eps,
             "forward_failures": report["forward_failures"],
             "backward_failures": report["backward_failures"]}))
    return [open_ok, grid_size], {}


def _suite_prop2_lemma1(sc: Scenario, space) -> tuple[list[Check], dict]:
    into = Check("retract_lands_in_single_peak")
    ident = Check("identity_on_single_peak")
    agree = Check("variants_agree_single_nontop")
    lip = Check("atom_clamp_weight_stability")
    witness = Check("paper_literal_discontinuity_witness")
    tol = sc.tolerance
    rng = random.Random(sc.seed)
    for i in range(sc.trials):
        nu = random_near_dirac(space, rng, max_support=6)
        for variant in ("atom_clamp", "paper_literal"):
            out = neighborhood_retract(nu, variant)
            ok = classify(out).in_If
            into.record(ok, cex=None if ok else _cex(
                sc, i, "retract_lands_in_single_peak",
                {"nu": measure_to_json(nu), "variant": variant}))
        mu = random_single_peak(space, rng, max_support=6)
        ok = (neighborhood_retract(mu, "atom_clamp") == mu
              and neighborhood_retract(mu, "paper_literal") == mu)
        ident.record(ok, cex=None if ok else _cex(
            sc, i, "identity_on_single_peak", {"mu": measure_to_json(mu)}))
        if len(nu) <= 2:
            ok = (neighborhood_retract(nu, "atom_clamp")
                  == neighborhood_retract(nu, "paper_literal"))
            agree.record(ok, cex=None if ok else _cex(
                sc, i, "variants_agree_single_nontop",
                {"nu": measure_to_json(nu)}))
        # 1-Lipschitz weight stability of the clamping variant
        eta = 1e-2 if rng.getrandbits(1) else 1e-3
        top = classify(neighborhood_retract(nu, "atom_clamp")).top_index
        perturbed = canonicalize(space, [
            (p, w if p == top else min(-LN2 - 1e-9, w + rng.uniform(-eta, eta)))
            for p, w in nu.atoms])
        out_a = neighborhood_retract(nu, "atom_clamp")
        out_b = neighborhood_retract(perturbed, "atom_clamp")
        res = max(abs(out_a.weight(p) - out_b.weight(p)) for p, _ in out_a.atoms)
        ok = res <= eta + tol
        lip.record(ok, residual=res, cex=None if ok else _cex(
            sc, i, "atom_clamp_weight_stability",
            {"nu": measure_to_json(nu), "eta": eta}))

    # documented finding: the literal two-case formula jumps across the
    # case boundary as soon as a third atom sits strictly below the bound
    if len(space) >= 3:
        a, b, c = space.ids[:3]
        bound3 = peak_threshold(3)
        h = 1e-6
        nu_hi = canonicalize(space, [(a, 0.0), (b, bound3 + h), (c, -2.0)])
        nu_lo = canonicalize(space, [(a, 0.0), (b, bound3 - h), (c, -2.0)])
        out_hi = neighborhood_retract(nu_hi, "paper_literal")
        out_lo = neighborhood_retract(nu_lo, "paper_literal")
        jump = max(abs(out_hi.weight(p) - out_lo.weight(p)) for p in (a, b, c))
        found = jump > 0.5
        witness.record(found, residual=jump, cex=None if found else _cex(
            sc, -1, "paper_literal_discontinuity_witness", {"jump": jump}))
        extras = {"discontinuity_witness": {
            "input_gap": 2 * h,
            "output_gap": jump,
            "nu_above_boundary": measure_to_json(nu_hi),
            "nu_below_boundary": measure_to_json(nu_lo),
            "retract_above": measure_to_json(out_hi),
            "retract_below": measure_to_json(out_lo),
        }}
    else:
        extras = {}
    return [into, ident, agree, lip, witness], extras


def _contraction_witness(space, rng: random.Random, steps: int) -> HomotopyWitness:
    """Straight-line contraction of the whole space onto a random point,
    discretized by index interpolation."""
    n = len(space)
    target = rng.randrange(n)
    maps = []
    for k in range(steps + 1):
        s = k / steps
        table = {}
        for i, p in enumerate(space.ids):
            j = round(i + (target - i) * s)
            table[p] = space.ids[j]
        maps.append(build_map(space, space, table))
    bound = max(space.d(maps[k](p), maps[k + 1](p))
                for k in range(steps) for p in space.ids)
    return build_witness(maps, max(bound, 1e-12))


def _suite_thm2(sc: Scenario, space) -> tuple[list[Check], dict]:
    endpoints = Check("lift_endpoints")
    weights = Check("weights_preserved_up_to_collisions")
    displacement = Check("step_displacement_bounded")
    collapse = Check("collapse_lifts_to_common_dirac")
    naturality = Check("dirac_naturality")
    K = 10
    rng = random.Random(sc.seed)
    for i in range(sc.trials):
        w = _contraction_witness(space, rng, K)
        mus = [random_measure(space, rng, max_support=6) for _ in range(3)]
        tracks = lift_witness(w, mus)
        for mu, tr in zip(mus, tracks):
            ok = (tr[0] == pushforward(w.steps[0], mu)
                  and tr[-1] == pushforward(w.steps[-1], mu))
            endpoints.record(ok, cex=None if ok else _cex(
                sc, i, "lift_endpoints", {"mu": measure_to_json(mu)}))
            ok = True
            for k, st in enumerate(tr):
                for q, wt in st.atoms:
                    sources = [wv for p, wv in mu.atoms if w.steps[k](p) == q]
                    if not sources or max(sources) != wt:
                        ok = False
            weights.record(ok, cex=None if ok else _cex(
                sc, i, "weights_preserved_up_to_collisions",
                {"mu": measure_to_json(mu)}))
            ok = all(space.d(w.steps[k](p), w.steps[k + 1](p))
                     <= w.step_bound + 1e-12
                     for k in range(K) for p, _ in mu.atoms)
            displacement.record(ok, cex=None if ok else _cex(
                sc, i, "step_displacement_bounded", {"mu": measure_to_json(mu)}))
        ok = verify_collapse(w) and len(
            {tr[-1].atoms for tr in tracks}) == 1 and len(tracks[0][-1]) == 1
        collapse.record(ok, cex=None if ok else _cex(
            sc, i, "collapse_lifts_to_common_dirac", {"trial": i}))
        x = space.ids[rng.randrange(len(space))]
        dx = dirac(space, x)
        ok = all(pushforward(w.steps[k], dx) == dirac(space, w.steps[k](x))
                 for k in range(K + 1))
        naturality.record(ok, cex=None if ok else _cex(
            sc, i, "dirac_naturality", {"x": x}))
    return [endpoints, weights, displacement, collapse, naturality], {}


def _suite_thm3(sc: Scenario, space) -> tuple[list[Check], dict]:
    ident = Check("identity_on_single_peak_over_X")
    image = Check("image_in_single_peak_over_X")
    rng = random.Random(sc.seed)
    for i in range(sc.trials):
        n = rng.randint(4, 15)
        Y = random_points(2, n, seed=rng.getrandbits(32))
        ids = list(Y.ids)
        x_size = rng.randint(1, n - 1)
        X = set(rng.sample(ids, x_size))
        extra = [p for p in ids if p not in X]
        U = X | set(rng.sample(extra, rng.randint(0, len(extra) - 1) if len(extra) > 1 else 0))
        r_table = {u: (u if u in X else min(X, key=lambda x: Y.d(u, x)))
                   for u in U}
        data = build_retraction_data(Y, X, U, r_table)

        x_space_ids = sorted(X, key=Y.index)
        mu_atoms = _single_peak_atoms(rng, x_space_ids)
        mu = canonicalize(Y, mu_atoms)
        ok = ambient_retract(mu, data) == mu
        ident.record(ok, cex=None if ok else _cex(
            sc, i, "identity_on_single_peak_over_X",
            {"mu": measure_to_json(mu), "X": sorted(X), "U": sorted(U)}))

        u_sorted = sorted(U, key=Y.index)
        nu_atoms = _single_peak_atoms(rng, ids, top_pool=u_sorted)
        nu = canonicalize(Y, nu_atoms)
        out = ambient_retract(nu, data)
        c = classify(out)
        ok = c.in_If and support(out) <= X
        image.record(ok, cex=None if ok else _cex(
            sc, i, "image_in_single_peak_over_X",
            {"nu": measure_to_json(nu), "X": sorted(X), "U": sorted(U),
             "out": measure_to_json(out)}))
    return [ident, image], {}


def _single_peak_atoms(rng: random.Random, pool: list[str],
                       top_pool: list[str] | None = None) -> list[tuple[str, float]]:
    k = rng.randint(1, min(6, len(pool)))
    pts = rng.sample(pool, k)
    if top_pool is not None and pts[0] not in top_pool:
        pts[0] = top_pool[rng.randrange(len(top_pool))]
        pts = [pts[0]] + [p for p in pts[1:] if p != pts[0]]
        k = len(pts)
    bound = peak_threshold(k)
    return [(pts[0], 0.0)] + [(p, bound - rng.uniform(0.0, 2.0)) for p in pts[1:]]


_SUITES = {
    "semiring": _suite_semiring,
    "axioms": _suite_axioms,
    "support_oracle": _suite_support_oracle,
    "thm1_retraction": _suite_thm1_retraction,
    "thm1_homotopy": _suite_thm1_homotopy,
    "thm1_base": _suite_thm1_base,
    "thm1_openness": _suite_thm1_openness,
    "prop1": _suite_prop1,
    "prop2_lemma1": _suite_prop2_lemma1,
    "thm2": _suite_thm2,
    "thm3": _suite_thm3,
}


def run_suite(sc: Scenario) -> dict:
    """Execute a suite; the report is a pure function of the scenario."""
    start = time.perf_counter()
    space = generate_space(sc.space)
    checks, extras = _SUITES[sc.suite](sc, space)
    report = {
        "artifact_version": __version__,
        "scenario": asdict(sc),
        "checks": [c.as_dict() for c in checks],
        "passed": all(c.failures == 0 for c in checks),
        "wall_time_s": time.perf_counter() - start,
    }
    report.update(extras)
    return report


# wall time is the one field a rerun cannot reproduce; it stays off disk
VOLATILE_KEYS = ("wall_time_s",)


def report_to_json(report: dict) -> str:
    stable = {k: v for k, v in report.items() if k not in VOLATILE_KEYS}
    return json.dumps(stable, sort_keys=True, indent=2) + "\n"


def emit_report(report: dict, path) -> None:
    with open(path, "w") as fh:
        fh.write(report_to_json(report))


def replay_counterexample(cex: dict) -> dict:
    """Re-run the scenario recorded in a counterexample payload.

    Returns the fresh report plus whether the same (check, trial) failure
    reappeared with an identical payload.
    """
    sc = Scenario(suite=cex["suite"], space=cex["space"], trials=cex["trials"],
                  seed=cex["seed"], tolerance=cex["tolerance"],
                  variant=cex["variant"])
    report = run_suite(sc)
    reproduced = False
    for check in report["checks"]:
        for fresh in check["counterexamples"]:
            if (fresh["check"] == cex["check"] and fresh["trial"] == cex["trial"]
                    and fresh["detail"] == cex["detail"]):
                reproduced = True
    return {"reproduced": reproduced, "report": report}
