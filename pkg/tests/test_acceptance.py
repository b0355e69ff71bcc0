"""Acceptance gate: every release criterion at its stated scale and budget.

Each criterion prints one pass/fail line.  Budgets are wall-clock seconds
on a commodity desktop; the whole module targets well under two minutes.
"""

import random
import time

from ipm.gen import random_map, random_points, random_single_peak
from ipm.harness import Scenario, run_suite
from ipm.measure import pushforward
from ipm.space import compose_maps, identity_map
from ipm.subspace import classify


def _report_line(num, label, ok, elapsed, budget):
    mark = "PASS" if ok else "FAIL"
    print(f"[{mark}] criterion {num:2d} ({label}): "
          f"{elapsed:.2f}s (budget {budget:.0f}s)")


def _run(num, label, scenario, budget, extra_ok=None):
    start = time.perf_counter()
    report = run_suite(scenario)
    elapsed = time.perf_counter() - start
    ok = report["passed"] and elapsed < budget
    if extra_ok is not None:
        ok = ok and extra_ok(report)
    _report_line(num, label, ok, elapsed, budget)
    assert report["passed"], [c for c in report["checks"] if c["failures"]]
    assert elapsed < budget
    if extra_ok is not None:
        assert extra_ok(report)
    return report


def test_criterion_01_semiring():
    _run(1, "semiring laws, 1e5 triples",
         Scenario(suite="semiring", trials=100_000, seed=42), budget=1.0)


def test_criterion_02_axioms():
    report = _run(2, "measure axioms, 1e4 instances",
                  Scenario(suite="axioms", space="random_points:3:20:7",
                           trials=10_000, seed=42), budget=5.0)
    axioms = next(c for c in report["checks"] if c["name"] == "measure_axioms")
    assert axioms.get("max_residual") <= 1e-12


def test_criterion_03_support_oracle():
    _run(3, "support oracle, 1e3 measures",
         Scenario(suite="support_oracle", trials=1_000, seed=42), budget=30.0)


def test_criterion_04_functoriality_and_closure():
    start = time.perf_counter()
    rng = random.Random(42)
    space = random_points(2, 12, seed=3)
    ident = identity_map(space)
    for _ in range(10_000):
        mu = random_single_peak(space, rng, max_support=6)
        f = random_map(space, space, rng)
        g = random_map(space, space, rng)
        assert pushforward(ident, mu) == mu
        assert pushforward(compose_maps(f, g), mu) == \
            pushforward(g, pushforward(f, mu))
        assert classify(pushforward(f, mu)).in_If
    elapsed = time.perf_counter() - start
    _report_line(4, "functoriality + subfunctor closure, 1e4", True,
                 elapsed, 5.0)
    assert elapsed < 5.0


def test_criterion_05_retraction():
    _run(5, "Dirac retraction, 1e4 instances",
         Scenario(suite="thm1_retraction", trials=10_000, seed=42), budget=2.0)


def test_criterion_06_fibre_homotopy():
    _run(6, "fibre homotopy, 1e3 x 101 grid",
         Scenario(suite="thm1_homotopy", trials=1_000, seed=42), budget=5.0)


def test_criterion_07_deformation():
    _run(7, "deformation retraction, 1e3 x 101 grid",
         Scenario(suite="prop1", trials=1_000, seed=42), budget=5.0)


def test_criterion_08_base_refinement():
    def enough_samples(report):
        sound = next(c for c in report["checks"]
                     if c["name"] == "bracket_refines_subbase")
        return sound["trials"] >= 10_000 and sound["failures"] == 0
    _run(8, "bracket refines subbase, 1e4 samples / 100 configs",
         Scenario(suite="thm1_base", trials=100, seed=42), budget=30.0,
         extra_ok=enough_samples)


def test_criterion_09_openness():
    def grids_large_enough(report):
        grid = next(c for c in report["checks"]
                    if c["name"] == "witness_grid_at_least_11")
        return grid["failures"] == 0 and grid["trials"] >= 50
    _run(9, "retraction openness, 50 configs",
         Scenario(suite="thm1_openness", space="grid_1d:64", trials=50,
                  seed=42), budget=10.0, extra_ok=grids_large_enough)


def test_criterion_10_neighborhood_retract():
    def witness_recorded(report):
        w = report.get("discontinuity_witness")
        return w is not None and w["output_gap"] > 0.5
    _run(10, "Dirac-neighborhood retraction, 1e4 instances",
         Scenario(suite="prop2_lemma1", trials=10_000, seed=42), budget=5.0,
         extra_ok=witness_recorded)


def test_criterion_11_functorial_lift():
    # 334 trials x 3 measures each > 1e3 lifted tracks, K = 10 steps
    _run(11, "lifted homotopy tracks, 1e3 measures",
         Scenario(suite="thm2", trials=334, seed=42), budget=5.0)


def test_criterion_12_ambient_retraction():
    _run(12, "ambient retraction, 1e3 configurations",
         Scenario(suite="thm3", trials=1_000, seed=42), budget=5.0)
