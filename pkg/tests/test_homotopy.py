import math
import random

import pytest

from ipm.gen import grid_1d, random_measure, random_single_peak
from ipm.homotopy import (deformation_homotopy, fibre_homotopy,
                          functor_map_at, lift_witness, track,
                          track_to_json, uniform_grid)
from ipm.measure import MeasureError, canonicalize, dirac
from ipm.space import build_map, build_space, build_witness, identity_map
from ipm.subspace import classify, fibre_contains, retract_to_dirac

LN3 = math.log(3.0)


def ab_space():
    metric = [[0.0, 1.0, 2.0], [1.0, 0.0, 1.0], [2.0, 1.0, 0.0]]
    return build_space([("a", None), ("b", None), ("c", None)], metric)


def peak_ab(sp):
    return canonicalize(sp, [("a", 0.0), ("b", -1.5)])


def test_fibre_homotopy_endpoints():
    sp = ab_space()
    mu = peak_ab(sp)
    assert fibre_homotopy(mu, "a", 0.0) == dirac(sp, "a")
    assert fibre_homotopy(mu, "a", 1.0) == mu


def test_fibre_homotopy_quarter():
    sp = ab_space()
    mu = peak_ab(sp)
    out = fibre_homotopy(mu, "a", 0.25)
    assert out.weight("a") == 0.0
    assert out.weight("b") == pytest.approx(-1.5 - LN3, abs=1e-12)


def test_fibre_homotopy_plateau_second_half():
    sp = ab_space()
    mu = peak_ab(sp)
    for t in (0.5, 0.6, 0.75, 0.9):
        assert fibre_homotopy(mu, "a", t) == mu


def test_fibre_homotopy_requires_fibre_membership():
    sp = ab_space()
    mu = peak_ab(sp)
    with pytest.raises(MeasureError, match="fibre"):
        fibre_homotopy(mu, "b", 0.5)


def test_fibre_homotopy_stays_in_fibre():
    sp = ab_space()
    mu = peak_ab(sp)
    for t in uniform_grid(21):
        assert fibre_contains("a", fibre_homotopy(mu, "a", t))


def test_deformation_endpoints_and_plateau():
    sp = ab_space()
    mu = peak_ab(sp)
    assert deformation_homotopy(mu, 0.0) == mu
    assert deformation_homotopy(mu, 1.0) == retract_to_dirac(mu)
    for t in (0.1, 0.25, 0.5):
        assert deformation_homotopy(mu, t) == mu
    out = deformation_homotopy(mu, 0.75)
    assert out.weight("a") == 0.0
    assert out.weight("b") == pytest.approx(-1.5 - LN3, abs=1e-12)


def test_deformation_fixes_diracs():
    sp = ab_space()
    for t in uniform_grid(11):
        assert deformation_homotopy(dirac(sp, "b"), t) == dirac(sp, "b")


def test_deformation_requires_single_peak():
    sp = ab_space()
    nu = canonicalize(sp, [("a", 0.0), ("b", -0.5)])
    with pytest.raises(MeasureError, match="single-peak"):
        deformation_homotopy(nu, 0.5)


def test_track_three_point_grid():
    sp = ab_space()
    mu = peak_ab(sp)
    tr = track("deformation", mu, (0.0, 0.5, 1.0))
    assert tr.states == (mu, mu, dirac(sp, "a"))


def test_track_fibre_two_point_grid():
    sp = ab_space()
    mu = peak_ab(sp)
    tr = track("fibre", mu, (0.0, 1.0), x="a")
    assert tr.states == (dirac(sp, "a"), mu)


def test_track_grid_validation():
    sp = ab_space()
    mu = peak_ab(sp)
    with pytest.raises(MeasureError):
        track("deformation", mu, (0.0, 0.5))
    with pytest.raises(MeasureError):
        track("deformation", mu, (0.0, 0.5, 0.5, 1.0))
    with pytest.raises(MeasureError):
        track("bogus", mu, (0.0, 1.0))
    with pytest.raises(MeasureError, match="fibre point"):
        track("fibre", mu, (0.0, 1.0))


def test_track_membership_along_refinements():
    rng = random.Random(5)
    sp = grid_1d(12)
    for _ in range(20):
        mu = random_single_peak(sp, rng, max_support=5)
        x = classify(mu).top_index
        for n in (11, 101):
            tr = track("fibre", mu, uniform_grid(n), x=x)
            assert all(fibre_contains(x, st) for st in tr.states)


def test_functor_map_at():
    sp = ab_space()
    mu = canonicalize(sp, [("a", 0.0), ("b", -2.0)])
    ident = identity_map(sp)
    relabel = build_map(sp, sp, {"a": "a", "b": "c", "c": "c"})
    const = build_map(sp, sp, {"a": "b", "b": "b", "c": "b"})
    w = build_witness([ident, relabel, const], step_bound=2.0)
    assert functor_map_at(w, 0, mu) == mu
    assert functor_map_at(w, 1, mu).atoms == (("a", 0.0), ("c", -2.0))
    assert functor_map_at(w, 2, mu) == dirac(sp, "b")
    with pytest.raises(MeasureError, match="range"):
        functor_map_at(w, 3, mu)


def test_lift_witness_identity_and_collapse():
    sp = ab_space()
    ident = identity_map(sp)
    const = build_map(sp, sp, {"a": "a", "b": "a", "c": "a"})
    w_id = build_witness([ident, ident], step_bound=0.0)
    w_col = build_witness([ident, const], step_bound=2.0)
    rng = random.Random(2)
    mus = [random_measure(sp, rng) for _ in range(5)]
    for tr in lift_witness(w_id, mus):
        assert tr[0] == tr[1]
    for tr in lift_witness(w_col, mus):
        assert tr[-1] == dirac(sp, "a")


def test_lift_witness_dirac_naturality():
    sp = ab_space()
    f = build_map(sp, sp, {"a": "b", "b": "c", "c": "c"})
    w = build_witness([identity_map(sp), f], step_bound=1.0)
    (tr,) = lift_witness(w, [dirac(sp, "a")])
    assert tr == [dirac(sp, "a"), dirac(sp, "b")]


def test_lift_preserves_normalization_and_support_size():
    rng = random.Random(6)
    sp = grid_1d(9)
    maps = [build_map(sp, sp, {p: sp.ids[min(i + k, 8)]
                               for i, p in enumerate(sp.ids)})
            for k in range(3)]
    w = build_witness(maps, step_bound=0.2)
    for mu in (random_measure(sp, rng) for _ in range(30)):
        for st in lift_witness(w, [mu])[0]:
            assert max(wt for _, wt in st.atoms) == 0.0
            assert len(st) <= len(mu)


def test_track_json_export():
    sp = ab_space()
    mu = peak_ab(sp)
    tr = track("deformation", mu, (0.0, 0.5, 1.0))
    doc = track_to_json(tr)
    assert doc["t"] == [0.0, 0.5, 1.0]
    assert doc["states"][0] == {"atoms": [["a", 0.0], ["b", -1.5]]}
    assert doc["states"][-1] == {"atoms": [["a", 0.0]]}
