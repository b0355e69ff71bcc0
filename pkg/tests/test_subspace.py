import math
import random

import pytest

from ipm.gen import random_map, random_points, random_single_peak
from ipm.measure import MeasureError, canonicalize, dirac, pushforward
from ipm.space import build_space
from ipm.subspace import (build_retraction_data, ambient_merge,
                          ambient_retract, classify, fibre_contains,
                          neighborhood_retract, o_delta_contains,
                          peak_threshold, retract_to_dirac,
                          retraction_data_from_json)

LN2 = math.log(2.0)
LN3 = math.log(3.0)
LN4 = math.log(4.0)


def space(n=4):
    ids = [f"y{i + 1}" for i in range(n)]
    metric = [[abs(i - j) / (n - 1) if n > 1 else 0.0 for j in range(n)]
              for i in range(n)]
    return build_space([(p, None) for p in ids], metric)


def test_classify_dirac():
    sp = space()
    c = classify(dirac(sp, "y1"))
    assert c.in_If and c.in_In == 1 and c.top_index == "y1"


def test_classify_weight_above_threshold():
    sp = space()
    c = classify(canonicalize(sp, [("y1", 0.0), ("y2", -1.0)]))
    assert not c.in_If
    assert "exceeds" in c.violation


def test_classify_non_unique_zero():
    sp = space()
    c = classify(canonicalize(sp, [("y1", 0.0), ("y2", 0.0)]))
    assert not c.in_If
    assert c.violation == "non-unique zero weight"


def test_classify_accepts_exact_bound():
    sp = space()
    c = classify(canonicalize(sp, [("y1", 0.0), ("y2", -LN3)]))
    assert c.in_If and c.top_index == "y1"


def test_retract_to_dirac():
    sp = space()
    mu = canonicalize(sp, [("y1", 0.0), ("y2", -1.5)])
    assert retract_to_dirac(mu) == dirac(sp, "y1")
    assert retract_to_dirac(dirac(sp, "y3")) == dirac(sp, "y3")
    with pytest.raises(MeasureError):
        retract_to_dirac(canonicalize(sp, [("y1", 0.0), ("y2", 0.0)]))


def test_retract_idempotent_on_samples():
    rng = random.Random(0)
    sp = random_points(2, 10, seed=4)
    for _ in range(300):
        mu = random_single_peak(sp, rng)
        r = retract_to_dirac(mu)
        assert retract_to_dirac(r) == r


def test_fibre_partition():
    sp = space()
    mu = canonicalize(sp, [("y1", 0.0), ("y2", -1.5)])
    assert fibre_contains("y1", mu)
    assert not fibre_contains("y2", mu)
    hits = [p for p in sp.ids if fibre_contains(p, mu)]
    assert hits == ["y1"]


def test_o_delta_contains():
    sp = space()
    assert o_delta_contains("y1", canonicalize(sp, [("y1", 0.0), ("y2", -0.8)]))
    assert not o_delta_contains("y1", canonicalize(sp, [("y1", 0.0), ("y2", -0.5)]))
    assert o_delta_contains("y1", dirac(sp, "y1"))


def test_neighborhood_retract_two_atoms():
    sp = space()
    nu = canonicalize(sp, [("y1", 0.0), ("y2", -0.8)])
    want = (("y1", 0.0), ("y2", -LN3))
    assert neighborhood_retract(nu, "paper_literal").atoms == want
    assert neighborhood_retract(nu, "atom_clamp").atoms == want


def test_neighborhood_retract_variants_differ_across_boundary():
    sp = space()
    nu = canonicalize(sp, [("y1", 0.0), ("y2", -0.8), ("y3", -2.0)])
    lit = neighborhood_retract(nu, "paper_literal")
    clamp = neighborhood_retract(nu, "atom_clamp")
    assert lit.atoms == (("y1", 0.0), ("y2", -LN4), ("y3", -LN4))
    assert clamp.atoms == (("y1", 0.0), ("y2", -LN4), ("y3", -2.0))


def test_neighborhood_retract_identity_on_single_peak():
    sp = space()
    mu = canonicalize(sp, [("y1", 0.0), ("y2", -1.5)])
    assert neighborhood_retract(mu, "paper_literal") == mu
    assert neighborhood_retract(mu, "atom_clamp") == mu


def test_neighborhood_retract_precondition():
    sp = space()
    nu = canonicalize(sp, [("y1", 0.0), ("y2", -0.5)])  # -0.5 > -ln 2
    with pytest.raises(MeasureError, match="neighborhood"):
        neighborhood_retract(nu)
    with pytest.raises(MeasureError, match="variant"):
        neighborhood_retract(canonicalize(sp, [("y1", 0.0), ("y2", -0.8)]),
                             "bogus")


def test_neighborhood_retract_image_in_single_peak():
    rng = random.Random(7)
    sp = random_points(2, 8, seed=8)
    for _ in range(300):
        k = rng.randint(1, 5)
        pts = rng.sample(sp.ids, k)
        atoms = [(pts[0], 0.0)] + [(p, -LN2 - 1e-6 - rng.uniform(0, 2))
                                   for p in pts[1:]]
        nu = canonicalize(sp, atoms)
        for variant in ("paper_literal", "atom_clamp"):
            assert classify(neighborhood_retract(nu, variant)).in_If


def test_ambient_merge():
    sp = space(3)
    nu = canonicalize(sp, [("y1", 0.0), ("y2", -2.0), ("y3", -1.5)])
    assert ambient_merge(nu, {"y1", "y2"}).atoms == (("y1", 0.0), ("y2", -2.0))
    inside = canonicalize(sp, [("y1", 0.0), ("y2", -2.0)])
    assert ambient_merge(inside, {"y1", "y2"}) == inside
    assert ambient_merge(dirac(sp, "y1"), {"y1", "y2"}) == dirac(sp, "y1")
    with pytest.raises(MeasureError, match="outside U"):
        ambient_merge(nu, {"y2", "y3"})


def test_ambient_retract_collapses_into_X():
    sp = space(3)
    data = build_retraction_data(sp, X={"y1"}, U={"y1", "y2"},
                                 r_table={"y2": "y1"})
    nu = canonicalize(sp, [("y1", 0.0), ("y2", -2.0), ("y3", -1.5)])
    assert ambient_retract(nu, data) == dirac(sp, "y1")
    assert ambient_retract(dirac(sp, "y2"), data) == dirac(sp, "y1")


def test_ambient_retract_identity_on_single_peak_over_X():
    sp = space(4)
    data = build_retraction_data(sp, X={"y1", "y2"}, U={"y1", "y2", "y3"},
                                 r_table={"y3": "y1"})
    nu = canonicalize(sp, [("y1", 0.0), ("y2", -LN3 - 0.2)])
    assert ambient_retract(nu, data) == nu


def test_retraction_data_validation():
    sp = space(3)
    with pytest.raises(Exception, match="contained"):
        build_retraction_data(sp, X={"y1", "y3"}, U={"y1"}, r_table={})
    with pytest.raises(Exception, match="fix"):
        build_retraction_data(sp, X={"y1"}, U={"y1", "y2"},
                              r_table={"y1": "y2", "y2": "y1"})
    with pytest.raises(Exception, match="outside X"):
        build_retraction_data(sp, X={"y1"}, U={"y1", "y2"},
                              r_table={"y2": "y3"})
    data = retraction_data_from_json(
        {"X": ["y1"], "U": ["y1", "y2"], "r": {"y2": "y1"}}, sp)
    assert data.r("y2") == "y1"


def test_subfunctor_closure_under_pushforward():
    rng = random.Random(21)
    sp = random_points(2, 10, seed=13)
    for _ in range(300):
        mu = random_single_peak(sp, rng)
        f = random_map(sp, sp, rng)
        assert classify(pushforward(f, mu)).in_If


def test_peak_threshold_values():
    assert peak_threshold(1) == -LN2
    assert peak_threshold(2) == -LN3
