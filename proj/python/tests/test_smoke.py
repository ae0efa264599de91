"""Smoke tests for the _sl2surf extension module."""

import _sl2surf as m


def test_census_rho2():
    rows = m.census(2)
    assert rows[2] == {"n": 2, "circles": 1, "moebius": 1, "cylinders": 0, "disks": 1, "fixed": 0}
    assert rows[0]["fixed"] == 1


def test_classify_disk():
    element = m.canonical_element("2", elliptic="i", u="1")
    report = m.classify("2", element)
    assert report["orbit"]["class"] == "elliptic_disk"
    assert report["orbit"]["dimension"] == 2
    assert report["closure"]["closure_topology"] == "closed_disk"
    assert report["analyticity"]["conjugacy"] == "projective"


def test_classify_parabolic_family_with_verification():
    element = m.canonical_element("4+2", parabolic="0", u="1,1")
    report = m.classify("4+2", element, verify=True, seed=7)
    assert report["analyticity"]["conjugacy"] == "parabolic_family"
    assert report["analyticity"]["m"] == 2
    assert report["gluing"]["assembled_surface"] == "torus_4_orbits"
    assert report["verification"]["dimension_match"] is True
    assert report["verification_passed"] is True


def test_expand_interior_point():
    element = m.canonical_element("2", elliptic="i")
    assert m.expand("2", element) == [["1", "0", "1"]]  # X^2 + Y^2


def test_orbit_rank_matches_dimension():
    element = m.canonical_element("2", parabolic="0")
    rank = m.orbit_rank("2", element)
    assert rank["declared_rank"] == 1
    assert rank["gap_ratio"] >= 1e6


def test_sample_determinism():
    element = m.canonical_element("2", elliptic="i")
    a = m.sample("2", element, 25, seed=3)
    b = m.sample("2", element, 25, seed=3)
    assert a == b
    assert len(a) == 25


def test_tangency_models_separate():
    conformal = m.tangency("conformal", 5)
    projective = m.tangency("projective", 5)
    assert conformal["max_angle"] < 1e-9
    assert projective["min_angle"] > 0.1


def test_fields_summary():
    summary = m.fields_summary(2)
    assert all(v < 1e-6 for v in summary["bracket_residuals"].values())
    assert summary["pullback_residual"] < 1e-8
