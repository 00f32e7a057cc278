import os

import pytest

import leechholes as lh

DATA = os.environ.get("LEECH_DATA_DIR", os.path.join(os.path.dirname(__file__), "..", "..", "data"))
CATALOG = os.path.join(DATA, "catalog.json")


def test_shell_counts():
    assert lh.shell_count(2) == 0
    assert lh.shell_count(4) == 196560


def test_phi():
    assert lh.phi_floor(2) == 1513
    assert abs(lh.phi_approx(2) - 1513.8435) < 1e-3
    assert "1081" in lh.phi(2)


def test_d24_invariants():
    inv = lh.hole_invariants(CATALOG, "c1")
    assert inv["deep"] is True
    assert inv["m"] == 46
    assert inv["N"] == 23
    assert inv["theta2"] == "8647/4324"
    assert inv["foot_dist2"][0] == "1/4324"


def test_verify():
    rep = lh.verify_hole(CATALOG, "c1")
    assert rep["valid"] and rep["deep"] and rep["type"] == "D24"


def test_gamma_and_golay():
    g = lh.gamma_code(CATALOG, "c293")
    assert g["n"] == 15 and (g["length"], g["dim"]) == (10, 5)
    assert lh.is_golay(os.path.join(DATA, "golay24.txt"))
    assert lh.is_golay(os.path.join(DATA, "golay12.txt"))
    wd = lh.weight_distribution(os.path.join(DATA, "golay24.txt"))
    assert wd[8] == 759 and wd[12] == 2576


def test_search_small():
    pts = lh.search_hole("a2", budget_seconds=30)
    assert pts is not None and len(pts) == 2


def test_errors():
    with pytest.raises(Exception):
        lh.hole_invariants(CATALOG, "nope")
