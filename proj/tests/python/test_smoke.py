"""Smoke tests for the pyleibniz bindings.

All rationals cross the boundary as "p/q" strings; nothing here may
introduce floating point.
"""

import json

import pytest

import pyleibniz as pl


def test_construct_and_verify():
    L = pl.construct_sl2n(4, "1", "-3/2")
    assert L.dim == 8
    assert L.labels == ["f", "h", "e", "v0", "v1", "v2", "v3", "v4"]
    assert L.verify() is None


def test_bracket_and_constants():
    L = pl.construct_sl22("1", "0")
    h = ["0", "1", "0", "0", "0", "0"]
    e = ["0", "0", "1", "0", "0", "0"]
    # <h, e> = 2e + 2*alpha*v0
    assert L.bracket(h, e) == ["0", "0", "2", "2", "0", "0"]
    assert L.constant(1, 2, 2) == "2"


def test_invalid_tensor_has_witness():
    bad = pl.from_json(json.dumps({
        "format_version": 1,
        "dim": 2,
        "labels": ["x", "y"],
        "brackets": {"x,y": [["x", "1"]], "y,x": [["y", "1"]]},
    }))
    assert bad.verify() is not None


def test_annihilator_and_lie_factor():
    L = pl.construct_sl2n(4, "0", "1")
    ann = L.annihilator()
    assert len(ann) == 5
    # canonical (rref) basis of span{v0..v4}
    assert ann[0] == ["0", "0", "0", "1", "0", "0", "0", "0"]
    factor = L.lie_factor_constants()
    assert factor["dim"] == 3


def test_simplicity_certificate():
    cert = pl.construct_sl22("5", "-3/2").is_simple()
    assert cert["simple"]
    assert all(cert[k] for k in
               ("ann_action_nonzero", "factor_simple", "ann_irreducible", "perfect"))
    assert not pl.construct_standard(1).is_solvable()


def test_roots_census():
    roots = pl.construct_sl2n(4, "1", "1").roots(seed=7)
    census = sorted((r["dim"], r["parity"]) for r in roots)
    assert census == [(1, "odd"), (1, "odd"), (2, "even"), (2, "even")]
    for r in roots:
        assert len(r["space"]) == r["dim"]


def test_classify_round_trip():
    L = pl.construct_sl2n(4, "1", "2")
    # scramble by an integer basis change with determinant 1
    P = [["1" if i == j else "0" for j in range(8)] for i in range(8)]
    P[0][3] = "1"
    P[2][7] = "-1"
    P[5][1] = "2"
    twisted = L.change_basis(P)
    res = twisted.classify()
    assert res["variant"] == "Template"
    assert res["n"] == 4
    target = pl.construct_sl2n(4, res["alpha"], res["beta"])
    assert twisted.change_basis(res["basis_change"]).bracket(
        ["1"] + ["0"] * 7, ["0", "0", "1"] + ["0"] * 5
    ) == target.bracket(["1"] + ["0"] * 7, ["0", "0", "1"] + ["0"] * 5)


def test_classify_standard_and_not_applicable():
    assert pl.construct_standard(3).classify()["variant"] == "Standard"
    heis = pl.from_json(json.dumps({
        "format_version": 1,
        "dim": 3,
        "labels": ["x", "y", "z"],
        "brackets": {"x,y": [["z", "1"]], "y,x": [["z", "-1"]]},
    }))
    assert heis.classify()["variant"] == "NotApplicable"


def test_adjoint_module_operations():
    L = pl.construct_sl22("1", "0")
    assert L.adjoint_three_irreducible()
    borel = [["0", "1", "0", "0", "0", "0"],
             ["0", "0", "1", "0", "0", "0"],
             ["0", "0", "0", "1", "0", "0"],
             ["0", "0", "0", "0", "1", "0"],
             ["0", "0", "0", "0", "0", "1"]]
    ed = L.adjoint_extended_lie(restrict_rows=borel)
    assert any(c != "0" for c in ed["vector"])
    assert ed["psi"] == ed["phi"] or all(c == "0" for c in ed["psi"])
    cartan = L.find_cartan(seed=3)
    weights = L.adjoint_weights(restrict_rows=cartan)
    assert sum(w["dim"] for w in weights) == 6


def test_json_round_trip(tmp_path):
    L = pl.construct_sl2n(6, "-3/2", "5")
    text = L.to_json()
    assert pl.from_json(text) == L
    path = str(tmp_path / "algebra.json")
    pl.save(L, path)
    assert pl.load(path) == L
    # no floating point representations anywhere in the file
    assert "." not in json.dumps(json.loads(text)["brackets"])


def test_exceptions():
    with pytest.raises(pl.LeibnizError):
        pl.construct_sl2n(5, "0", "0")  # odd n
    with pytest.raises(Exception):
        pl.from_json("not json")
