import os
from fractions import Fraction

import pytest

import kstab

DATA = os.environ.get("KSTAB_DATA_DIR", kstab.default_data_dir())


def test_bundled_case_passes():
    row = kstab.run_case(os.path.join(DATA, "cases", "a1_point", "s_a_f0.json"), DATA)
    assert row["status"] == "pass"
    assert row["computed"] == "49/26"


def test_inline_case_without_expected_value():
    doc = {"schema_version": 1, "kind": "formula", "inputs": {"name": "res_n", "params": {"n": 3, "a": "3/2"}}}
    row = kstab.run_case_doc(doc, data_dir=DATA)
    assert row["status"] == "computed-only"
    assert Fraction(row["computed"]) == Fraction(9, 52)


def test_suite_has_no_failures():
    report = kstab.run_suite(DATA, jobs=2)
    assert report["summary"]["fail"] == 0
    assert report["summary"]["error"] == 0
    assert len(report["rows"]) == report["summary"]["cases"]


def test_formulas():
    assert "k3" in kstab.formula_names()
    assert kstab.evaluate_formula("k3", a=Fraction(3, 2), d=4, mu="1/2")["value"] == "49/52"
    out = kstab.evaluate_formula("theorem15_check", n=4, r=3)
    assert out["value"] is True
    assert out["gamma"] == "425/397"


def test_git():
    assert kstab.hm_weight("02,12,21,22", 1, 2) == -2
    found = kstab.find_destabilizer("02,12,21,22", 5)
    assert found["lambda"] == (1, 2)
    assert kstab.find_destabilizer("00,01,02,10,11,12,20,21,22") is None


def test_invariants():
    assert kstab.hilbert_prefix(8) == [1, 0, 1, 1, 2, 1, 3, 2, 4]
    assert [kstab.invariant_dimension(k) for k in range(9)] == kstab.hilbert_prefix(8)
    assert kstab.peano_invariants({"11": 1}) == (Fraction(-1, 2), Fraction(0), Fraction(1, 16))
    assert kstab.check_invariance(5, 3) == (5, 5)


def test_toric_and_volume():
    assert kstab.toric_product(os.path.join(DATA, "models", "a1_y0.json"), [5, 5, 5]) == 4
    pieces = [
        {"interval": [0, 1], "polynomial": [[-1, 3, 0], [13, 0, 0]]},
        {"interval": [1, 2], "polynomial": [[-3, 2, 0], [3, 1, 0], [12, 0, 0]]},
        {"interval": [2, 3], "polynomial": [[3, 3, 0], [-18, 2, 0], [27, 1, 0]]},
    ]
    assert kstab.s_from_volume(pieces, 13) == Fraction(49, 26)


def test_errors_carry_their_kind():
    with pytest.raises(kstab.KstabError) as info:
        kstab.evaluate_formula("theorem15_check", n=4, r=2)
    assert info.value.kind == "HypothesisViolated"
    with pytest.raises(kstab.KstabError) as info:
        kstab.hm_weight("33", 1, 1)
    assert info.value.kind == "ParseError"
