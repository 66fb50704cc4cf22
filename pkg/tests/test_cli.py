import dataclasses
import io
import json

import pytest

from weierfano import catalog, cli
from weierfano.cli import run


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_invariants_row_json():
    code, out, _ = call("invariants", "--row", "13", "--format", "json")
    assert code == 0
    js = json.loads(out)
    assert (js["k4"], js["h0"], js["k2c2"]) == (20, 11, 80)
    assert js["input"]["surface"] == "P1xP1"


def test_invariants_surface_bundle_text():
    code, out, _ = call("invariants", "--surface", "P2", "--bundle", '{"tangent_twist": true}')
    assert code == 0
    assert "k4: 32" in out and "h0: 15" in out


def test_table_formats():
    code, out, _ = call("table", "--format", "md")
    assert code == 0 and out.count("\n") == 24
    code, out, _ = call("table", "--format", "csv")
    assert out.startswith("id,pair,rho,k4,k2c2,h0\n")
    code, _, err = call("table", "--format-version", "7")
    assert code == 2 and "version" in err


def test_check_reports_row_eight():
    code, out, err = call("check")
    assert code == 1
    assert out.splitlines()[0] == "21/22 rows match"
    assert "row 8: k2c2 expected 138, computed 68" in err


def test_check_json():
    code, out, _ = call("check", "--format", "json")
    js = json.loads(out)
    assert code == 1 and js["summary"] == "21/22 rows match" and js["identity_failures"] == []


def test_check_passes_on_corrected_table(monkeypatch):
    original = catalog.builtin_table

    def corrected():
        rows = original()
        return [dataclasses.replace(r, expected=dataclasses.replace(r.expected, k2c2=68)) if r.id == 8 else r
                for r in rows]

    monkeypatch.setattr(cli, "builtin_table", corrected)
    code, out, err = call("check")
    assert code == 0 and out.startswith("22/22 rows match") and err == ""


def test_curves_and_search():
    code, out, _ = call("curves", "--surface", "S2")
    assert code == 0 and len(out.splitlines()) == 56
    code, out, _ = call("curves", "--surface", "F1", "--format", "json")
    assert json.loads(out) == [[0, 1]]
    code, out, _ = call("search", "--surface", "P1xP1", "--box", "3",
                        "--constraints", "nef,ruling_type_01,chern_ineq", "--format", "json")
    assert code == 0 and len(json.loads(out)) == 2


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["frobnicate"],
        ["invariants"],
        ["invariants", "--row", "40"],
        ["invariants", "--row", "1", "--surface", "P2"],
        ["invariants", "--surface", "P2", "--bundle", "{not json"],
        ["invariants", "--surface", "P2", "--bundle", '{"split": [[0]]}'],
        ["search", "--surface", "P2", "--constraints", "bogus"],
        ["search", "--surface", "P2", "--box", "-1"],
        ["curves", "--surface", "S9"],
    ],
)
def test_usage_errors(argv):
    code, _, err = call(*argv)
    assert code == 2
