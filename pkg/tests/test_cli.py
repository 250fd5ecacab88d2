import io
import json
from fractions import Fraction
from pathlib import Path

import pytest

from cyclicalg import brauer, cli
from cyclicalg.errors import ConsistencyError
from cyclicalg.report import dump_report, exact_values, load_report

SPECS = Path(__file__).resolve().parent.parent / "specs"


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.run(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def run_json(*argv):
    code, out, err = run(*argv, "--json")
    assert code == 0, err
    return load_report(out)


def write(tmp_path, text, name="spec.json"):
    p = tmp_path / name
    p.write_text(text, encoding="utf-8")
    return str(p)


def test_quat_hamilton():
    r = run_json("quat", "--spec", str(SPECS / "hamilton_quaternion.json"))
    assert r["division"] is True
    assert r["ramification"] == [2, "inf"]
    assert r["hilbert_symbols"] == r["oracle_symbols"]


def test_quat_minus1_minus7():
    r = run_json("quat", "--spec", str(SPECS / "q_minus1_minus7.json"))
    assert r["ramification"] == [7, "inf"]


def test_biquat_report():
    r = run_json("biquat", "--spec", str(SPECS / "biquaternion.json"))
    assert r["ramification_q1"] == [2, "inf"] and r["ramification_q2"] == [7, "inf"]
    assert r["classes_independent"] is True and r["albert_isotropic"] is True
    assert r["division"] is False and r["discrepancy"] == "RAISED"


def test_cyclic_hamilton():
    r = run_json("cyclic", "--spec", str(SPECS / "hamilton.json"))
    assert all(r["relations"].values())
    assert r["centre_dimension"] == 1
    assert r["algebra"]["division_status"] == "proven-division"
    assert r["division_evidence"]["hilbert_symbols"]["2"] == -1
    assert r["reduced_norms"]["1 + theta + x"] == Fraction(3)


def test_cyclic_cubic_unknown_status():
    r = run_json("cyclic", "--spec", str(SPECS / "cubic.json"), "--height", "3")
    assert r["sigma_certificate"] == {"root_to_root": True, "order": 3, "fixed_field_dimension": 1}
    assert r["algebra"]["division_status"] == "unknown"
    assert r["division_evidence"]["norm_witness"] is None


def test_cyclic_split_records_zero_divisor():
    r = run_json("cyclic", "--spec", str(SPECS / "split_gaussian.json"))
    assert r["algebra"]["split"] is True
    assert "zero_divisor" in r and "split_note" in r


def test_sn_and_probe():
    r = run_json("sn", "--spec", str(SPECS / "hamilton.json"))
    assert r["verified"] is True
    assert r["g"] == [[Fraction(0), Fraction(1)], [Fraction(1), Fraction(0)]]
    r = run_json("probe", "--spec", str(SPECS / "hamilton.json"))
    assert r["intersection_dimension"] == 1 and r["K_dimension"] == 2


def test_quaternion_coordinates_in_probe():
    r = run_json("probe", "--spec", str(SPECS / "hamilton_quaternion.json"))
    assert r["intersection_dimension"] == 2


def test_demo_hamilton():
    r = run_json("demo-theorem2", "--spec", str(SPECS / "hamilton.json"))
    assert r["all_steps_passed"] is True
    assert len(r["steps"]) == 5 and all(s["passed"] for s in r["steps"])
    assert r["intersection_dimension"] == 2


def test_demo_refuses_split_unless_overridden():
    code, out, err = run("demo-theorem2", "--spec", str(SPECS / "split_gaussian.json"))
    assert code == 2 and "split" in err
    code, out, err = run("demo-theorem2", "--spec", str(SPECS / "split_gaussian.json"), "--allow-split")
    assert code == 0, err


def test_text_output_is_deterministic():
    a = run("cyclic", "--spec", str(SPECS / "hamilton.json"))
    b = run("cyclic", "--spec", str(SPECS / "hamilton.json"))
    assert a == b and a[0] == 0


def test_report_round_trip():
    for name, cmd in [("hamilton.json", "cyclic"), ("hamilton.json", "demo-theorem2"),
                      ("biquaternion.json", "biquat"), ("hamilton_quaternion.json", "quat")]:
        spec = cli.load_spec(str(SPECS / name))
        args = cli.build_parser().parse_args([cmd, "--spec", "x"])
        report = cli.COMMANDS[cmd](spec, args)
        assert load_report(dump_report(report)) == exact_values(report)


def test_parse_error_reports_line(tmp_path):
    code, _, err = run("quat", "--spec", write(tmp_path, '{"kind": "quaternion",\n "a": "-1" "b": 2}'))
    assert code == 2 and "line 2" in err


@pytest.mark.parametrize("doc, fragment", [
    ({"kind": "quaternion", "a": "-1", "b": "-1", "colour": "red"}, "unknown field"),
    ({"kind": "quaternion", "a": "-1.0", "b": "-1"}, "decimals"),
    ({"kind": "quaternion", "a": -1.5, "b": "-1"}, "exact rational"),
    ({"kind": "quaternion", "a": "-1"}, "missing"),
    ({"kind": "octonion"}, "kind"),
    ({"kind": "quaternion", "a": "0", "b": "-1"}, ""),
    ({"kind": "cyclic", "minpoly": ["1", "0", "1"], "sigma": ["0", "1"], "a": "-1"}, "σ"),
])
def test_bad_specs_exit_2(tmp_path, doc, fragment):
    code, out, err = run("cyclic" if doc.get("kind") == "cyclic" else "quat",
                         "--spec", write(tmp_path, json.dumps(doc)))
    assert code == 2 and out == ""
    assert fragment in err


def test_missing_spec_and_wrong_kind(tmp_path):
    assert run("quat")[0] == 2
    assert run("quat", "--spec", str(tmp_path / "nope.json"))[0] == 2
    assert run("biquat", "--spec", str(SPECS / "hamilton.json"))[0] == 2
    assert run("sn", "--spec", str(SPECS / "cubic.json"))[0] == 2  # no u, v


def test_consistency_error_exits_3(monkeypatch):
    def broken(*a, **k):
        raise ConsistencyError("ramification set has odd cardinality")
    monkeypatch.setattr(brauer, "ramification_set", broken)
    code, _, err = run("quat", "--spec", str(SPECS / "hamilton_quaternion.json"))
    assert code == 3 and "odd cardinality" in err


def test_proof_step_error_exits_3(monkeypatch):
    from cyclicalg import subfields
    monkeypatch.setattr(subfields, "sn_conjugator", lambda D, u, v: D.one)
    code, _, err = run("demo-theorem2", "--spec", str(SPECS / "hamilton.json"))
    assert code == 3 and "[FAILED] conjugator" in err


def test_selftest_default_and_seeded():
    code, out, _ = run("selftest")
    assert code == 0 and "seed 20241015" in out and "FAIL" not in out
    code, out, _ = run("selftest", "--seed", "7")
    assert code == 0 and "seed 7" in out


def test_selftest_catches_broken_symbol_at_2(monkeypatch):
    real = brauer.hilbert_symbol

    def broken(a, b, v, *rest, **kw):
        s = real(a, b, v, *rest, **kw)
        return -s if brauer.place(v) == brauer.place(2) else s
    monkeypatch.setattr(brauer, "hilbert_symbol", broken)
    code, out, _ = run("selftest")
    assert code == 3
    assert "FAIL oracle agreement" in out and "place=2" in out
