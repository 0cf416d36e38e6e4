import json
import subprocess
import sys
from pathlib import Path

import pytest

from dislofix.cli import main
from dislofix.errors import InstanceError
from dislofix.instance import (dumps, instance_to_dict, load_instance, loads_instance,
                               parse_instance)

from conftest import FIXTURES

GOLDEN = Path(__file__).parent / "golden"


def run(*argv):
    return main([str(a) for a in argv])


# -- instance files -------------------------------------------------------


def test_round_trip_all_fixtures():
    for p in FIXTURES.glob("*.json"):
        if p.name in ("bad_rational.json", "bad_lambda.json"):
            continue
        inst = load_instance(p)
        doc = instance_to_dict(inst)
        again = instance_to_dict(parse_instance(json.loads(dumps(doc))))
        assert again == doc, p.name


def test_rationals_stay_exact():
    inst = loads_instance(json.dumps({"version": "1", "space": {
        "points": [{}, {}], "metric": {"kind": "table", "table": [[0, "1/3"], ["1/3", "2/7"]]}}}))
    assert inst.space.table[1][1].denominator == 7
    assert instance_to_dict(inst)["space"]["metric"]["table"][0][1] == "1/3"


@pytest.mark.parametrize("doc, path", [
    ({"version": "2", "space": {"points": [{}], "metric": {"kind": "max_plus_discrete"}}},
     "version"),
    ({"version": "1", "space": {"points": [], "metric": {"kind": "table"}}}, "space.points"),
    ({"version": "1", "space": {"points": [{}], "metric": {"kind": "table", "table": [["x"]]}}},
     "space.metric.table[0][0]"),
    ({"version": "1", "space": {"points": [{}], "metric": {"kind": "max"}}}, "space.points"),
    ({"version": "1", "space": {"points": [{}], "metric": {"kind": "table", "table": [[0]]}},
      "family": [[0]], "map": [1]}, "map"),
    ({"version": "1", "space": {"points": [{}], "metric": {"kind": "table", "table": [[0]]}},
      "family": [[3]]}, "family"),
])
def test_errors_carry_field_path(doc, path):
    with pytest.raises(InstanceError) as exc:
        parse_instance(doc)
    assert exc.value.path == path


def test_json_syntax_error_carries_line():
    with pytest.raises(InstanceError) as exc:
        loads_instance('{\n"version": "1",\n oops}')
    assert exc.value.line == 3


# -- commands -------------------------------------------------------------


def test_check_exit_codes(fixture_path, capsys):
    assert run("check", fixture_path("example1.json")) == 0
    assert run("check", fixture_path("triangle_violation.json")) == 1
    assert "witness (0, 1, 2)" in capsys.readouterr().out
    assert run("check", fixture_path("bad_rational.json")) == 2
    assert run("check", "/nonexistent.json") == 2


def test_verify_exit_codes(fixture_path, capsys):
    assert run("verify", fixture_path("constant_map.json")) == 0
    assert run("verify", fixture_path("identity_map.json")) == 1
    out = capsys.readouterr().out
    assert "edge (0, 1): H(TU, TV) = 1 > phi(M_T = 1) = 1/2" in out
    assert run("verify", fixture_path("missing_phi.json")) == 2
    assert run("verify", fixture_path("bad_lambda.json")) == 3
    assert run("verify", fixture_path("constant_map.json"), "--functional", "ns",
               "--mode", "path") == 0


def test_verify_bad_table_phi_exit_3(tmp_path, fixture_path):
    doc = json.loads(Path(fixture_path("constant_map.json")).read_text())
    doc["phi"] = {"kind": "table", "table": [["0", "0"], ["1", "1"]]}
    p = tmp_path / "bad.json"
    p.write_text(json.dumps(doc))
    assert run("verify", p) == 3


def test_iterate(fixture_path, capsys, tmp_path):
    for start in range(4):
        assert run("iterate", fixture_path("constant_map.json"), "--start", start) == 0
    capsys.readouterr()
    out = tmp_path / "t.json"
    assert run("iterate", fixture_path("linear_chain.json"), "--start", 4, "--json", out) == 0
    rows = [l for l in capsys.readouterr().out.splitlines() if l.strip()[:1].isdigit()]
    assert len(rows) == 5 and all(r.endswith("yes") for r in rows)
    rep = json.loads(out.read_text())
    assert rep["verdict"] == "fixed_point" and rep["results"]["bound_violations"] == []
    assert run("iterate", fixture_path("two_cycle.json"), "--start", 0) == 1
    assert run("iterate", fixture_path("constant_map.json"), "--start", 9) == 2


def test_iterate_max_iters_zero_is_usage_error(fixture_path):
    with pytest.raises(SystemExit) as exc:
        run("iterate", fixture_path("constant_map.json"), "--start", 0, "--max-iters", 0)
    assert exc.value.code == 2


def test_hausdorff_and_fixed_points(fixture_path, capsys):
    assert run("hausdorff", fixture_path("constant_map.json"), "--u", 2, "--v", 3) == 0
    assert "H(U, V) = 2" in capsys.readouterr().out
    assert run("hausdorff", fixture_path("constant_map.json"), "--u", 0, "--v", 7) == 2
    assert run("fixed-points", fixture_path("constant_map.json"), "--tolerance", "1") == 0
    assert "approximate fixed points within 1: [0, 1, 2]" in capsys.readouterr().out


def test_fuzz(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert run("fuzz", "--seed", 1, "--trials", 10, "--json", a) == 0
    assert run("fuzz", "--seed", 1, "--trials", 10, "--json", b) == 0
    assert a.read_bytes() == b.read_bytes()
    with pytest.raises(SystemExit) as exc:
        run("fuzz", "--trials", 0)
    assert exc.value.code == 2


def test_fuzz_config_errors(tmp_path):
    bad = tmp_path / "cfg.json"
    bad.write_text('{"n_points": [5, 2]}')
    assert run("fuzz", "--config", bad) == 2
    bad.write_text("[1]")
    assert run("fuzz", "--config", bad) == 2
    bad.write_text('{"map_mode": "random", "trials": 20}')
    assert run("fuzz", "--config", bad) == 0


def test_timings_only_on_request(tmp_path, fixture_path):
    out = tmp_path / "r.json"
    run("check", fixture_path("example1.json"), "--json", out)
    assert "timings" not in json.loads(out.read_text())
    run("check", fixture_path("example1.json"), "--json", out, "--timings")
    assert "timings" in json.loads(out.read_text())


GOLDEN_CASES = {
    "check_example1": ["check", "example1.json"],
    "check_triangle": ["check", "triangle_violation.json"],
    "verify_identity": ["verify", "identity_map.json"],
    "verify_constant_ns": ["verify", "constant_map.json", "--functional", "ns"],
    "iterate_max_chain": ["iterate", "max_chain.json", "--start", "3"],
    "fixed_points_constant": ["fixed-points", "constant_map.json"],
}


@pytest.mark.parametrize("name", sorted(GOLDEN_CASES))
def test_golden_reports(name, tmp_path, monkeypatch):
    cmd, fixture, *rest = GOLDEN_CASES[name]
    monkeypatch.chdir(FIXTURES)
    out = tmp_path / "out.json"
    run(cmd, fixture, *rest, "--json", out)
    assert out.read_text() == (GOLDEN / f"{name}.json").read_text()


def test_report_key_order(tmp_path, fixture_path):
    out = tmp_path / "r.json"
    run("verify", fixture_path("constant_map.json"), "--json", out)
    assert list(json.loads(out.read_text())) == sorted(
        ["command", "config", "results", "verdict", "exit_code"])


def test_console_script_entry_point(fixture_path):
    r = subprocess.run([sys.executable, "-m", "dislofix.cli", "check",
                        fixture_path("example1.json")], capture_output=True, text=True)
    assert r.returncode == 0 and "dislocated metric: yes" in r.stdout
