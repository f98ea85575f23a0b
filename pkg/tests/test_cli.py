import json
import subprocess
import sys


def run_cli(*args):
    proc = subprocess.run(
        [sys.executable, "-m", "crepant.cli", *args],
        capture_output=True,
        text=True,
    )
    return proc


def test_ghilb_command_counts():
    p = run_cli("ghilb", "1/11(1,2,8)")
    assert p.returncode == 0
    rep = json.loads(p.stdout)
    assert len(rep["fan"]["triangles"]) == 11
    assert len(rep["markings"]["divisors"]) == 5


def test_invalid_group_exit_code():
    p = run_cli("ghilb", "1/0(1,1,1)")
    assert p.returncode == 1
    assert "error" in p.stderr


def test_usage_error_exit_code():
    p = run_cli("frobnicate", "1/2(1,0,1)")
    assert p.returncode == 1


def test_chamber_report_contains_f_labels():
    p = run_cli("chamber", "1/11(1,2,8)")
    rep = json.loads(p.stdout)
    labeled = {f.get("label"): f for f in rep["chamber"]["facets"] if "label" in f}
    assert labeled["f1"]["inequality"] == "th1 + th3 + th9 > 0"
    assert labeled["f1"]["type"] == "I"
    assert labeled["f8"]["type"] == "III"
    # f2 is redundant and reported as such
    reds = {r["inequality"] for r in rep["chamber"]["redundant_inequalities"]}
    assert "th2 + th3 + 2*th4 + th7 + th10 > 0" in reds


def test_determinism_byte_identical():
    a = run_cli("chamber", "1/6(1,2,3)").stdout
    b = run_cli("chamber", "1/6(1,2,3)").stdout
    assert a == b
    c = run_cli("enumerate", "1/3(1,1,1)").stdout
    d = run_cli("enumerate", "1/3(1,1,1)").stdout
    assert c == d


def test_enumerate_command():
    p = run_cli("enumerate", "1/3(1,1,1)")
    rep = json.loads(p.stdout)
    assert rep["chamber_count"] == 3
    assert rep["fan_count"] == 1
    assert rep["fans_equal_flip_closure"] is True


def test_enumerate_cap_exit_code():
    p = run_cli("enumerate", "1/6(1,2,3)", "--max-chambers", "10")
    assert p.returncode == 2


def test_cross_roundtrip_with_token():
    p = run_cli("chamber", "1/3(1,1,1)")
    rep = json.loads(p.stdout)
    token = rep["state_token"]
    p2 = run_cli("cross", "1/3(1,1,1)", "--facet", "0")
    assert p2.returncode == 0
    rep2 = json.loads(p2.stdout)
    assert rep2["crossed_facet"]["type"] in ("0", "I", "III")
    # replay from the token gives the same chamber
    p3 = run_cli("cross", "1/3(1,1,1)", "--facet", "0", "--seed-state", token)
    assert p3.returncode == 0
    assert json.loads(p3.stdout)["chamber"] == rep2["chamber"]


def test_cross_bad_facet_index():
    p = run_cli("cross", "1/3(1,1,1)", "--facet", "99")
    assert p.returncode == 1


def test_quiver_command():
    p = run_cli("quiver", "1/6(1,2,3)", "--split", "0,1")
    rep = json.loads(p.stdout)
    assert rep["split"]["ext1_dim"] == 1
    assert rep["split"]["quotient_rigid"] is True
    p2 = run_cli("quiver", "1/6(1,2,3)", "--split", "0,1,3")
    rep2 = json.loads(p2.stdout)
    assert rep2["split"]["ext1_dim"] == 2


def test_svg_labels(tmp_path):
    svg = tmp_path / "fan.svg"
    p = run_cli("ghilb", "1/11(1,2,8)", "--svg", str(svg))
    assert p.returncode == 0
    text = svg.read_text()
    # every vertex (8) and interior edge (15) visibly labeled
    assert text.count("<text") >= 8 + 15
    assert "rho" in text


def test_json_flag_writes_identical_report(tmp_path):
    out = tmp_path / "report.json"
    p = run_cli("markings", "1/6(1,2,3)", "--json", str(out))
    assert p.returncode == 0
    assert out.read_text() == p.stdout


def test_verify_command():
    p = run_cli("verify", "1/6(1,2,3)")
    assert p.returncode == 0
    rep = json.loads(p.stdout)
    assert rep["ok"] is True


def test_report_round_trip():
    from crepant import report

    p = run_cli("chamber", "1/3(1,1,1)")
    rep = json.loads(p.stdout)
    assert report.loads(report.dumps(rep)) == rep
