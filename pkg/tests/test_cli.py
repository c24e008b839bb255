import json
import subprocess
import sys

import pytest

from shrinkcy.cli import main
from shrinkcy.shrink import ShrinkReport
from shrinkcy.tables import triangulation_path


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_check_pre_shrinkable(tmp_path, capsys):
    out_json = tmp_path / "r.json"
    code, out, _ = run(["check", "--c1", "P2", "--c2", "F3", "--glue", "l=e", "--json", str(out_json)], capsys)
    assert code == 0
    assert "certificate  a = (1, 1)" in out
    data = json.loads(out_json.read_text())
    assert data["certificate"] == [1, 1] and data["cy"] is True
    assert ShrinkReport.from_dict(data).to_dict() == data


def test_check_not_pre_shrinkable(capsys):
    code, out, _ = run(["check", "--c1", "F5", "--c2", "F3", "--glue", "e=e+3f"], capsys)
    assert code == 1
    assert "NotPreShrinkable" in out and "a2<=0" in out


def test_check_cy_failure(tmp_path, capsys):
    out_json = tmp_path / "r.json"
    code, out, _ = run(["check", "--c1", "P2", "--c2", "F3", "--glue", "l=f", "--json", str(out_json)], capsys)
    assert code == 1
    assert json.loads(out_json.read_text())["cy"] is False
    assert "FAIL" in out


def test_check_input_errors(tmp_path, capsys):
    code, _, err = run(["check", "--c1", "P2", "--c2", "F3", "--glue", "e=e"], capsys)
    assert code == 3 and "unknown label" in err
    bad = tmp_path / "bad.snc"
    bad.write_text("component 1 = P2\nglue 1:l ~ 2:e\n")
    code, _, err = run(["check", str(bad)], capsys)
    assert code == 3 and "line 2" in err
    code, _, err = run(["check"], capsys)
    assert code == 3


def test_check_snc_file_and_catalog(tmp_path, capsys):
    snc = tmp_path / "s.snc"
    snc.write_text("component 1 = P2\ncomponent 2 = F3\nglue 1:l ~ 2:e\n")
    cat = tmp_path / "cat.txt"
    cat.write_text("# only the fiber on F3\n2: f\n2: -e-f candidate\n")
    code, out, _ = run(["check", str(snc), "--catalog", str(cat)], capsys)
    assert code == 2
    assert "user-supplied" in out
    cat.write_text("2: e\n2: f\n")
    code, _, _ = run(["check", str(snc), "--catalog", str(cat)], capsys)
    assert code == 0
    cat.write_text("7: e\n")
    code, _, err = run(["check", str(snc), "--catalog", str(cat)], capsys)
    assert code == 3 and "no component 7" in err


def test_check_rank3_a_max(tmp_path, capsys):
    snc = tmp_path / "chain.snc"
    snc.write_text("component 1 = F2\ncomponent 2 = F0\ncomponent 3 = F2\n"
                   "glue 1:e ~ 2:f1\nglue 2:f1 ~ 3:e\n")
    code, out, _ = run(["check", str(snc), "--a-max", "0"], capsys)
    assert code == 2 and "Inconclusive" in out


def test_table_selectors(tmp_path, capsys):
    out_json = tmp_path / "t.json"
    code, out, _ = run(["table", "table1", "--json", str(out_json)], capsys)
    assert code == 0
    assert "CY pass 31/31, PreShrinkable 31/31" in out
    data = json.loads(out_json.read_text())
    assert len(data["entries"]) == 31
    code, out, _ = run(["table", "61"], capsys)
    assert code == 0 and "PreShrinkable" in out and "Unknown" in out and "not known yet" in out
    code, out, _ = run(["table", "22"], capsys)
    assert "paper-ambiguous" in out and "dP2 u dP2" in out
    code, _, err = run(["table", "99"], capsys)
    assert code == 3


def test_fan_weights_with_svg(tmp_path, capsys):
    svg = tmp_path / "f.svg"
    code, out, _ = run(["fan", "--weights", "1,2,4", "--svg", str(svg)], capsys)
    assert code == 0
    assert out.count(" F2 ") == 3
    assert svg.read_text().count('class="interior"') == 3


def test_fan_quotient_matches_weights(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    run(["fan", "--weights", "1,2,4", "--json", str(a)], capsys)
    run(["fan", "--quotient", "7:1,2,4", "--json", str(b)], capsys)
    assert json.loads(a.read_text()) == json.loads(b.read_text())


def test_fan_errors(capsys):
    code, _, err = run(["fan", "--weights", "2,2,4"], capsys)
    assert code == 3 and "gcd" in err
    code, _, _ = run(["fan", "--weights", "1,x,4"], capsys)
    assert code == 3
    code, _, _ = run(["fan"], capsys)
    assert code == 3


def test_fan_figure_and_triangulation_file(tmp_path, capsys):
    code, out, _ = run(["fan", "--figure", "P134"], capsys)
    assert code == 0 and "Bl3F2" in out and "flops        1" in out
    edges = str(triangulation_path("P134"))
    code, out, _ = run(["fan", "--polygon", "0,1 1,0 -3,-4", "--triangulation", edges], capsys)
    assert code == 0 and "Bl3F2" in out
    partial = tmp_path / "e.txt"
    partial.write_text("edge (0,0)-(-1,-1)\n")
    code, _, err = run(["fan", "--polygon", "0,1 1,0 -3,-4", "--triangulation", str(partial)], capsys)
    assert code == 3


def test_embed(tmp_path, capsys):
    out_json = tmp_path / "e.json"
    code, out, _ = run(["embed", "--c1", "P2", "--c2", "F3", "--glue", "l=e", "--json", str(out_json)], capsys)
    assert code == 0
    kinds = [r["kind"] for r in json.loads(out_json.read_text())["recipes"]]
    assert kinds == ["RootStackBlowup", "CanonicalStackContraction", "Toric"]
    code, out, _ = run(["embed", "--entry", "64"], capsys)
    assert code == 2 and "Unknown" in out
    code, out, _ = run(["embed", "--c1", "F2", "--c2", "F4", "--glue", "e+2f=e"], capsys)
    assert code == 0 and "hw partner   F4 u F0 (e~f1+f2)" in out


def test_hj(tmp_path, capsys):
    out_json = tmp_path / "h.json"
    code, out, _ = run(["hj", "--sing", "3,1", "--json", str(out_json)], capsys)
    assert code == 0 and "[-3]" in out
    assert json.loads(out_json.read_text()) == {"r": 3, "q": 1, "chain": [-3], "outcome": "Isolated3FoldPoint"}
    code, _, _ = run(["hj", "--sing", "4,2"], capsys)
    assert code == 3


def test_json_to_stdout(capsys):
    code, out, _ = run(["hj", "--sing", "5,2", "--json", "-"], capsys)
    payload = out[out.index("{"):]
    assert json.loads(payload)["chain"] == [-3, -2]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "shrinkcy", "check", "--c1", "P2", "--c2", "F3",
                           "--glue", "l=e"], capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert "PreShrinkable" in proc.stdout


@pytest.mark.parametrize("argv, code", [
    (["check", "--entry", "1"], 0),
    (["check", "--entry", "22"], 0),
    (["embed", "--entry", "61"], 2),
])
def test_exit_codes_follow_status(argv, code, capsys):
    assert run(argv, capsys)[0] == code
