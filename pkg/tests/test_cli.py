import json
import subprocess
import sys

import pytest

from rosewindow.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr()


def test_classify_text(capsys):
    code, out = run(capsys, "classify", "20", "10", "3")
    assert code == 0
    assert "F2(-)" in out.out and "vt=true" in out.out and "cayley=false" in out.out


def test_classify_json_search(capsys):
    code, out = run(capsys, "classify", "10", "3", "4", "--json", "--search")
    assert code == 0
    obj = json.loads(out.out)
    assert obj["aut_order"] == 320 and obj["cayley_search"] is False and obj["vt_search"] is True


def test_classify_non_vt(capsys):
    code, out = run(capsys, "classify", "7", "2", "2", "--search", "--json")
    obj = json.loads(out.out)
    assert code == 0 and obj["vt_search"] is False and obj["aut_order"] == 14 and obj["edge_orbits"] == 3


def test_usage_errors_exit_2(capsys):
    assert run(capsys, "classify", "2", "1", "1")[0] == 2
    assert run(capsys, "survey", "--max-n", "2")[0] == 2
    assert run(capsys, "aut", "7", "2", "2", "--method", "paper")[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["export", "6", "1", "2", "--format", "svg"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


def test_capacity_exit_3(capsys, monkeypatch):
    monkeypatch.setenv("RW_ENUM_CAP", "5")
    assert run(capsys, "is-cayley", "10", "3", "4")[0] == 3
    assert run(capsys, "aut", "120", "2", "1")[0] == 3


@pytest.mark.parametrize("args,nodes,edges", [(("6", "1", "2"), 12, 24), (("4", "2", "1"), 8, 16)])
def test_export_counts(capsys, args, nodes, edges):
    code, out = run(capsys, "export", *args, "--format", "json")
    obj = json.loads(out.out)
    assert code == 0 and len(obj["edges"]) == edges
    assert len({v for e in obj["edges"] for v in e[:2]}) == nodes
    code, out = run(capsys, "export", *args)
    lines = out.out.splitlines()
    assert sum(" -- " in x for x in lines) == edges
    assert sum(x.strip().endswith(";") and " -- " not in x for x in lines) == nodes


def test_export_to_file(capsys, tmp_path):
    target = tmp_path / "g.dot"
    assert run(capsys, "export", "6", "1", "2", "--out", str(target))[0] == 0
    assert target.read_text().startswith("graph R_6_1_2 {")


def test_aut_json(capsys):
    code, out = run(capsys, "aut", "20", "10", "3", "--json")
    obj = json.loads(out.out)
    assert code == 0 and obj["order"] == 160 and obj["edge_orbits"] == 2
    code, out = run(capsys, "aut", "20", "10", "3", "--method", "paper", "--json")
    assert json.loads(out.out)["order"] == 160


def test_is_cayley(capsys):
    code, out = run(capsys, "is-cayley", "36", "11", "28", "--json")
    obj = json.loads(out.out)
    assert code == 0 and obj["is_cayley"] is True
    assert obj["witness"]["order"] == 72
    assert set(obj["witness"]) >= {"case", "generators", "order", "relations_checked"}
    code, out = run(capsys, "is-cayley", "20", "10", "3")
    assert "not Cayley" in out.out


def _survey(tmp_path, capsys, jobs):
    target = tmp_path / f"s{jobs}.jsonl"
    code, _ = run(capsys, "survey", "--max-n", "8", "--jobs", str(jobs), "--out", str(target))
    return code, target.read_text()


def test_survey_format_and_determinism(capsys, tmp_path):
    code1, text1 = _survey(tmp_path, capsys, 1)
    code2, text2 = _survey(tmp_path, capsys, 2)
    assert code1 == code2 == 0
    assert text1 == text2
    lines = [json.loads(x) for x in text1.splitlines()]
    header, records, summary = lines[0], lines[1:-1], lines[-1]
    assert header["type"] == "header" and header["max_n"] == 8
    assert summary["type"] == "summary" and summary["records"] == len(records)
    keys = [(o["n"], o["a"], o["r"]) for o in records]
    assert keys == sorted(keys) and len(set(keys)) == len(keys)
    for o in records:
        assert o["type"] == "record"
        if o["degenerate"]:
            assert "cayley_search" not in o and "vt_search" not in o
        else:
            assert o["disagreements"] == []
    assert summary["degenerate"] == sum(o["degenerate"] for o in records) > 0


def test_verify_json(capsys):
    code, out = run(capsys, "verify-paper", "--json")
    rows = json.loads(out.out)
    assert len(rows) == 9
    assert code == (0 if all(r["passed"] for r in rows) else 1)


def test_console_script_entry_point():
    proc = subprocess.run([sys.executable, "-m", "rosewindow.cli", "--version"], capture_output=True, text=True)
    assert proc.returncode == 0 and "rw" in proc.stdout
