import json
import shutil

import pytest

from heckedecomp import cli
from heckedecomp.exactnum import RootOfUnity

ZETA8_MATRIX = """\
          | phi{1,0} phi{2,1} phi{1,12} phi{2,4} phi{2,5}
---------------------------------------------------------
phi{1,0}  |        1        .         .        .        .
phi{3,2}  |        1        1         .        .        .
phi{4,3}  |        1        1         1        .        .
phi{2,1}  |        .        1         .        .        .
phi{3,6}  |        .        1         1        .        .
phi{1,12} |        .        .         1        .        .
---------------------------------------------------------
phi{2,4}  |        .        .         .        1        .
---------------------------------------------------------
phi{2,5}  |        .        .         .        .        1
---------------------------------------------------------
"""


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize(
    "text,expected",
    [
        ("1", RootOfUnity(1, 0)),
        ("-1", RootOfUnity(2, 1)),
        ("zeta8", RootOfUnity(8, 1)),
        ("zeta8^3", RootOfUnity(8, 3)),
        ("E(12)^5", RootOfUnity(12, 5)),
        (" E(6) ", RootOfUnity(6, 1)),
    ],
)
def test_parse_q(text, expected):
    assert cli.parse_q(text) == expected


@pytest.mark.parametrize("text", ["2", "zeta", "zeta0", "E(8", "q", "zeta8^"])
def test_parse_q_rejects(text):
    with pytest.raises(cli.UsageError):
        cli.parse_q(text)


def test_parse_q_list():
    assert cli.parse_q_list("1,-1, zeta8") == [RootOfUnity(1, 0), RootOfUnity(2, 1), RootOfUnity(8, 1)]


def test_validate_shipped(capsys):
    code, out, _ = run(capsys, "validate")
    assert code == 0
    assert "G4.json: ok" in out and "G12.json: ok" in out


def test_validate_corrupted(tmp_path, capsys):
    raw = json.loads((cli.DATA_DIR / "G4.json").read_text())
    raw["representations"]["phi{1,4}"] = raw["representations"]["phi{1,8}"]
    (tmp_path / "G4.json").write_text(json.dumps(raw))
    code, out, _ = run(capsys, "validate", "--data-dir", str(tmp_path))
    assert code == 1
    assert "FAILED" in out


def test_validate_unreadable(tmp_path, capsys):
    (tmp_path / "G4.json").write_text('{"format_version": 1}')
    code, out, _ = run(capsys, "validate", "--data-dir", str(tmp_path))
    assert code == 1 and "ERROR" in out


def test_validate_empty_dir(tmp_path, capsys):
    code, _, err = run(capsys, "validate", "--data-dir", str(tmp_path))
    assert code == 2 and "no datasets" in err


def test_orders(capsys):
    code, out, _ = run(capsys, "orders", "--group", "G12", "--format", "json")
    assert code == 0
    assert json.loads(out)["critical_orders"] == [1, 2, 8, 12, 24]


def test_unknown_group(capsys):
    code, _, err = run(capsys, "decompose", "--group", "G99", "--q", "zeta8")
    assert code == 2 and "unknown group" in err


def test_bad_q(capsys):
    code, _, err = run(capsys, "blocks", "--group", "G12", "--q", "zeta")
    assert code == 2 and "cannot parse" in err


def test_decompose_text_zeta8(capsys):
    code, out, _ = run(capsys, "decompose", "--group", "G12", "--q", "zeta8")
    assert code == 0
    assert ZETA8_MATRIX in out
    assert "optimal basic set: phi{1,0}, phi{1,12}, phi{2,1}, phi{2,4}, phi{2,5}" in out
    assert "broue invariants: ok" in out


def test_decompose_semisimple_is_identity(capsys):
    code, out, _ = run(capsys, "decompose", "--group", "G12", "--q", "zeta5", "--format", "json")
    assert code == 0
    m = json.loads(out)["matrix"]
    assert m["entries"] == [[int(i == j) for j in range(8)] for i in range(8)]


def test_json_deterministic_and_round_trips(capsys):
    argv = ("decompose", "--group", "G4", "--q", "zeta6,-1", "--format", "json")
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    assert first == second
    reports = json.loads(first)
    assert [r["q"] for r in reports] == ["zeta6", "-1"]
    assert cli.dumps(reports) + "\n" == first
    assert all(r["format_version"] == cli.REPORT_VERSION for r in reports)
    assert all("timings" not in r for r in reports)


def test_timings_flag(capsys):
    _, out, _ = run(capsys, "blocks", "--group", "G4", "--q", "-1", "--format", "json", "--timings")
    assert "timings" in json.loads(out)


def test_golden_shipped(capsys):
    code, out, _ = run(capsys, "golden")
    assert code == 0
    assert out.count(": ok") == 8


def test_golden_detects_swap(tmp_path, capsys):
    for p in cli.dataset_files(cli.DATA_DIR):
        shutil.copy(p, tmp_path)
    records = json.loads((cli.DATA_DIR / cli.GOLDEN_FILE).read_text())
    rec = next(r for r in records if r["group"] == "G4" and r["q_order"] == 6)
    rec["blocks"][0]["members"] = ["phi{1,0}", "phi{1,8}", "phi{1,4}"]
    (tmp_path / cli.GOLDEN_FILE).write_text(json.dumps(records))
    code, out, _ = run(capsys, "golden", "--data-dir", str(tmp_path))
    assert code == 1
    assert "G4 q_order=6: MISMATCH" in out
    assert out.count("MISMATCH") == 1


def test_golden_missing_file(tmp_path, capsys):
    code, _, err = run(capsys, "golden", "--golden", str(tmp_path / "none.json"))
    assert code == 2 and "not found" in err
