import csv
import io
import json

import pytest

from wolstenholme import cli, modmath
from wolstenholme.scan import FIELDS, ScanConfig, scan_to_string, validate_record


def run(argv):
    out = io.StringIO()
    code = cli.main(argv, out)
    return code, out.getvalue()


def test_scan_small_range():
    text, summary = scan_to_string(ScanConfig(7, 100))
    lines = text.splitlines()
    # 7, 11, ..., 97: pi(100) - pi(6) = 25 - 3
    assert len(lines) == 22 and summary.count == 22
    assert summary.flagged == [] and summary.ok
    ps = []
    for line in lines:
        rec = validate_record(json.loads(line))
        assert json.dumps(rec) == line
        ps.append(rec["p"])
    assert ps == sorted(ps) and ps[0] == 7 and ps[-1] == 97
    first = json.loads(lines[0])
    assert first["bern_p5"] is None and first["v_binom_minus_1"] == 3


def test_scan_flags_16843():
    text, summary = scan_to_string(ScanConfig(16840, 16850))
    assert summary.flagged == [16843] and summary.count == 1
    assert json.loads(text)["wolstenholme"] is True


def test_validate_record_rejects():
    rec = json.loads(scan_to_string(ScanConfig(7, 8))[0])
    with pytest.raises(ValueError):
        validate_record({**rec, "p": True})
    with pytest.raises(ValueError):
        validate_record({k: rec[k] for k in reversed(FIELDS)})
    bad = dict(rec)
    del bad["failures"]
    with pytest.raises(ValueError):
        validate_record(bad)


def test_csv_output():
    text, _ = scan_to_string(ScanConfig(7, 30, format="csv"))
    rows = list(csv.reader(io.StringIO(text)))
    assert tuple(rows[0]) == FIELDS
    assert rows[1][0] == "7" and rows[1][FIELDS.index("bern_p5")] == ""
    assert rows[1][FIELDS.index("wolstenholme")] == "false"
    assert len(rows) == 1 + 7


def test_deep_scan_and_jobs_identical():
    a, _ = scan_to_string(ScanConfig(7, 600, jobs=1, deep=True))
    b, _ = scan_to_string(ScanConfig(7, 600, jobs=3, deep=True))
    assert a == b


def test_config_validation():
    for args in ((5, 100), (100, 100), (7, (1 << 21) + 1)):
        with pytest.raises(ValueError):
            ScanConfig(*args)
    with pytest.raises(ValueError):
        ScanConfig(7, 100, jobs=0)


def test_cli_check(capsys):
    code, out = run(["check", "7"])
    assert code == 0
    rec = json.loads(out.strip().splitlines()[-1])
    assert rec["wolstenholme"] is False and rec["failures"] == []
    code, out = run(["check", "16843"])
    assert code == 0 and json.loads(out.strip().splitlines()[-1])["wolstenholme"] is True


@pytest.mark.parametrize("argv", [["check", "9"], ["check", "5"], ["check", "x"], ["scan", "7"], ["scan", "3", "100"], []])
def test_cli_usage_errors(argv, capsys):
    assert run(argv)[0] == 2


def test_cli_scan_to_file(tmp_path, capsys):
    path = tmp_path / "s.jsonl"
    code, out = run(["scan", "16800", "16900", "--out", str(path)])
    assert code == 0 and out == ""
    recs = [json.loads(line) for line in path.read_text().splitlines()]
    assert [r["p"] for r in recs if r["wolstenholme"]] == [16843]
    err = capsys.readouterr().err
    assert "WOLSTENHOLME PRIME: 16843" in err and "# scanned" in err


def test_cli_bernoulli():
    code, out = run(["bernoulli", "7"])
    assert code == 0
    assert out.splitlines() == [
        "B_(p-3) mod p = 3",
        "B_(p-5) mod p = unsupported (p < 11)",
        "B_(p^3-p^2-2) mod p^2 = 44",
    ]


def test_cli_oracle_passes():
    code, out = run(["oracle", "--max-p", "31"])
    assert code == 0
    assert "newton_vs_bruteforce" in out and "FAIL" not in out
    assert run(["oracle", "--max-p", "5000"])[0] == 2


def test_cli_oracle_catches_broken_batch_inv(monkeypatch):
    real = modmath.batch_inv

    def off_by_one(xs):
        out = real(xs)
        return [r + 1 for r in out]

    monkeypatch.setattr(modmath, "batch_inv", off_by_one)
    code, out = run(["oracle", "--max-p", "31"])
    assert code != 0
    assert "FAIL  batch_inverse" in out
