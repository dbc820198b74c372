"""Tests for the command-line front end: exit codes, output schemas, and
byte-identical reruns."""

import json

import pytest

from diaglab.cli import main, parse_X_spec, UsageError

TEST_FORM_JSON = '{"s": 5, "equations": [{"degree": 2, "coeffs": [1, 1, 1, -1, -1]}]}'
QUAD1_JSON = '{"s": 1, "equations": [{"degree": 2, "coeffs": [1]}]}'


@pytest.fixture
def form_file(tmp_path):
    path = tmp_path / "form.json"
    path.write_text(TEST_FORM_JSON)
    return str(path)


def test_parse_X_spec():
    assert parse_X_spec("1,2,3") == [1, 2, 3]
    assert parse_X_spec("4:16:2") == [4, 8, 16]
    with pytest.raises(UsageError):
        parse_X_spec("4:16")
    with pytest.raises(UsageError):
        parse_X_spec("a,b")


def test_validate_ok(form_file, capsys):
    assert main(["validate", "--system", form_file]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["report"]["all_blocks_pass"] is True
    assert doc["meta"]["system_digest"]


def test_validate_singular_columns(tmp_path, capsys):
    path = tmp_path / "dup.json"
    path.write_text('{"s": 3, "equations": ['
                    '{"degree": 2, "coeffs": [1, 1, 2]},'
                    '{"degree": 3, "coeffs": [1, 0, 1]}]}')
    assert main(["validate", "--system", str(path)]) == 1
    err = capsys.readouterr().err
    assert "columns {2} singular" in err


def test_validate_missing_file():
    assert main(["validate", "--system", "/no/such/file.json"]) == 2


def test_count_closed_form_csv(tmp_path, capsys):
    path = tmp_path / "q1.json"
    path.write_text(QUAD1_JSON)
    assert main(["count", "--system", str(path), "--X", "1,2,3",
                 "--mode", "difference", "--format", "csv"]) == 0
    out = capsys.readouterr().out
    rows = [line for line in out.splitlines() if not line.startswith("#")]
    assert rows[0] == "X,count,method,seconds"
    assert [r.split(",")[1] for r in rows[1:]] == ["5", "9", "13"]


def test_count_invalid_mode(form_file):
    assert main(["count", "--system", form_file, "--X", "2",
                 "--mode", "bogus"]) == 2


def test_expsum_trivial(capsys):
    assert main(["expsum", "S", "--q", "1"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["report"]["re"] == pytest.approx(1.0)
    assert doc["report"]["im"] == pytest.approx(0.0)


def test_sseries_trivial(form_file, capsys):
    assert main(["sseries", "--system", form_file, "--Q", "1"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["report"]["partial"] == 1.0


def test_fit_synthetic_series(capsys):
    xs = [2, 4, 8, 16]
    counts = ",".join(str(x**5) for x in xs)
    assert main(["fit", "--X", "2,4,8,16", "--counts", counts]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["report"]["slope"] == pytest.approx(5.0, abs=1e-9)


def test_localsolve_real(form_file, capsys):
    assert main(["localsolve", "--system", form_file]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["report"]["found"] is True


def test_byte_identical_reruns(form_file, tmp_path):
    out1, out2, out3 = (str(tmp_path / f"r{i}.csv") for i in range(3))
    argv = ["count", "--system", form_file, "--X", "1,2,3",
            "--mode", "difference", "--format", "csv"]
    assert main(argv + ["--out", out1]) == 0
    assert main(argv + ["--out", out2]) == 0
    assert main(argv + ["--workers", "3", "--out", out3]) == 0
    b1 = open(out1, "rb").read()
    assert b1 == open(out2, "rb").read()
    # worker count appears in the embedded config line; the data rows
    # themselves must not depend on it
    data = lambda b: [ln for ln in b.splitlines() if not ln.startswith(b"#")]
    assert data(b1) == data(open(out3, "rb").read())


def test_predict_p0_caveat(form_file, capsys):
    assert main(["predict", "--system", form_file, "--P0", "1",
                 "--chi-method", "quadrature", "--Q", "8"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert any("P0=1" in c for c in doc["report"]["caveats"])
