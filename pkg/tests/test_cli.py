import json

import pytest

from cliffspec.cli import main, oracle_check
from cliffspec.pauli import triple_to_obj

from conftest import sample_triples


def _run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_witness_example_41(capsys):
    code, out, _ = _run(capsys, "witness", "--example", "ex4.1")
    assert code == 0
    obj = json.loads(out)
    assert obj["branch"] == "NonpositiveC"
    assert obj["d_value"] == pytest.approx(-24, abs=1e-9)


def test_det_example_44_origin(capsys):
    code, out, _ = _run(capsys, "det", "--example", "ex4.4", "--point", "0,0,0")
    obj = json.loads(out)
    assert code == 0
    assert abs(obj["D"]) <= 1e-12 and abs(obj["oracle"]) <= 1e-12 and obj["diff"] <= 1e-12


def test_decompose_and_classify(capsys):
    code, out, _ = _run(capsys, "decompose", "--example", "ex4.1")
    obj = json.loads(out)
    assert code == 0 and obj["canonical"]["a"] == pytest.approx([2, 1, 2])
    code, out, _ = _run(capsys, "classify", "--example", "ex4.3")
    obj = json.loads(out)
    assert obj["kind"] == "CassiniHyperboloid" and obj["components_hint"] == "TwoComponents"


def test_input_file(tmp_path, capsys):
    t = sample_triples(1)[0]
    path = tmp_path / "t.json"
    path.write_text(json.dumps(triple_to_obj(t)))
    code, out, _ = _run(capsys, "witness", "--input", str(path))
    assert code == 0 and json.loads(out)["gap_at_point"] <= 1e-3


@pytest.mark.parametrize("fmt", ["obj", "ply", "csv"])
def test_surface_writes_file(tmp_path, capsys, fmt):
    out_path = tmp_path / f"mesh.{fmt}"
    code, out, _ = _run(capsys, "surface", "--example", "ex4.1", "--resolution", "24",
                        "--format", fmt, "--output", str(out_path))
    assert code == 0 and json.loads(out)["components"] == 1
    first = out_path.read_bytes()
    _run(capsys, "surface", "--example", "ex4.1", "--resolution", "24", "--format", fmt,
         "--output", str(out_path))
    assert out_path.read_bytes() == first


def test_quadratic_lemniscate(capsys):
    code, out, _ = _run(capsys, "quadratic", "--example", "lemniscate", "--resolution", "21")
    obj = json.loads(out)
    assert code == 0 and obj["min_gap"] == pytest.approx(0.5, abs=1e-12)
    assert obj["clifford_witness_d"] <= 1e-12


def test_examples_table(capsys):
    code, out, _ = _run(capsys, "examples", "--resolution", "48")
    assert code == 0
    assert out.count("PASS") == 6
    assert "c=208 vs stated 148" in out


def test_oracle_check_small(capsys):
    code, out, _ = _run(capsys, "oracle-check", "--trials", "50", "--seed", "3")
    obj = json.loads(out)
    assert code == 0 and obj["pass"] and obj["max_mixed_error"] <= 1e-8
    assert oracle_check(50, 3) == obj["max_mixed_error"]


@pytest.mark.parametrize("argv", [
    ["witness"],
    ["witness", "--example", "ex4.1", "--input", "x.json"],
    ["witness", "--example", "nope"],
    ["det", "--example", "ex4.1", "--point", "1,2"],
    ["det", "--example", "ex4.1", "--point", "1, 2, x"],
    ["det", "--example", "ex4.1"],
    ["surface", "--example", "ex4.1", "--format", "stl", "--output", "m.stl"],
    ["surface", "--example", "ex4.1"],
    ["oracle-check", "--trials", "0"],
    ["oracle-check", "--seed", "-1"],
    ["oracle-check", "--example", "ex4.1"],
    ["frobnicate"],
])
def test_validation_errors_exit_1(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        code = main(argv)
        raise SystemExit(code)
    assert exc.value.code == 1


def test_malformed_json_reports_position(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text('{\n  "A1": [1,\n}')
    code, _, err = _run(capsys, "witness", "--input", str(path))
    assert code == 1 and "line 3 column 1" in err


def test_non_hermitian_input_exit_1(tmp_path, capsys):
    obj = triple_to_obj(sample_triples(1)[0])
    obj["A1"][0][1]["im"] += 1.0
    path = tmp_path / "t.json"
    path.write_text(json.dumps(obj))
    code, _, err = _run(capsys, "witness", "--input", str(path))
    assert code == 1 and "A1" in err


def test_missing_file_exit_1(capsys):
    code, _, _ = _run(capsys, "witness", "--input", "/nonexistent/t.json")
    assert code == 1


def test_internal_error_exit_2(capsys, monkeypatch):
    import cliffspec.cli as cli
    from cliffspec.errors import InternalConsistencyError

    def boom(*a, **k):
        raise InternalConsistencyError("forced")

    monkeypatch.setattr(cli, "witness_point", boom)
    code, _, err = _run(capsys, "witness", "--example", "ex4.1")
    assert code == 2 and "forced" in err


def test_oracle_breach_exit_2(capsys, monkeypatch):
    import cliffspec.cli as cli
    monkeypatch.setattr(cli, "oracle_check", lambda trials, seed: 1.0)
    code, out, _ = _run(capsys, "oracle-check", "--trials", "1")
    assert code == 2 and json.loads(out)["pass"] is False
