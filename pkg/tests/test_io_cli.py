import json

import numpy as np
import pytest

from fracspace import (
    InputFormatError,
    canonical_ball_family,
    export_kernel,
    import_kernel,
    load_function,
    load_space,
    save_function,
    save_space,
    standard_kernel,
)
from fracspace.cli import run
from fracspace.harness import make_space


def test_space_round_trip(tmp_path, grid16):
    path = tmp_path / "space.json"
    save_space(grid16, path)
    loaded = load_space(path)
    fam_a = [(b.center, b.members) for b in canonical_ball_family(grid16)]
    fam_b = [(b.center, b.members) for b in canonical_ball_family(loaded)]
    assert fam_a == fam_b
    assert loaded.dim_n == grid16.dim_n


def test_space_file_rejects_unknown_fields(tmp_path):
    doc = {
        "points": {"coords": [[0.0], [1.0]]},
        "weights": [1.0, 1.0],
        "lambda": {"type": "power", "c": 4.0, "k": 1.0},
        "dim_n": 1.0,
        "comment": "nope",
    }
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(doc))
    with pytest.raises(InputFormatError):
        load_space(path)
    doc.pop("comment")
    doc["points"]["extra"] = 1
    path.write_text(json.dumps(doc))
    with pytest.raises(InputFormatError):
        load_space(path)


def test_space_file_coords(tmp_path):
    doc = {
        "points": {"coords": [[0.0, 0.0], [3.0, 4.0]]},
        "weights": [1.0, 1.0],
        "lambda": {"type": "power", "c": 2.0, "k": 1.0},
        "dim_n": 1.0,
    }
    path = tmp_path / "space.json"
    path.write_text(json.dumps(doc))
    s = load_space(path)
    assert s.distances[0, 1] == pytest.approx(5.0)


def test_function_file(tmp_path):
    path = tmp_path / "f.json"
    save_function([1.0, -2.5], path)
    assert np.array_equal(load_function(path, 2), [1.0, -2.5])
    with pytest.raises(InputFormatError):
        load_function(path, 3)
    path.write_text('{"a": 1}')
    with pytest.raises(InputFormatError):
        load_function(path)


def test_kernel_round_trip(tmp_path, two_point):
    k = standard_kernel(two_point, 0.5)
    path = tmp_path / "kernel.json"
    export_kernel(k.values, path)
    back = import_kernel(path, 2)
    assert np.allclose(back, k.values)
    rows = json.loads(path.read_text())
    assert all(len(r) == 3 and r[0] != r[1] for r in rows)


def _two_point_file(tmp_path):
    doc = {
        "points": {"distance_matrix": [[0.0, 1.0], [1.0, 0.0]]},
        "weights": [1.0, 1.0],
        "lambda": {"type": "power", "c": 2.0, "k": 1.0},
        "dim_n": 1.0,
    }
    path = tmp_path / "two.json"
    path.write_text(json.dumps(doc))
    return str(path)


def test_cli_kcoeff_two_point(tmp_path, capsys):
    # [DERIVED] prints the 1 + 1/6 + 1/36 hand value
    space = _two_point_file(tmp_path)
    code = run(["kcoeff", "--space", space, "--radius", "1", "--radius2", "36",
                "--format", "structured"])
    out = json.loads(capsys.readouterr().out)
    assert code == 0
    assert out["fitted_constant"] == pytest.approx(1 + 1 / 6 + 1 / 36, abs=1e-12)


def test_cli_verify_deterministic(tmp_path):
    out1, out2 = tmp_path / "a.json", tmp_path / "b.json"
    assert run(["verify", "--space", "grid1d:16", "--seed", "7",
                "--format", "structured", "--out", str(out1)]) == 0
    assert run(["verify", "--space", "grid1d:16", "--seed", "7",
                "--format", "structured", "--out", str(out2)]) == 0
    assert out1.read_bytes() == out2.read_bytes()


def test_cli_apply_and_exit_codes(tmp_path, capsys):
    f = tmp_path / "f.json"
    f.write_text("[1.0, 0.0]")
    space = _two_point_file(tmp_path)
    code = run(["apply", "--space", space, "--function", str(f),
                "--alpha", "0.5", "--format", "structured"])
    out = json.loads(capsys.readouterr().out)
    assert code == 0
    assert out["details"]["values"][1] == pytest.approx(2 ** -0.5)

    # length mismatch: input error
    assert run(["apply", "--space", "grid1d:16", "--function", str(f)]) == 1
    capsys.readouterr()
    # missing function: input error
    assert run(["apply", "--space", "grid1d:16"]) == 1
    capsys.readouterr()
    # infeasible alpha: precondition error
    f16 = tmp_path / "f16.json"
    f16.write_text(json.dumps([1.0] * 16))
    assert run(["apply", "--space", "grid1d:16", "--function", str(f16),
                "--alpha", "5.0"]) == 2
    capsys.readouterr()
    # eta below the covering threshold: precondition error
    assert run(["maximal", "--space", "grid1d:16", "--function", str(f16),
                "--eta", "3.0"]) == 2
    capsys.readouterr()


def test_cli_rbmo_and_cover(tmp_path, capsys):
    b = tmp_path / "b.json"
    b.write_text(json.dumps(list(np.log1p(np.arange(16.0)))))
    assert run(["rbmo", "--space", "grid1d:16", "--b", str(b),
                "--format", "structured"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["fitted_constant"] > 0
    assert "osc_ball" in out["witness"]
    assert run(["cover", "--space", "grid1d:16"]) == 0
    capsys.readouterr()


def test_cli_space_and_kernel_check(capsys):
    assert run(["space-check", "--space", "grid1d:8"]) == 0
    capsys.readouterr()
    assert run(["kernel-check", "--space", "grid1d:8", "--alpha", "0.4",
                "--format", "structured"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["passed"]


def test_cli_commutator_and_multilinear(tmp_path, capsys):
    f = tmp_path / "f.json"
    b = tmp_path / "b.json"
    f.write_text(json.dumps([1.0] + [0.0] * 15))
    b.write_text(json.dumps(list(np.log1p(np.arange(16.0)))))
    assert run(["commutator", "--space", "grid1d:16", "--function", str(f),
                "--b", str(b)]) == 0
    capsys.readouterr()
    assert run(["multilinear", "--space", "grid1d:16", "--function", str(f),
                "--b", str(b), "--b", str(b)]) == 0
    capsys.readouterr()
    assert run(["sharp", "--space", "grid1d:16", "--function", str(f)]) == 0
    capsys.readouterr()
    assert run(["weaktype", "--space", "grid1d:16", "--function", str(f),
                "--r", "1.5"]) == 0
    capsys.readouterr()
