import csv
import json

import numpy as np
import pytest

from crlie import io
from crlie.atlas import builtin_algebra
from crlie.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_classify_sl2(capsys):
    code, out, _ = run(capsys, "classify", "--group", "sl2r", "--t", "0.5")
    data = json.loads(out)
    assert code == 0
    assert data["type"] == "Elliptic" and data["spherical"] is False
    assert data["canonical_t"] == pytest.approx(0.5, abs=1e-12)
    assert data["tol"] == 1e-9


def test_classify_hyperbolic_line(capsys):
    t = -3 + 2 * np.sqrt(2)
    code, out, _ = run(capsys, "classify", "--group", "sl2r", "--t", repr(float(t)))
    data = json.loads(out)
    assert code == 0 and data["type"] == "Hyperbolic" and data["spherical"] is True


def test_invariants_e2(capsys):
    code, out, _ = run(capsys, "invariants", "--group", "e2")
    data = json.loads(out)
    assert code == 0
    assert np.allclose([data["triple"][k] for k in ("a", "b", "c")], [[0, 0], [0, 0.5], [0, -0.5]], atol=1e-12)
    assert data["spherical"] is False
    assert "tol" in data


def test_invariants_su2_text(capsys):
    code, out, _ = run(capsys, "invariants", "--group", "su2", "--t", "2", "--format", "text")
    assert code == 0 and "spherical: False" in out


def test_invariants_custom_line_and_tol(capsys):
    code, out, _ = run(capsys, "invariants", "--group", "heis", "--line", "1", "0", "0", "1", "0", "0", "--tol", "1e-6")
    data = json.loads(out)
    assert code == 0 and data["spherical"] is True and data["tol"] == 1e-6


def test_realize(capsys, tmp_path):
    path = tmp_path / "pts.csv"
    code, out, _ = run(capsys, "realize", "--group", "heis", "--samples", "7", "--csv", str(path), "--points")
    data = json.loads(out)
    assert code == 0 and data["model"] == "heis" and data["max_residual"] < 1e-8
    assert len(data["points"]) == 7
    rows = list(csv.reader(path.open()))
    assert rows[0] == ["re_z1", "im_z1", "re_z2", "im_z2"] and len(rows) == 8


def test_realize_spherical_sl2(capsys):
    code, out, _ = run(capsys, "realize", "--group", "sl2r", "--t", "1", "--samples", "20")
    assert code == 0 and json.loads(out)["model"] == "sl2_elliptic_spherical"


def test_byte_determinism(capsys):
    for argv in (["classify", "--group", "su2", "--t", "3"], ["invariants", "--group", "sl2r", "--t", "-0.4"],
                 ["realize", "--group", "e2", "--samples", "15", "--seed", "5", "--points"]):
        _, first, _ = run(capsys, *argv)
        _, second, _ = run(capsys, *argv)
        assert first == second


@pytest.mark.parametrize("argv", [
    ["classify", "--group", "sl2r"],
    ["classify", "--group", "heis", "--t", "1"],
    ["classify", "--group", "sl2r", "--t", "0"],
    ["classify", "--group", "heis", "--line", "1", "0", "0", "0", "0", "1"],
    ["classify", "--group", "sl2r", "--line", "0", "0", "0", "0", "0", "0"],
    ["classify"],
    ["realize", "--group", "heis", "--samples", "0"],
    ["invariants", "--algebra-file", "/nonexistent/alg.json", "--line", "1", "0", "0", "1", "0", "0"],
])
def test_usage_errors_exit_2(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2 and out == ""
    assert len(err.strip().splitlines()) == 1


def test_argparse_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["classify", "--group", "so3"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["classify", "--group", "sl2r", "--t", "0.5", "--line", "1", "0", "0", "1", "0", "0"])
    assert exc.value.code == 2


def test_verify(capsys):
    code, out, _ = run(capsys, "verify")
    assert code == 0 and "FAIL" not in out
    code, out, _ = run(capsys, "verify", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["passed"] is True and len(data["checks"]) >= 10


def test_verify_failure_exit_1(capsys, monkeypatch):
    from crlie import cli
    from crlie.verify import CheckResult

    monkeypatch.setattr(cli, "run_all", lambda: [CheckResult("forced", False, "broken on purpose")])
    code, out, _ = run(capsys, "verify")
    assert code == 1 and "forced" in out


# --- algebra files ------------------------------------------------------------------------------

def test_algebra_file_round_trip(capsys, tmp_path):
    for tag in ("sl2r", "heis"):
        d = io.algebra_to_dict(builtin_algebra(tag))
        back = io.algebra_from_dict(json.loads(json.dumps(d)))
        assert np.allclose(back.structure, builtin_algebra(tag).structure)
    path = tmp_path / "heis.json"
    path.write_text(json.dumps(io.algebra_to_dict(builtin_algebra("heis"))))
    code, out, _ = run(capsys, "classify", "--algebra-file", str(path), "--line", "1", "0", "0", "1", "0", "0")
    data = json.loads(out)
    assert code == 0 and data["regularity"] == "Regular" and data["type"] is None
    code, out, _ = run(capsys, "invariants", "--algebra-file", str(path), "--line", "1", "0", "0", "1", "0", "0")
    assert code == 0 and json.loads(out)["spherical"] is True


def test_bad_algebra_file(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"brackets": [[0, 1, 2, 1.0], [1, 2, 0, 1.0], [0, 2, 0, 1.0]]}))
    code, _, err = run(capsys, "classify", "--algebra-file", str(path), "--line", "1", "0", "0", "1", "0", "0")
    assert code == 2 and "Jacobi" in err


def test_json_cleaning():
    assert io.dumps({"x": -0.0, "z": 1 / 3}) == io.dumps({"z": 0.333333333333333, "x": 0.0})
    assert io.cnum(1 - 2j) == [1.0, -2.0]
    assert io.to_jsonable(np.array([1j])) == [[0.0, 1.0]]
