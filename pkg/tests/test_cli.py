import json
import subprocess
import sys

from dtower import cli
from dtower.cone import BorromeanReport
from dtower.io import read_complex, write_complex


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def write(tmp_path, name, doc):
    path = tmp_path / f"{name}.json"
    path.write_text(json.dumps(doc))
    return str(path)


def test_d_on_presets(capsys):
    code, out, _ = run(capsys, "d", "--preset", "unknot")
    assert code == 0
    assert out.splitlines() == ["d(S^3_{+1}(K)) = 0", "d(S^3_{-1}(K)) = 0"]
    code, out, _ = run(capsys, "d", "--preset", "rht")
    assert out.splitlines() == ["d(S^3_{+1}(K)) = -2", "d(S^3_{-1}(K)) = 0"]


def test_d_on_file(capsys, trefoil_file):
    code, out, _ = run(capsys, "d", str(trefoil_file))
    assert code == 0 and out.splitlines()[0] == "d(S^3_{+1}(K)) = -2"


def test_sum_then_d(capsys, tmp_path, trefoil_file):
    target = tmp_path / "double.json"
    code, out, _ = run(capsys, "sum", str(trefoil_file), str(trefoil_file), "-o", str(target))
    assert code == 0
    assert out.splitlines()[0] == "Created knot trefoil#trefoil with 9 generators"
    assert len(read_complex(target)) == 9
    code, out, _ = run(capsys, "d", str(target))
    assert out.splitlines() == ["d(S^3_{+1}(K)) = -2", "d(S^3_{-1}(K)) = 0"]


def test_sum_mixes_files_and_presets(capsys, trefoil_file):
    code, out, _ = run(capsys, "sum", str(trefoil_file), "--preset", "lht")
    assert code == 0
    doc = json.loads(out)
    assert len(doc["generators"]) == 9


def test_sum_needs_two_inputs(capsys):
    code, _, err = run(capsys, "sum", "--preset", "rht")
    assert code == 2 and "expected 2" in err


def test_info_format(capsys, trefoil_file):
    code, out, _ = run(capsys, "info", str(trefoil_file))
    assert out.splitlines() == [
        "knot trefoil: 3 generators, coefficients Z/2",
        "adjacency list",
        "[0]1,2,",
        "[1]",
        "[2]",
        "bifiltration levels",
        "F(0) = (1,1)",
        "F(1) = (0,1)",
        "F(2) = (1,0)",
    ]


def test_mirror_twice_is_identity(capsys, tmp_path, trefoil_file):
    once, twice = tmp_path / "m1.json", tmp_path / "m2.json"
    assert run(capsys, "mirror", str(trefoil_file), "-o", str(once))[0] == 0
    assert run(capsys, "mirror", str(once), "-o", str(twice))[0] == 0
    canon = tmp_path / "c.json"
    write_complex(read_complex(trefoil_file), canon)
    assert twice.read_bytes() == canon.read_bytes()


def test_validate_ok(capsys):
    code, out, _ = run(capsys, "validate", "--preset", "t34")
    assert code == 0 and "defines a filtered complex" in out


def test_parse_error_exit(capsys, tmp_path):
    path = tmp_path / "junk.json"
    path.write_text("{")
    code, _, err = run(capsys, "d", str(path))
    assert code == 2 and "PARSE" in err


def test_d_squared_exit_names_generator(capsys, tmp_path):
    path = write(tmp_path, "bad", {
        "generators": [{"id": "a", "i": 2, "j": 2}, {"id": "b", "i": 1, "j": 1}, {"id": "c", "i": 0, "j": 0}],
        "differential": [{"from": "a", "to": ["b"]}, {"from": "b", "to": ["c"]}],
    })
    code, _, err = run(capsys, "validate", path)
    assert code == 3
    assert "d_squared" in err and "a" in err.split("d_squared:")[1]


def test_filtration_increase_exit(capsys, tmp_path):
    path = write(tmp_path, "up", {
        "generators": [{"id": "a", "i": 0, "j": 0}, {"id": "b", "i": 1, "j": 0}],
        "differential": [{"from": "a", "to": ["b"]}],
    })
    code, _, err = run(capsys, "d", path)
    assert code == 3 and "filtration_increase" in err


def test_slice_rank_exit(capsys, tmp_path):
    path = write(tmp_path, "two", {"generators": [{"id": "a", "i": 0, "j": 0}, {"id": "b", "i": 0, "j": 0}]})
    code, _, err = run(capsys, "d", path)
    assert code == 4 and "SLICE_RANK" in err


def test_asymmetry_warning(capsys, tmp_path):
    path = write(tmp_path, "lopsided", {"generators": [{"id": "e", "i": 0, "j": 0}, {"id": "x", "i": 2, "j": 1},
                                                       {"id": "y", "i": 2, "j": 0}],
                                        "differential": [{"from": "x", "to": ["y"]}]})
    code, out, err = run(capsys, "d", path)
    assert code == 0 and "warning" in err


def test_borromean_output(capsys):
    code, out, _ = run(capsys, "borromean", "--genus", "1", "--sign", "-1")
    lines = out.splitlines()
    assert code == 0
    assert lines[0] == "towers: {0:2, 1:2}, d_b = 1, PASS"
    assert lines[1] == "expected: {0:2, 1:2}, d_b = 1; truncation b = 3"
    assert lines[2].startswith("note: ")


def test_borromean_bad_genus(capsys):
    code, _, err = run(capsys, "borromean", "--genus", "9", "--sign", "1")
    assert code == 1 and "PRECONDITION" in err


def test_borromean_mismatch_exit(capsys, monkeypatch):
    def fake(g, n, b=None):
        return BorromeanReport(g, n, 3, {0: 1}, {0: 2, 1: 2}, 0, 1)

    monkeypatch.setattr(cli, "verify_borromean", fake)
    code, out, _ = run(capsys, "borromean", "--genus", "1", "--sign", "-1")
    assert code == 5 and "FAIL" in out


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "dtower.cli", "d", "--preset", "lht"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert proc.stdout.splitlines() == ["d(S^3_{+1}(K)) = 0", "d(S^3_{-1}(K)) = 2"]
