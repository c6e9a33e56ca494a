import json

import pytest

from taylortower.cli import EXIT_FAIL, EXIT_GUARD, EXIT_PASS, EXIT_USAGE, OUTPUT_ENV, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_cat_iso(capsys):
    code, out, _ = run(capsys, "cat", "iso", "jn:*:3", "p0:3")
    assert code == EXIT_PASS and json.loads(out)["isomorphic"] is True
    code, _, _ = run(capsys, "cat", "iso", "p0:2", "p:2")
    assert code == EXIT_FAIL


def test_cat_reedy(capsys):
    code, out, _ = run(capsys, "cat", "reedy", "p0:3", "--constants", "cofibrant")
    assert code == EXIT_PASS and json.loads(out)["verdict"] == "pass"
    code, _, _ = run(capsys, "cat", "reedy", "spider:2", "--constants", "cofibrant")
    assert code == EXIT_FAIL
    code, _, _ = run(capsys, "cat", "reedy", "pb")
    assert code == EXIT_USAGE


def test_cat_build(capsys):
    code, out, _ = run(capsys, "cat", "build", "spider:4", "--json")
    assert code == EXIT_PASS and json.loads(out)["objects"] == 9


def test_tower_identity(capsys):
    code, out, _ = run(capsys, "tower", "--functor", "id", "--input", "Z0", "--levels", "0..2")
    rep = json.loads(out)
    assert code == EXIT_PASS
    assert rep["levels"][0]["value"] == {}
    assert rep["levels"][1]["value"] == rep["levels"][2]["value"] == rep["input"]


def test_tower_constant_on_circle(capsys):
    code, out, _ = run(capsys, "tower", "--functor", "const:Z0", "--input", "S1")
    assert code == EXIT_PASS
    assert all(l["value"] == {"0": {"betti": 1, "torsion": []}}
               for l in json.loads(out)["levels"])


def test_tower_table_output(capsys):
    code, out, _ = run(capsys, "tower", "--functor", "sum", "--levels", "1", "--table")
    assert code == EXIT_PASS and "levels[0].stabilized" in out


def test_usage_and_guard_errors(capsys):
    assert run(capsys, "tower", "--functor", "nope")[0] == EXIT_USAGE
    assert run(capsys, "tower")[0] == EXIT_USAGE
    code, _, err = run(capsys, "cat", "build", "p:30")
    assert code == EXIT_GUARD and "guard" in err
    assert run(capsys, "cube", "classify", "--random", "--n", "9")[0] == EXIT_USAGE


def test_cube_cartesian_random(capsys):
    code, out, _ = run(capsys, "cube", "cartesian", "--random", "--shape", "p0:2", "--seed", "7")
    assert code == EXIT_PASS and "cartesian" in json.loads(out)
    code, out, _ = run(capsys, "cube", "cartesian", "--random", "--shape", "p0:2", "--replace")
    assert json.loads(out)["cartesian"] is True


def test_cube_classify_from_file(capsys, tmp_path):
    path = tmp_path / "pushout_square.json"
    one, two, three = ({"lo": 0, "hi": 0, "ranks": [r], "d": {}} for r in (1, 2, 3))
    path.write_text(json.dumps({
        "shape": "p:2",
        "vertices": [{"at": [], "complex": one}, {"at": [1], "complex": two},
                     {"at": [2], "complex": two}, {"at": [1, 2], "complex": three}],
        "maps": [{"from": [], "to": [1], "matrices": {"0": [[1], [0]]}},
                 {"from": [], "to": [2], "matrices": {"0": [[1], [0]]}},
                 {"from": [1], "to": [1, 2], "matrices": {"0": [[1, 0], [0, 1], [0, 0]]}},
                 {"from": [2], "to": [1, 2], "matrices": {"0": [[1, 0], [0, 0], [0, 1]]}}]}))
    code, out, _ = run(capsys, "cube", "classify", "--input", str(path))
    assert code == EXIT_PASS and json.loads(out)["ho_cocartesian"] is True


def test_cube_export_then_classify(capsys, tmp_path):
    path = tmp_path / "c.json"
    run(capsys, "cube", "export", "p:2", "--cofibration", "--seed", "4", "-o", str(path))
    code, out, _ = run(capsys, "cube", "classify", "--input", str(path))
    assert json.loads(out)["cofibration_cube"] is True


def test_verify_deterministic(capsys):
    args = ["verify", "--suite", "homology", "--suite", "star", "--seed", "3"]
    code1, out1, _ = run(capsys, *args)
    code2, out2, _ = run(capsys, *args)
    assert code1 == code2 == EXIT_PASS and out1 == out2
    assert run(capsys, "verify", "--suite", "nope")[0] == EXIT_USAGE


def test_output_directory_from_environment(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv(OUTPUT_ENV, str(tmp_path))
    run(capsys, "cat", "build", "p:2")
    assert json.loads((tmp_path / "cat-build.json").read_text())["objects"] == 4


def test_package_exports_do_not_shadow_submodules():
    import types

    import taylortower
    for mod in ("star", "groth", "tower", "cubes", "chain"):
        assert isinstance(getattr(taylortower, mod), types.ModuleType)
