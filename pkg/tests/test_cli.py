import json

import pytest

from spinroot.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_catalog_text(capsys):
    code, out = run(capsys, "catalog")
    assert code == 0
    assert "H3" in out and "roots 30" in out
    assert "2n+2" in out


def test_catalog_family_n(capsys):
    code, out = run(capsys, "catalog", "--family-n", "8")
    assert code == 0
    assert "I2(8)" in out and "roots 16" in out


def test_catalog_json(capsys):
    code, out = run(capsys, "catalog", "--format", "json")
    payload = json.loads(out)
    assert any(row["name"] == "H4" and row["roots"] == "120"
               for row in payload["systems"])
    assert payload["meta"]["tool"] == "spinroot"


def test_induce_json(capsys):
    code, out = run(capsys, "induce", "B3")
    payload = json.loads(out)
    assert code == 0
    assert payload["pin_order"] == 96
    assert payload["spin_order"] == 48
    assert payload["binary_group"] == "2O"
    assert payload["induced"] == "F4"


def test_induce_family(capsys):
    code, out = run(capsys, "induce", "A1xI2(6)")
    payload = json.loads(out)
    assert payload["induced"] == "I2(6)xI2(6)"
    assert payload["spin_order"] == 24


def test_coxplane_json(capsys):
    code, out = run(capsys, "coxplane", "F4")
    payload = json.loads(out)
    assert code == 0
    assert payload["h"] == 12
    assert payload["exponents"] == [1, 5, 7, 11]
    assert payload["factorization_exponents"] == [1, 5, 7, 11]
    assert payload["residual"] < 1e-8


def test_coxplane_word_override(capsys):
    code, out = run(capsys, "coxplane", "D4", "--word", "4,2,1,3")
    payload = json.loads(out)
    assert payload["h"] == 6
    assert payload["exponents"] == [1, 3, 3, 5]


def test_coxplane_degenerate_plane_reported(capsys):
    code, out = run(capsys, "coxplane", "A1^4")
    payload = json.loads(out)
    assert code == 0
    assert payload["plane"] is None
    assert payload["exponents"] == [1, 1, 1, 1]


def test_project_csv_stdout(capsys):
    code, out = run(capsys, "project", "A4")
    assert code == 0
    lines = [l for l in out.splitlines() if l and not l.startswith("#")]
    assert lines[0] == "x,y"
    assert len(lines) == 21  # header + 20 roots


def test_mckay_json(capsys):
    code, out = run(capsys, "mckay", "H3")
    payload = json.loads(out)
    assert payload["group"] == "2I"
    assert payload["classes"] == 9
    assert payload["sum_dims"] == 30
    assert payload["affine"] == "E~8"


def test_mckay_dot(capsys):
    code, out = run(capsys, "mckay", "A3", "--format", "dot")
    assert out.startswith("graph")
    assert out.count("--") == 6  # affine E6 tree on 7 nodes


def test_ade_map_text(capsys):
    code, out = run(capsys, "ade-map", "--n-max", "3")
    assert code == 0
    assert "H3" in out and "E~8" in out and "E8" in out


def test_export_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a", tmp_path / "b"
    for target in (a, b):
        code, _ = run(capsys, "export", "projection", "A4", "--out", str(target))
        assert code == 0
    for f in sorted(p.name for p in a.iterdir()):
        assert (a / f).read_bytes() == (b / f).read_bytes()


def test_export_roots_files(tmp_path, capsys):
    code, out = run(capsys, "export", "roots", "F4", "--out", str(tmp_path))
    assert code == 0
    names = sorted(p.name for p in tmp_path.iterdir())
    assert names == ["F4_cartan.csv", "F4_roots.json"]
    payload = json.loads((tmp_path / "F4_roots.json").read_text())
    assert payload["count"] == 48
    assert len(payload["roots"]) == 48


def test_export_projection_svg_points(tmp_path, capsys):
    code, _ = run(capsys, "export", "projection", "A4", "--out", str(tmp_path))
    svg = (tmp_path / "A4_projection.svg").read_text()
    assert svg.count("<circle") == 20  # two concentric decagons


def test_export_mckay_graph_nodes(tmp_path, capsys):
    code, _ = run(capsys, "export", "mckay-graph", "H3", "--out", str(tmp_path))
    dot = (tmp_path / "H3_mckay.dot").read_text()
    assert dot.count("[label=") == 9  # one node per conjugacy class of 2I
    payload = json.loads((tmp_path / "H3_mckay.json").read_text())
    assert payload["affine"] == "E~8"


def test_verify_all_json(capsys):
    code, out = run(capsys, "verify-all", "--n-max", "2", "--format", "json")
    payload = json.loads(out)
    assert code == 0
    assert payload["failed"] == 0
    assert payload["passed"] == len(payload["checks"])


def test_export_diagram(tmp_path, capsys):
    code, out = run(capsys, "export", "diagram", "H3", "--out", str(tmp_path))
    text = (tmp_path / "H3_diagram.dot").read_text()
    assert "graph E8" in text


def test_n_max_precondition(capsys):
    assert main(["verify-all", "--n-max", "13"]) == 2
    assert main(["ade-map", "--n-max", "1"]) == 2


def test_unknown_system_is_usage_error(capsys):
    code = main(["induce", "Z9"])
    assert code == 2


def test_unknown_subcommand_exits_2():
    with pytest.raises(SystemExit) as err:
        main(["frobnicate"])
    assert err.value.code == 2


def test_verify_all_small(capsys):
    code, out = run(capsys, "verify-all", "--n-max", "2")
    assert code == 0
    assert "PASS" in out and "FAIL" not in out


def test_verify_all_seed_independent_verdicts(capsys):
    code7, out7 = run(capsys, "verify-all", "--n-max", "2", "--seed", "7")
    assert code7 == 0
    marks7 = [l.split()[1] for l in out7.splitlines() if l.startswith("[")]
    code0, out0 = run(capsys, "verify-all", "--n-max", "2")
    marks0 = [l.split()[1] for l in out0.splitlines() if l.startswith("[")]
    assert marks7 == marks0
