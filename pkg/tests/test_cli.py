import json
from fractions import Fraction

import pytest

from tilebundle.cli import main
from tilebundle.fileio import load_patch, load_system, save_patch, save_system
from tilebundle.tilemodel import single_tile_patch, system_from_words


@pytest.fixture()
def files(tmp_path, penrose_real, penrose_int):
    save_system(penrose_real, tmp_path / "real.json")
    save_system(penrose_int, tmp_path / "int.json")
    return tmp_path


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_validate(files, capsys):
    assert run(capsys, "validate", files / "int.json")[0] == 0
    code, out, _ = run(capsys, "validate", files / "int.json", "--json")
    assert code == 0 and json.loads(out) == {"valid": True, "issues": []}


def test_validate_failure(tmp_path, capsys):
    s = system_from_words("integral", {"x": (1, 0), "y": (0, 1)}, {"T": [("x", 1), ("y", 1), ("x", -1)]})
    save_system(s, tmp_path / "open.json")
    code, out, _ = run(capsys, "validate", tmp_path / "open.json", "--json")
    res = json.loads(out)
    assert code == 1 and res["valid"] is False and "closure" in res["issues"][0]


def test_parse_error_exit(tmp_path, capsys):
    (tmp_path / "bad.json").write_text("{")
    code, _, err = run(capsys, "validate", tmp_path / "bad.json")
    assert code == 1 and "line 1" in err


def test_rationalize(files, capsys):
    code, out, _ = run(capsys, "rationalize", files / "real.json", "--epsilon", "0.5",
                       "--out", files / "rat.json", "--json")
    assert code == 0 and json.loads(out)["deviation"] <= 0.5
    assert load_system(files / "rat.json").stage == "rational"


@pytest.mark.parametrize("eps", ["0", "-1", "abc"])
def test_rationalize_usage_error(files, capsys, eps):
    code, _, err = run(capsys, "rationalize", files / "real.json", "--epsilon", eps, "--out", files / "x.json")
    assert code == 2 and err


def test_missing_subcommand(capsys):
    assert run(capsys)[0] == 2


def test_integralize(files, capsys):
    code, out, _ = run(capsys, "integralize", files / "int.json", "--out", files / "i.json", "--json")
    assert code == 0 and json.loads(out) == {"lcm_denominator": 1, "prescale": 1, "out": str(files / "i.json")}
    code, _, _ = run(capsys, "integralize", files / "real.json", "--out", files / "i2.json")
    assert code == 2
    code, out, _ = run(capsys, "integralize", files / "real.json", "--epsilon", "0.5", "--out", files / "i3.json")
    assert code == 0 and "D = " in out


def test_zigzag_and_squarify(files, capsys):
    code, out, _ = run(capsys, "zigzag", files / "int.json", "--out", files / "z.json", "--json")
    res = json.loads(out)
    assert code == 0 and res["total_cells"] == 232 and len(res["deviations"]) == 40
    assert max(res["deviations"].values()) <= 0.5 ** 0.5 + 1e-9
    code, out, _ = run(capsys, "squarify", files / "int.json", "--out", files / "sq.json", "--json")
    assert code == 0 and json.loads(out)["alphabet_size"] == 232


def test_transport_and_project(files, capsys, grown_real):
    save_patch(grown_real, "real.json", files / "patch.json")
    code, out, _ = run(capsys, "transport", files / "patch.json", "--to", files / "int.json",
                       "--out", files / "moved.json", "--json")
    assert code == 0 and json.loads(out)["checks"] >= 1
    p, s = load_patch(files / "moved.json")
    assert len(p) == len(grown_real) and s.stage == "integral"
    code, out, _ = run(capsys, "project", files / "moved.json", "--translate", "1/3", "1/2")
    assert code == 0 and out.strip() == "(2/3, 1/2)"


def test_project_needs_integral(files, capsys, grown_real):
    save_patch(grown_real, "real.json", files / "patch.json")
    assert run(capsys, "project", files / "patch.json")[0] == 2


def test_project_offset_patch(files, capsys, penrose_int):
    save_patch(single_tile_patch("A0", origin_offset=(Fraction(1, 3), Fraction(1, 2))), "int.json", files / "o.json")
    code, out, _ = run(capsys, "project", files / "o.json", "--json")
    assert code == 0 and json.loads(out) == {"x": "2/3", "y": "1/2"}


def test_render(files, capsys):
    code, out, _ = run(capsys, "render", files / "int.json", "--zigzag", "--svg", files / "z.svg", "--json")
    assert code == 0 and json.loads(out)["elements"] == 40
    assert (files / "z.svg").read_text().count("<polyline") == 40
    save_patch(single_tile_patch("A0"), "int.json", files / "one.json")
    code, out, _ = run(capsys, "render", files / "one.json", "--squares", "--svg", files / "s.svg", "--json")
    assert code == 0 and json.loads(out)["elements"] == 4


def test_demo_is_deterministic(tmp_path, capsys):
    assert run(capsys, "demo-penrose", "--outdir", tmp_path / "a")[0] == 0
    code, out, _ = run(capsys, "demo-penrose", "--outdir", tmp_path / "b", "--json")
    summary = json.loads(out)
    assert code == 0 and summary["covering_degree"] == 232
    assert summary["figures"]["fig3_zigzag_edges.svg"] == 40
    names = sorted(f.name for f in (tmp_path / "a").iterdir())
    assert len(names) == 12
    for n in names:
        assert (tmp_path / "a" / n).read_bytes() == (tmp_path / "b" / n).read_bytes()
