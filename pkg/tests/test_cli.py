import json
from pathlib import Path

import pytest

from taxisect.cli import main
from taxisect.figures import FIGURES

CORPUS = Path(__file__).resolve().parent.parent / "corpus"


@pytest.fixture(autouse=True)
def no_color(monkeypatch, tmp_path):
    monkeypatch.setenv("TAXISECT_NO_COLOR", "1")
    monkeypatch.chdir(tmp_path)


def write_script(tmp_path, text: str) -> str:
    path = tmp_path / "case.taxi"
    path.write_text(text)
    return str(path)


# ---------------------------------------------------------------------- run


def test_run_clean_script(tmp_path, capsys):
    path = write_script(tmp_path, "A = point(0, 0)\nassert_eq tdist(A, A) 0\n")
    assert main(["run", path]) == 0
    out = capsys.readouterr().out
    assert "ok:" in out and "no failed assertions" in out


def test_run_quiet(tmp_path, capsys):
    path = write_script(tmp_path, "A = point(0, 0)\n")
    assert main(["run", path, "--quiet"]) == 0
    assert capsys.readouterr().out == ""


def test_run_corpus_construction(capsys):
    assert main(["run", str(CORPUS / "construction_n3.taxi"), "--quiet"]) == 0


def test_run_failing_assert_exits_one(tmp_path, capsys):
    path = write_script(tmp_path, "A = point(0, 0)\nB = point(2, 2)\nassert_eq tdist(A, B) 5\n")
    assert main(["run", path]) == 1
    out = capsys.readouterr().out
    fail_lines = [l for l in out.splitlines() if l.startswith("FAIL")]
    assert fail_lines == ["FAIL case.taxi:3: expected 5, actual 4"]
    assert "\x1b" not in out


def test_run_missing_file(capsys):
    assert main(["run", "no_such_file.taxi"]) == 2
    assert "cannot read script" in capsys.readouterr().err


def test_run_parse_error_exits_two(tmp_path, capsys):
    path = write_script(tmp_path, "A = poin(0, 0)\n")
    assert main(["run", path]) == 2
    assert "unknown function" in capsys.readouterr().err


def test_run_runtime_error_exits_two(tmp_path, capsys):
    path = write_script(tmp_path, "x = 1/0\n")
    assert main(["run", path]) == 2
    assert "division by zero" in capsys.readouterr().err


def test_run_writes_svg_and_json(tmp_path, capsys):
    path = write_script(tmp_path, "A = point(0, 0)\nB = point(3, 3)\nC = nsect(A, B, 3)\n")
    svg = tmp_path / "fig" / "scene.svg"
    data = tmp_path / "env.json"
    assert main(["run", path, "--svg", str(svg), "--json", str(data)]) == 0
    assert svg.read_text().startswith("<svg")
    decoded = json.loads(data.read_text())
    assert decoded["C"] == ["1", "1"]


def test_run_dump_goes_to_stdout(tmp_path, capsys):
    path = write_script(tmp_path, "A = point(1, 2)\ndump\n")
    assert main(["run", path, "--quiet"]) == 0
    out = capsys.readouterr().out
    assert json.loads(out) == {"A": ["1", "2"]}


# -------------------------------------------------------------------- nsect


def test_nsect_prints_division_point(capsys):
    assert main(["nsect", "--a", "0,0", "--b", "3,3", "--n", "3"]) == 0
    assert capsys.readouterr().out.splitlines()[0] == "C = (1, 1)"


def test_nsect_general_direction(capsys):
    assert main(["nsect", "--a", "0,0", "--b", "2,1", "--n", "4"]) == 0
    assert "C = (1/2, 1/4)" in capsys.readouterr().out


def test_nsect_negative_coordinates(capsys):
    assert main(["nsect", "--a", "0,0", "--b", "-3,-3", "--n", "3"]) == 0
    assert "C = (-1, -1)" in capsys.readouterr().out


def test_nsect_trace_listing(capsys):
    assert main(["nsect", "--a", "0,0", "--b", "3,3", "--n", "3", "--trace"]) == 0
    out = capsys.readouterr().out
    assert "trace verified" in out
    assert "place point (0, 0)" in out


def test_nsect_degenerate_exits_two(capsys):
    assert main(["nsect", "--a", "0,0", "--b", "0,0", "--n", "3"]) == 2
    assert capsys.readouterr().err.startswith("error:")


def test_nsect_small_n_exits_two(capsys):
    assert main(["nsect", "--a", "0,0", "--b", "1,1", "--n", "1"]) == 2
    capsys.readouterr()


def test_nsect_bad_rational_exits_two(capsys):
    assert main(["nsect", "--a", "zero,0", "--b", "1,1", "--n", "2"]) == 2
    assert "invalid rational" in capsys.readouterr().err


def test_nsect_outputs(tmp_path, capsys):
    svg = tmp_path / "n.svg"
    data = tmp_path / "n.json"
    code = main(
        ["nsect", "--a", "0,0", "--b", "2,1", "--n", "4", "--svg", str(svg), "--json", str(data)]
    )
    assert code == 0
    assert svg.read_text().startswith("<svg")
    decoded = json.loads(data.read_text())
    assert decoded["C"] == ["1/2", "1/4"]
    assert decoded["n"] == "4"


# ------------------------------------------------------------------ measure


def test_measure_unit_angle(capsys):
    assert main(["measure", "--vertex", "0,0", "--d1", "1,0", "--d2", "1,1"]) == 0
    assert capsys.readouterr().out.strip() == "1"


def test_measure_straight_angle_negative_value(capsys):
    assert main(["measure", "--d1", "1,0", "--d2", "-1,0"]) == 0
    assert capsys.readouterr().out.strip() == "4"


def test_measure_skew_angle(capsys):
    assert main(["measure", "--d1", "1,0", "--d2", "3,4"]) == 0
    assert capsys.readouterr().out.strip() == "8/7"


def test_measure_zero_direction_exits_two(capsys):
    assert main(["measure", "--d1", "0,0", "--d2", "1,0"]) == 2
    assert "zero direction" in capsys.readouterr().err


def test_equals_form_also_accepted(capsys):
    assert main(["measure", "--d1=1,0", "--d2=-1,0"]) == 0
    assert capsys.readouterr().out.strip() == "4"


# ------------------------------------------------------------------ section


def test_section_prints_measure_and_rays(capsys):
    assert main(["section", "--d1", "1,0", "--d2", "-1,0", "--n", "4"]) == 0
    out = capsys.readouterr().out
    assert "measure = 4, each part = 1" in out
    assert "ray 1: direction (1/2, 1/2)" in out
    assert "ray 3: direction (-1/2, 1/2)" in out


def test_section_same_edge_writes_trace_svg(tmp_path, capsys):
    svg = tmp_path / "s.svg"
    assert main(["section", "--d1", "1,0", "--d2", "1,1", "--n", "2", "--svg", str(svg)]) == 0
    assert svg.read_text().startswith("<svg")
    capsys.readouterr()


def test_section_degenerate_exits_two(capsys):
    assert main(["section", "--d1", "1,0", "--d2", "2,0", "--n", "3"]) == 2
    capsys.readouterr()


# -------------------------------------------------------------- render-demo


@pytest.mark.parametrize("figure", sorted(FIGURES))
def test_render_demo_every_figure(tmp_path, figure, capsys):
    out = tmp_path / f"{figure}.svg"
    assert main(["render-demo", "--figure", figure, "--out", str(out)]) == 0
    text = out.read_text()
    assert text.startswith("<svg") and text.endswith("</svg>\n")
    capsys.readouterr()


def test_render_demo_two_panel_construction(tmp_path, capsys):
    out = tmp_path / "construction.svg"
    assert main(["render-demo", "--figure", "construction", "--out", str(out)]) == 0
    text = out.read_text()
    assert '<g id="n3">' in text and '<g id="n4">' in text
    capsys.readouterr()


def test_render_demo_unknown_figure(capsys):
    assert main(["render-demo", "--figure", "bogus", "--out", "x.svg"]) == 2
    err = capsys.readouterr().err
    for name in FIGURES:
        assert name in err
