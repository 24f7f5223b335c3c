import json
from pathlib import Path

import pytest

from hypertess.cli import PointSetFile, TessellationFile, build_parser, run
from hypertess.configuration import Configuration
from hypertess.delaunay import delaunay_tessellation
from hypertess.fixtures import three_point
from hypertess.lorentz import DomainError, Tolerances
from hypertess.orbit import load_group_file

@pytest.fixture
def left(tmp_path: Path) -> Path:
    path = tmp_path / "left.json"
    assert run(["fixture", "left", "--out", str(path)]) == 0
    return path

def test_fixture_writes_exact_points(left):
    data = json.loads(left.read_text())
    assert data == {"model": "hyperboloid", "dim": 2, "points": [["5/3", "0", "4/3"], ["5/3", "4/3", "0"], ["5/3", "-4/3", "0"]]}

def test_fixture_in_the_poincare_model(tmp_path):
    path = tmp_path / "middle.json"
    assert run(["fixture", "middle", "--model", "poincare", "--out", str(path)]) == 0
    points = PointSetFile.from_json(path.read_text())
    assert points.model == "poincare_ball"
    assert points.sites(Tolerances()) == three_point("middle")

def test_fixture_group_file(tmp_path):
    path = tmp_path / "torus.json"
    assert run(["fixture", "punctured-torus", "--out", str(path)]) == 0
    assert len(load_group_file(path).generators) == 2

def test_fixture_random_sites(tmp_path):
    path = tmp_path / "random.json"
    assert run(["fixture", "random", "--count", "5", "--random-seed", "3", "--model", "poincare", "--out", str(path)]) == 0
    assert len(json.loads(path.read_text())["points"]) == 5

def test_delaunay(left, tmp_path):
    out = tmp_path / "t.json"
    assert run(["delaunay", "--in", str(left), "--check", "--out", str(out)]) == 0
    data = TessellationFile.from_json(out.read_text())
    assert data.mode == "exact"
    assert len(data.cells) == 7
    assert data.provenance["tool"] == "hypertess"
    assert next(c for c in data.cells if c["dim"] == 2)["circumsphere"]["kind"] == "metric"
    assert data.to_tessellation().vertex_sets() == delaunay_tessellation(three_point("left")).vertex_sets()

def test_delaunay_in_floats(left, tmp_path):
    out = tmp_path / "t.json"
    assert run(["delaunay", "--in", str(left), "--float", "--out", str(out)]) == 0
    assert json.loads(out.read_text())["mode"] == "float"

def test_configuration_file_sets_parameters(left, tmp_path):
    configuration = Configuration()
    configuration.set_param_value("HullBuilder", "seed", 42)
    config_path = tmp_path / "config.json"
    config_path.write_text(configuration.to_json())
    out = tmp_path / "t.json"
    assert run(["delaunay", "--in", str(left), "-c", str(config_path), "--out", str(out)]) == 0
    assert json.loads(out.read_text())["provenance"]["seed"] == 42

def test_voronoi(left, capsys):
    assert run(["voronoi", "--in", str(left)]) == 0
    cells = json.loads(capsys.readouterr().out)["cells"]
    assert [c["dim"] for c in cells] == [0, 1, 1, 1, 2, 2, 2]
    assert cells[0]["sites"] == [0, 1, 2]

def test_dual(left, capsys):
    assert run(["dual", "--in", str(left)]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["contravariance"]["ok"]
    assert len(data["cells"]) == 7
    assert all(p["voronoi_dim"] + p["delaunay_dim"] == 2 for p in data["pairs"])

def test_render(left, tmp_path):
    t = tmp_path / "t.json"
    svg = tmp_path / "t.svg"
    assert run(["delaunay", "--in", str(left), "--out", str(t)]) == 0
    assert run(["render", "--in", str(t), "--voronoi", "--out", str(svg)]) == 0
    assert svg.read_text().startswith("<?xml")
    assert run(["render", "--in", str(left), "--render-model", "halfplane", "--out", str(svg)]) == 0
    assert "clipPath" in svg.read_text()

def test_verify_one_instance(left, capsys):
    assert run(["verify", "--in", str(left), "--Corpus.samples", "20"]) == 0
    assert "Oracle reports" in capsys.readouterr().out

def test_verify_corpus(tmp_path):
    out = tmp_path / "reports.json"
    assert run(["verify", "--Corpus.instances", "1", "--Corpus.max_sites", "5", "--Corpus.samples", "10",
                "--out", str(out)]) == 0
    assert len(json.loads(out.read_text())) == 5

def test_orbit_bad_example(capsys):
    assert run(["orbit", "--bad-example", "--n", "4"]) == 0
    assert "limit defect" in capsys.readouterr().out

def test_orbit(tmp_path):
    out = tmp_path / "orbit.json"
    assert run(["orbit", "--max-word-length", "1", "--out", str(out)]) == 0
    summary = json.loads(out.read_text())
    assert [r["points"] for r in summary["runs"]] == [1, 5]

@pytest.mark.parametrize("argv", [[], ["unknown"], ["delaunay", "--Corpus.instances", "many"]])
def test_usage_errors(argv):
    assert run(argv) == 2

def test_help():
    assert run(["--help"]) == 0

def test_bad_input(tmp_path):
    assert run(["delaunay"]) == 2
    bad = tmp_path / "bad.json"
    bad.write_text('{"points": [[0, 0]]}')
    assert run(["delaunay", "--in", str(bad)]) == 2
    bad.write_text("not json")
    assert run(["delaunay", "--in", str(bad)]) == 2
    assert run(["delaunay", "--in", str(tmp_path / "missing.json")]) == 2

def test_point_set_file_validation():
    with pytest.raises(DomainError):
        PointSetFile.from_json('{"model": "poincare", "points": [[0, 0], [0]]}')
    with pytest.raises(DomainError):
        PointSetFile.from_json('{"model": "poincare"}')
    assert PointSetFile.from_json('{"points": [[1, 0, 0]]}').dim == 2

def test_tessellation_file_validation():
    with pytest.raises(DomainError):
        TessellationFile.from_json('{"sites": [], "cells": [{"id": 1, "dim": 0, "vertices": [0], "faces": []}]}')
    with pytest.raises(DomainError):
        TessellationFile.from_json('{"sites": [["1", "0", "0"]], "cells": [{"id": 0, "dim": 0, "vertices": [3], "faces": []}]}')

def test_parser_has_configuration_options():
    args = build_parser().parse_args(["delaunay", "--seed", "7", "--no-exact"])
    assert getattr(args, "HullBuilder.seed") == 7
    assert getattr(args, "Tolerances.exact") is False
