import os

import pytest

pytest.importorskip("mypy")
pytest.importorskip("pdoc")

import build

def test_update_needed(tmp_path):
    source = tmp_path / "a.py"
    target = tmp_path / "a.whl"
    source.write_text("x = 1\n")
    assert build.update_needed([source], target)
    target.write_text("")
    os.utime(source, (1_000, 1_000))
    os.utime(target, (2_000, 2_000))
    assert not build.update_needed([source], target)
    os.utime(source, (3_000, 3_000))
    assert build.update_needed([source], target)

def test_source_files_cover_the_package():
    names = {f.name for f in build.source_files()}
    assert {"__init__.py", "hull.py", "delaunay.py", "voronoi.py", "orbit.py"} <= names

def test_typechecking_reports_errors(monkeypatch, capsys):
    calls = []
    def fake_run(args):
        calls.append(args)
        return "", "hull.py:1: error", 1
    monkeypatch.setattr(build.mypy.api, "run", fake_run)
    assert not build.typechecking()
    assert calls[0][:2] == ["-p", "hypertess"]
    assert "\nErrors:\n hull.py:1: error" in capsys.readouterr().out

def test_typechecking_passes(monkeypatch):
    monkeypatch.setattr(build.mypy.api, "run", lambda args: ("Success: no issues found", "", 0))
    assert build.typechecking(include_tests = True)
