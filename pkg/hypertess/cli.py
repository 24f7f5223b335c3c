"""
Command line interface of hypertess.

Subcommands read point sets, group files and tessellations as JSON and write JSON, SVG or printed tables:

```
    hypertess fixture middle --out tri.json
    hypertess delaunay --in tri.json --exact --out t.json
    hypertess render --in t.json --render-model halfplane --out fig.svg
    hypertess dual --in tri.json
    hypertess verify --Corpus.instances 50
    hypertess orbit --max-word-length 4
```

Configuration parameters of all configurable classes are available as options on every subcommand.
Exit codes are 0 on success, 1 when a verification finds a mismatch, and 2 for unusable input or usage.
"""
import argparse
import json
import logging
import random
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, Optional, Sequence

import pandas as pd

import hypertess
from hypertess import fixtures, linalg
from hypertess.configuration import Configuration
from hypertess.delaunay import DelaunayCell, Tessellation, VerificationError, check_complex, delaunay_tessellation
from hypertess.lorentz import DomainError, GeometryError, LorentzVec, Tolerances
from hypertess.models import AffinePlane, Circumsphere, HPoint, Model, ModelPoint, classify_plane, lift, to_model
from hypertess.orbit import GroupFile, OrbitExperiment, bad_example_points, bad_example_report, load_group_file
from hypertess.render import render_svg
from hypertess.verify import Corpus
from hypertess.voronoi import VoronoiDiagram, check_contravariance, geometric_dual, voronoi_from_tessellation


logger = logging.getLogger(__name__)

FIXTURES = ("left", "middle", "right", "square", "sweep", "bad-example", "random", "punctured-torus")

def _coords(values: Sequence[Any]) -> list[Any]:
    return [linalg.format_scalar(a) for a in values]

@dataclass
class PointSetFile:
    """
    A list of points in one of the models, with exact entries written as "p/q" strings.
    """
    model: str
    dim: int
    points: list[list[Any]] = field(default_factory = list)

    @classmethod
    def from_sites(cls, sites: Sequence[HPoint], model: Model = Model.HYPERBOLOID) -> "PointSetFile":
        dim = sites[0].dim if sites else 2
        return cls(model.value, dim, [_coords(to_model(s, model).coords) for s in sites])

    @classmethod
    def from_json(cls, text: str, default_model: str = Model.HYPERBOLOID.value) -> "PointSetFile":
        data = json.loads(text)
        if not isinstance(data, dict) or not isinstance(data.get("points"), list):
            raise DomainError("a point set file needs a 'points' list")
        model = Model.parse(data.get("model", default_model))
        points = data["points"]
        offset = 1 if model == Model.HYPERBOLOID else 0
        dim = data.get("dim", len(points[0]) - offset if points else 2)
        if any(not isinstance(p, list) or len(p) != dim + offset for p in points):
            raise DomainError(f"every point of a {model.value} file of dimension {dim} needs {dim + offset} coordinates")
        return cls(model.value, int(dim), points)

    def to_json(self) -> str:
        return json.dumps({"model": self.model, "dim": self.dim, "points": self.points}, indent = 2)

    def sites(self, tol: Tolerances) -> list[HPoint]:
        """
        Parses the points and maps them to the hyperboloid, enforcing the model's domain.
        """
        model = Model.parse(self.model)
        return [lift(ModelPoint(model, tuple(linalg.parse_scalar(a, tol.exact) for a in p)), tol) for p in self.points]

def _plane_data(plane: Optional[AffinePlane]) -> Optional[dict[str, Any]]:
    if plane is None:
        return None
    return {"u": _coords(plane.u), "c": linalg.format_scalar(plane.c)}

def _sphere_data(sphere: Optional[Circumsphere]) -> Optional[dict[str, Any]]:
    if sphere is None:
        return None
    data: dict[str, Any] = {"kind": sphere.kind.value, "unique": sphere.unique, "plane": _plane_data(sphere.plane)}
    if sphere.center is not None:
        data["center"] = _coords(sphere.center.coords)
        data["cosh_radius_squared"] = linalg.format_scalar(sphere.cosh_radius_squared)
        data["radius"] = sphere.radius
    if sphere.ideal is not None:
        data["ideal"] = _coords(sphere.ideal)
    if sphere.sinh_distance_squared is not None:
        data["sinh_distance_squared"] = linalg.format_scalar(sphere.sinh_distance_squared)
        data["distance"] = sphere.distance
        data["component"] = sphere.component
    return data

def _read_plane(data: Optional[dict[str, Any]], exact: bool) -> Optional[AffinePlane]:
    if data is None:
        return None
    return AffinePlane(LorentzVec(tuple(linalg.parse_scalar(a, exact) for a in data["u"])), linalg.parse_scalar(data["c"], exact))

@dataclass
class TessellationFile:
    """
    A Delaunay tessellation with its sites (hyperboloid coordinates), cells, circumspheres and provenance.
    """
    mode: str
    sites: list[list[Any]]
    cells: list[dict[str, Any]]
    provenance: dict[str, Any] = field(default_factory = dict)

    @classmethod
    def from_tessellation(cls, t: Tessellation, seed: Optional[int] = None) -> "TessellationFile":
        cells = [{"id": c.id, "dim": c.dim, "vertices": list(c.vertex_ids), "faces": list(c.faces),
                  "circumsphere": _sphere_data(c.circumsphere), "support_plane": _plane_data(c.support_plane),
                  "geometric_dual": c.is_geometric_dual, "witness": None if c.witness is None else _coords(c.witness)}
                 for c in t.cells()]
        provenance = {"tool": "hypertess", "version": hypertess.__version__, "seed": seed, "rendering": "float"}
        return cls(t.mode, [_coords(s.coords) for s in t.sites], cells, provenance)

    @classmethod
    def from_json(cls, text: str) -> "TessellationFile":
        data = json.loads(text)
        if not isinstance(data, dict) or "sites" not in data or "cells" not in data:
            raise DomainError("a tessellation file needs 'sites' and 'cells'")
        result = cls(data.get("mode", "exact"), data["sites"], data["cells"], data.get("provenance", {}))
        result.validate()
        return result

    def validate(self):
        ids = [c["id"] for c in self.cells]
        if ids != list(range(len(ids))):
            raise DomainError("cell ids must be 0, 1, 2, ... in order")
        for c in self.cells:
            if any(not 0 <= v < len(self.sites) for v in c["vertices"]):
                raise DomainError(f"cell {c['id']} refers to a missing site")
            if any(not 0 <= f < len(ids) for f in c["faces"]):
                raise DomainError(f"cell {c['id']} refers to a missing face")

    def to_json(self) -> str:
        return json.dumps({"mode": self.mode, "sites": self.sites, "cells": self.cells, "provenance": self.provenance}, indent = 2)

    def to_tessellation(self) -> Tessellation:
        exact = self.mode == "exact"
        sites = [HPoint(LorentzVec(tuple(linalg.parse_scalar(a, exact) for a in s))) for s in self.sites]
        t = Tessellation(sites)
        for c in self.cells:
            sphere = None
            if c.get("circumsphere") is not None:
                plane = _read_plane(c["circumsphere"]["plane"], exact)
                assert plane is not None
                sphere = classify_plane(plane).with_unique(c["circumsphere"].get("unique", True))
            witness = c.get("witness")
            t.add_cell(DelaunayCell(c["id"], c["dim"], tuple(c["vertices"]), sphere, tuple(c["faces"]),
                                    _read_plane(c.get("support_plane"), exact),
                                    None if witness is None else LorentzVec(tuple(linalg.parse_scalar(a, exact) for a in witness))))
        return t

def voronoi_to_json(diagram: VoronoiDiagram) -> str:
    cells = [{"id": v.id, "dim": v.dim, "sites": list(v.site_ids), "witness": _coords(v.witness),
              "delaunay_cell": v.delaunay_cell_id, "bisectors": [_coords(p.u) for p in v.equalities],
              "half_spaces": [_coords(h.plane.u) for h in v.half_spaces], "faces": sorted(diagram.successors(v.id))}
             for v in diagram.cells()]
    return json.dumps({"sites": [_coords(s.coords) for s in diagram.sites], "cells": cells}, indent = 2)

def _read_sites(args: argparse.Namespace, tol: Tolerances) -> list[HPoint]:
    if not args.input:
        raise DomainError("an input file is needed (--in)")
    return PointSetFile.from_json(Path(args.input).read_text(), args.model).sites(tol)

def _write(args: argparse.Namespace, text: str):
    if args.out:
        Path(args.out).write_text(text)
        logger.info("output saved to %s", args.out)
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")

def _print_table(title: str, frame: pd.DataFrame):
    print(title)
    print(frame if not frame.empty else "(no rows)", end = "\n\n")

def cmd_delaunay(args: argparse.Namespace, configuration: Configuration) -> int:
    tol = Tolerances(configuration)
    t = delaunay_tessellation(_read_sites(args, tol), tol = tol, configuration = configuration)
    if args.check:
        report = check_complex(t, tol = tol)
        if not report.ok:
            _print_table("Complex violations", report.to_dataframe())
            return 1
    _write(args, TessellationFile.from_tessellation(t, configuration.get_param_value("HullBuilder", "seed")).to_json())
    return 0

def cmd_voronoi(args: argparse.Namespace, configuration: Configuration) -> int:
    tol = Tolerances(configuration)
    t = delaunay_tessellation(_read_sites(args, tol), tol = tol, configuration = configuration)
    _write(args, voronoi_to_json(voronoi_from_tessellation(t)))
    return 0

def cmd_dual(args: argparse.Namespace, configuration: Configuration) -> int:
    tol = Tolerances(configuration)
    dual = geometric_dual(_read_sites(args, tol), tol, configuration)
    report = check_contravariance(dual)
    pairs = [{"voronoi": p.voronoi_id, "delaunay": p.delaunay_cell_id, "voronoi_dim": dual.diagram.cell(p.voronoi_id).dim,
              "delaunay_dim": dual.tessellation.cell(p.delaunay_cell_id).dim} for p in dual.pairs]
    data = {"cells": [list(c.vertex_ids) for c in dual.cells], "pairs": pairs,
            "contravariance": {"ok": report.ok, "inclusions": report.inclusions,
                               "violations": len(report.reversed_inclusions) + len(report.faces_without_dual) + len(report.dimension_mismatches)}}
    _write(args, json.dumps(data, indent = 2))
    if not report.ok:
        logger.error("geometric duality is not contravariant")
        return 1
    return 0

def cmd_verify(args: argparse.Namespace, configuration: Configuration) -> int:
    tol = Tolerances(configuration)
    corpus = Corpus(configuration, tol)
    if args.input:
        corpus.reports = corpus.check(_read_sites(args, tol), args.sample_seed)
    else:
        corpus.run(args.sample_seed)
    frame = corpus.get_dataframe()
    if args.out:
        Path(args.out).write_text(frame.to_json(orient = "records", indent = 2))
    _print_table("Oracle reports", frame)
    return 0 if corpus.ok else 1

def cmd_orbit(args: argparse.Namespace, configuration: Configuration) -> int:
    tol = Tolerances(configuration)
    if args.bad_example:
        report = bad_example_report(Fraction(args.r_inf), args.n, tol)
        _print_table("Bad example triangles", report.to_dataframe())
        print(f"limit defect {report.limit_defect:.10f}, monotone: {report.monotone}")
        return 0
    group = load_group_file(Path(args.group), tol) if args.group else GroupFile(*fixtures.punctured_torus_group())
    experiment = OrbitExperiment(configuration, tol)
    if group.max_word_length is not None and args.group:
        experiment.max_word_length = group.max_word_length
    experiment.run(group.generators, group.bases)
    trend = experiment.trend()
    _print_table("Interior cells and orbits", experiment.get_dataframe())
    _print_table("Cusp candidates", trend.to_dataframe())
    print(f"orbit counts stabilized: {experiment.stabilized()}, cusp trends monotone: {trend.monotone}")
    if args.out:
        summary = {"runs": [{"max_word_length": r.max_word_length, "points": len(r.orbit.points),
                             "interior_cells": r.invariance.interior_cells, "orbit_counts": r.invariance.orbit_counts,
                             "frontier_cells": r.invariance.frontier_cells, "time_like_fraction": r.invariance.time_like_fraction}
                            for r in experiment.runs],
                   "cusp": [[k, L, cell, float(norm)] for k, L, cell, norm in trend.rows], "monotone": trend.monotone, "stabilized": experiment.stabilized()}
        Path(args.out).write_text(json.dumps(summary, indent = 2))
    return 0

def cmd_fixture(args: argparse.Namespace, configuration: Configuration) -> int:
    name = args.name
    if name == "punctured-torus":
        _write(args, GroupFile(*fixtures.punctured_torus_group()).to_json())
        return 0
    if name in fixtures.THREE_POINT_CONFIGURATIONS:
        sites = fixtures.three_point(name)
    elif name == "square":
        sites = fixtures.square()
    elif name == "sweep":
        sites = fixtures.sweep_triple(Fraction(args.t))
    elif name == "bad-example":
        sites = bad_example_points(Fraction(args.r_inf), args.n)
    else:
        sites = fixtures.random_poincare_sites(random.Random(args.random_seed), args.count, args.denominator)
    _write(args, PointSetFile.from_sites(sites, Model.parse(args.model)).to_json())
    return 0

def cmd_render(args: argparse.Namespace, configuration: Configuration) -> int:
    tol = Tolerances(configuration)
    if not args.input:
        raise DomainError("an input file is needed (--in)")
    text = Path(args.input).read_text()
    if "cells" in json.loads(text):
        t = TessellationFile.from_json(text).to_tessellation()
    else:
        t = delaunay_tessellation(PointSetFile.from_json(text, args.model).sites(tol), tol = tol, configuration = configuration)
    diagram = voronoi_from_tessellation(t) if args.voronoi and t.sites else None
    _write(args, render_svg(t, diagram, args.circumspheres, configuration))
    return 0

def build_parser() -> argparse.ArgumentParser:
    """
    Builds the command line parser, with the configuration parameters and the common options on every subcommand.
    """
    common = argparse.ArgumentParser(add_help = False, parents = [Configuration.parser])
    common.add_argument("--float", dest = "Tolerances.exact", action = "store_false", help = "read inputs as binary floats (same as --no-exact)")
    common.add_argument("--in", dest = "input", type = str, default = "", help = "input file")
    common.add_argument("-o", "--out", type = str, default = "", help = "output file, standard output if not given")
    common.add_argument("--model", type = str, default = Model.HYPERBOLOID.value, help = "model of input points lacking a model tag, and of fixture output")
    common.add_argument("-c", "--configuration-file", type = str, default = "", help = "configuration file, replacing the values of all parameters")
    common.add_argument("-v", "--verbose", action = "count", default = 0, help = "log more details (-v info, -vv debug)")

    parser = argparse.ArgumentParser(prog = "hypertess", description = "Hyperbolic Delaunay and Voronoi tessellations via convex hulls.")
    subparsers = parser.add_subparsers(dest = "command", required = True)

    def add(name: str, handler: Callable[[argparse.Namespace, Configuration], int], help: str) -> argparse.ArgumentParser:
        sub = subparsers.add_parser(name, parents = [common], help = help)
        sub.set_defaults(handler = handler)
        return sub

    add("delaunay", cmd_delaunay, "compute a Delaunay tessellation").add_argument(
        "--check", default = False, action = argparse.BooleanOptionalAction, help = "check the polyhedral complex axioms")
    add("voronoi", cmd_voronoi, "compute a Voronoi tessellation")
    add("dual", cmd_dual, "compute the geometric dual and check contravariance")
    add("verify", cmd_verify, "compare with the brute-force oracles").add_argument(
        "--sample-seed", type = int, default = 0, help = "seed of the random corpus and samples")
    orbit = add("orbit", cmd_orbit, "run the truncated orbit experiments")
    orbit.add_argument("--group", type = str, default = "", help = "group file, the punctured torus group if not given")
    orbit.add_argument("--bad-example", default = False, action = argparse.BooleanOptionalAction, help = "report on the bad example instead")
    orbit.add_argument("--r-inf", type = str, default = "5/4", help = "limiting radius of the bad example")
    orbit.add_argument("--n", type = int, default = 8, help = "points per side of the bad example")
    fixture = add("fixture", cmd_fixture, "write a named point set")
    fixture.add_argument("name", choices = FIXTURES, help = "the fixture")
    fixture.add_argument("--t", type = str, default = "1/2", help = "parameter of the sweep triple")
    fixture.add_argument("--r-inf", type = str, default = "5/4", help = "limiting radius of the bad example")
    fixture.add_argument("--n", type = int, default = 8, help = "points per side of the bad example")
    fixture.add_argument("--count", type = int, default = 8, help = "number of random sites")
    fixture.add_argument("--denominator", type = int, default = 64, help = "denominator of random Poincaré coordinates")
    fixture.add_argument("--random-seed", type = int, default = 0, help = "seed of the random sites")
    render = add("render", cmd_render, "draw a planar tessellation as SVG")
    render.add_argument("--voronoi", default = False, action = argparse.BooleanOptionalAction, help = "overlay the Voronoi tessellation")
    render.add_argument("--circumspheres", default = True, action = argparse.BooleanOptionalAction, help = "draw the circumspheres of the 2-cells")
    return parser

def run(argv: Optional[Sequence[str]] = None) -> int:
    """
    Runs a subcommand.

    Args:
        argv (Optional[Sequence[str]]): the arguments, without the program name. Defaults to sys.argv[1:].

    Returns:
        int: the exit code.
    """
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else (0 if e.code is None else 2)
    level = logging.DEBUG if args.verbose > 1 else logging.INFO if args.verbose == 1 else logging.WARNING
    logging.basicConfig(level = level, format = "%(levelname)s %(name)s: %(message)s", force = True)

    configuration = Configuration()
    configuration.update_from_args(args)
    try:
        if args.configuration_file:
            configuration.from_json(Path(args.configuration_file).read_text())
        return args.handler(args, configuration)
    except VerificationError as e:
        logger.error("verification failed: %s", e)
        return 1
    except (GeometryError, ValueError, KeyError, ZeroDivisionError, OSError) as e:
        logger.error("%s", e)
        return 2

def main():
    sys.exit(run())
