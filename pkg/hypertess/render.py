"""
SVG figures of planar tessellations in the Poincaré disk or the upper half-plane.

Drawing is split into views, each adding its elements to a layer of a `Scene`, in the manner of attaching views to a
model. Every hyperbolic object drawn is the trace of a plane {x∘u = c} in the chart, which is a circle or a straight line
in both charts, so all views share `plane_curve`. Geometry is computed in floats even for exact tessellations, and numbers
are written with a fixed precision, so equal inputs give byte-identical documents.

Partial UML class diagram:

```mermaid
classDiagram
    View <|.. BoundaryView
    View <|.. TessellationView
    View <|.. CircumsphereView
    View <|.. VoronoiView
    Renderer --> Scene: creates
    Renderer: render_model
    Renderer: size
    Renderer: precision
    Scene: layer(name)
```
"""
import logging
import math
import xml.etree.ElementTree as ET
from dataclasses import dataclass
from typing import Annotated, Optional, Protocol, Sequence, Union

from hypertess.configuration import Configuration, configurable
from hypertess.delaunay import Tessellation
from hypertess.lorentz import DimensionError, DomainError, LorentzVec
from hypertess.models import AffinePlane, HPoint, Model, SphereKind, ideal_point, project_to_hyperboloid, to_model
from hypertess.voronoi import VoronoiDiagram, voronoi_edges_geometry

logger = logging.getLogger(__name__)

Point2 = tuple[float, float]

STYLE = """
.boundary { fill: none; stroke: black; stroke-width: 1.5px; vector-effect: non-scaling-stroke }
.cell { fill: #9ecae1; fill-opacity: 0.3; stroke: none }
.edge { fill: none; stroke: #08519c; stroke-width: 1px; vector-effect: non-scaling-stroke }
.site { fill: black }
.metric { fill: none; stroke: #d62728; stroke-width: 1px; vector-effect: non-scaling-stroke }
.horosphere { fill: none; stroke: #2ca02c; stroke-width: 1px; stroke-dasharray: 6 3; vector-effect: non-scaling-stroke }
.equidistant { fill: none; stroke: #9467bd; stroke-width: 1px; stroke-dasharray: 2 2; vector-effect: non-scaling-stroke }
.axis { fill: none; stroke: #9467bd; stroke-width: 0.5px; vector-effect: non-scaling-stroke }
.voronoi { fill: none; stroke: #ff7f0e; stroke-width: 1px; vector-effect: non-scaling-stroke }
.voronoi_vertex { fill: #ff7f0e }
"""

@dataclass(frozen = True)
class Circle:
    center: Point2
    radius: float

@dataclass(frozen = True)
class Line:
    """
    The line normal·p = offset.
    """
    normal: Point2
    offset: float

def plane_curve(plane: AffinePlane, model: Model) -> Union[Circle, Line]:
    """
    Returns the curve of the chart on which a plane {x∘u = c} meets H².
    In the Poincaré disk it is (c - u0)|p|² + 2 u_sp·p - (u0 + c) = 0, and in the upper half-plane
    (u1 - u0)|z|² + 2 u2 x - 2 c y - (u0 + u1) = 0.

    Args:
        plane (AffinePlane): a plane meeting H².
        model (Model): POINCARE or UPPER_HALF.

    Returns:
        Union[Circle, Line]: the curve.
    """
    u0, u1, u2 = (float(a) for a in plane.u)
    c = float(plane.c)
    if model == Model.POINCARE:
        a, (b1, b2), k = c - u0, (u1, u2), u0 + c
    elif model == Model.UPPER_HALF:
        a, (b1, b2), k = u1 - u0, (u2, -c), u0 + u1
    else:
        raise DomainError(f"cannot draw in the {model.value} model")
    # a|p|² + 2 b·p - k = 0
    scale = max(abs(a), abs(b1), abs(b2), abs(k))
    if abs(a) <= 1e-12 * scale:
        return Line((2 * b1, 2 * b2), k)
    center = (-b1 / a, -b2 / a)
    r2 = center[0] ** 2 + center[1] ** 2 + k / a
    return Circle(center, math.sqrt(max(r2, 0.0)))

def chart_point(x: Union[HPoint, LorentzVec], model: Model) -> Point2:
    p = x if isinstance(x, HPoint) else project_to_hyperboloid(x.to_float())
    a, b = (float(c) for c in to_model(p, model).coords)
    return a, b

def _cross(p: LorentzVec, q: LorentzVec) -> LorentzVec:
    return LorentzVec((p[1] * q[2] - p[2] * q[1], p[2] * q[0] - p[0] * q[2], p[0] * q[1] - p[1] * q[0]))

def geodesic_plane(p: LorentzVec, q: LorentzVec) -> AffinePlane:
    """
    The plane through 0, p and q, whose trace is the geodesic through p and q (or the boundary points p and q).
    """
    return AffinePlane(_cross(p.to_float(), q.to_float()).bar(), 0.0)

class Scene:
    """
    An SVG document in chart coordinates, with one group element per layer.
    The y axis is flipped by a transform so that chart coordinates are used unchanged.
    """
    LAYERS = ("cells", "circumspheres", "voronoi", "edges", "boundary", "sites")

    def __init__(self, model: Model, size: int, precision: int, bounds: tuple[float, float, float, float]):
        """
        Creates an empty scene.

        Args:
            model (Model): the chart.
            size (int): width of the document in pixels.
            precision (int): number of decimals written.
            bounds (tuple[float, float, float, float]): the visible chart rectangle (xmin, ymin, xmax, ymax).
        """
        self.model = model
        self.precision = precision
        self.bounds = bounds
        xmin, ymin, xmax, ymax = bounds
        height = round(size * (ymax - ymin) / (xmax - xmin))
        self.root = ET.Element("svg", xmlns = "http://www.w3.org/2000/svg", width = str(size), height = str(height),
                               viewBox = " ".join(self.fmt(v) for v in (xmin, -ymax, xmax - xmin, ymax - ymin)))
        ET.SubElement(self.root, "style").text = STYLE
        defs = ET.SubElement(self.root, "defs")
        clip = ET.SubElement(defs, "clipPath", id = "model")
        if model == Model.POINCARE:
            ET.SubElement(clip, "circle", cx = "0", cy = "0", r = "1")
        else:
            ET.SubElement(clip, "rect", x = self.fmt(xmin), y = "0", width = self.fmt(xmax - xmin), height = self.fmt(ymax))
        flip = ET.SubElement(self.root, "g", transform = "scale(1,-1)")
        self.layers = {name: ET.SubElement(flip, "g", id = name) for name in self.LAYERS}
        for name in ("circumspheres", "voronoi"):
            self.layers[name].set("clip-path", "url(#model)")

    def fmt(self, value: float) -> str:
        text = f"{value:.{self.precision}f}".rstrip("0").rstrip(".")
        return "0" if text in ("-0", "") else text

    def layer(self, name: str) -> ET.Element:
        return self.layers[name]

    def extent(self) -> float:
        xmin, ymin, xmax, ymax = self.bounds
        return 4 * max(xmax - xmin, ymax - ymin)

    def add_curve(self, layer: str, curve: Union[Circle, Line], cls: str):
        """
        Adds a whole circle or a long segment of a line.
        """
        if isinstance(curve, Circle):
            ET.SubElement(self.layer(layer), "circle", {"class": cls, "cx": self.fmt(curve.center[0]),
                                                         "cy": self.fmt(curve.center[1]), "r": self.fmt(curve.radius)})
            return
        (a, b), d = curve.normal, curve.offset
        norm2 = a * a + b * b
        base = (a * d / norm2, b * d / norm2)
        L = self.extent() / math.sqrt(norm2)
        ET.SubElement(self.layer(layer), "line", {"class": cls, "x1": self.fmt(base[0] - L * b), "y1": self.fmt(base[1] + L * a),
                                                   "x2": self.fmt(base[0] + L * b), "y2": self.fmt(base[1] - L * a)})

    def arc_path(self, curve: Union[Circle, Line], start: Point2, end: Point2) -> str:
        """
        Returns path data for the minor arc of a circle (or the segment of a line) from start to end.
        """
        move = f"M {self.fmt(start[0])} {self.fmt(start[1])}"
        if isinstance(curve, Line) or curve.radius > 1e6:
            return f"{move} L {self.fmt(end[0])} {self.fmt(end[1])}"
        cx, cy = curve.center
        cross = (start[0] - cx) * (end[1] - cy) - (start[1] - cy) * (end[0] - cx)
        r = self.fmt(curve.radius)
        return f"{move} A {r} {r} 0 0 {1 if cross > 0 else 0} {self.fmt(end[0])} {self.fmt(end[1])}"

    def to_string(self) -> str:
        ET.indent(self.root)
        return '<?xml version="1.0" encoding="UTF-8"?>\n' + ET.tostring(self.root, encoding = "unicode") + "\n"

class View(Protocol):
    """
    Interface class for views.
    """
    def update(self, scene: Scene):
        """
        Adds the view's elements to a scene. This is an abstract function that is redefined in subclasses.

        Args:
            scene (Scene): the scene.
        """

class BoundaryView(View):
    """
    The boundary at infinity: the unit circle, or the real line.
    """
    def update(self, scene: Scene):
        layer = scene.layer("boundary")
        if scene.model == Model.POINCARE:
            ET.SubElement(layer, "circle", {"class": "boundary", "cx": "0", "cy": "0", "r": "1"})
        else:
            xmin, _, xmax, _ = scene.bounds
            ET.SubElement(layer, "line", {"class": "boundary", "x1": scene.fmt(xmin), "y1": "0", "x2": scene.fmt(xmax), "y2": "0"})

class TessellationView(View):
    """
    The sites, the edges as geodesic arcs and the 2-cells as shaded geodesic polygons.
    """
    def __init__(self, t: Tessellation):
        self.t = t

    def _edge_path(self, scene: Scene, i: int, j: int) -> str:
        p, q = self.t.sites[i].vec, self.t.sites[j].vec
        return scene.arc_path(plane_curve(geodesic_plane(p, q), scene.model), chart_point(p, scene.model), chart_point(q, scene.model))

    def update(self, scene: Scene):
        for cell in self.t.cells(2):
            # walk the boundary cycle through the edges of the cell
            edges = [self.t.cell(f).vertex_ids for f in cell.faces]
            cycle = list(edges[0])
            while len(cycle) < len(edges):
                cycle.append(next(b if a == cycle[-1] else a for a, b in edges if cycle[-1] in (a, b) and cycle[-2] not in (a, b)))
            parts = [self._edge_path(scene, a, b) for a, b in zip(cycle, cycle[1:] + cycle[:1])]
            data = parts[0] + "".join(" " + part.split(" ", 3)[3] for part in parts[1:]) + " Z"
            ET.SubElement(scene.layer("cells"), "path", {"class": "cell", "d": data, "id": f"cell_{cell.id}"})
        for cell in self.t.cells(1):
            i, j = cell.vertex_ids
            ET.SubElement(scene.layer("edges"), "path", {"class": "edge", "d": self._edge_path(scene, i, j), "id": f"cell_{cell.id}"})
        radius = (scene.bounds[2] - scene.bounds[0]) / 150
        for k, s in enumerate(self.t.sites):
            x, y = chart_point(s, scene.model)
            ET.SubElement(scene.layer("sites"), "circle", {"class": "site", "cx": scene.fmt(x), "cy": scene.fmt(y),
                                                           "r": scene.fmt(radius), "id": f"site_{k}"})

class CircumsphereView(View):
    """
    The circumspheres of the top-dimensional cells: metric circles solid, horocycles dashed,
    equidistant curves dotted together with their axis geodesic.
    """
    def __init__(self, t: Tessellation):
        self.t = t

    def update(self, scene: Scene):
        for cell in self.t.cells(2):
            sphere = cell.circumsphere
            if sphere is None:
                continue
            scene.add_curve("circumspheres", plane_curve(sphere.plane, scene.model), sphere.kind.value)
            if sphere.kind in (SphereKind.EQUIDISTANT, SphereKind.TOTALLY_GEODESIC):
                axis = AffinePlane(sphere.plane.u, 0)
                scene.add_curve("circumspheres", plane_curve(axis, scene.model), "axis")

class VoronoiView(View):
    """
    The Voronoi edges as geodesic arcs between Voronoi vertices or ideal points, and the Voronoi vertices.
    """
    def __init__(self, diagram: VoronoiDiagram):
        self.diagram = diagram

    def _end(self, scene: Scene, x: LorentzVec, ideal: bool) -> Point2:
        if not ideal:
            return chart_point(x, scene.model)
        point = ideal_point(x, scene.model)
        if point is None:
            return math.nan, math.nan
        return point[0], point[1]

    def update(self, scene: Scene):
        layer = scene.layer("voronoi")
        for edge in voronoi_edges_geometry(self.diagram):
            curve = plane_curve(self.diagram.cell(edge.cell_id).equalities[0], scene.model)
            start = self._end(scene, edge.start, edge.start_ideal)
            end = self._end(scene, edge.end, edge.end_ideal)
            # an end at the point at infinity of the half-plane is replaced by a far point on the vertical line
            if math.isnan(start[0]):
                start, end = end, start
            if math.isnan(end[0]):
                end = (start[0], scene.bounds[3] + scene.extent())
            ET.SubElement(layer, "path", {"class": "voronoi", "d": scene.arc_path(curve, start, end), "id": f"voronoi_{edge.cell_id}"})
        radius = (scene.bounds[2] - scene.bounds[0]) / 200
        for vertex in self.diagram.cells(0):
            x, y = chart_point(vertex.witness, scene.model)
            ET.SubElement(layer, "circle", {"class": "voronoi_vertex", "cx": scene.fmt(x), "cy": scene.fmt(y),
                                            "r": scene.fmt(radius), "id": f"voronoi_{vertex.id}"})

@configurable
class Renderer:
    """
    Renders planar tessellations as SVG documents.
    """
    render_model: Annotated[str, "Param", "chart to draw in: poincare or halfplane", "--render-model"] = "poincare"
    size:         Annotated[int, "Param", "width of the figure in pixels"] = 600
    precision:    Annotated[int, "Param", "number of decimals of the SVG coordinates"] = 6

    def __init__(self, configuration: Optional[Configuration] = None):
        (configuration or Configuration()).initialize(self)

    @property
    def model(self) -> Model:
        model = Model.parse(self.render_model)
        if model not in (Model.POINCARE, Model.UPPER_HALF):
            raise DomainError(f"cannot draw in the {model.value} model")
        return model

    def bounds(self, sites: Sequence[HPoint]) -> tuple[float, float, float, float]:
        """
        The visible chart rectangle: the closed disk with a margin, or a box around the sites above the real line.
        """
        if self.model == Model.POINCARE:
            return -1.05, -1.05, 1.05, 1.05
        points = [chart_point(s, Model.UPPER_HALF) for s in sites] or [(0.0, 1.0)]
        xmin, xmax = min(p[0] for p in points), max(p[0] for p in points)
        ymax = max(p[1] for p in points)
        pad = max(1.0, 0.25 * (xmax - xmin), 0.5 * ymax)
        return xmin - pad, 0.0 - 0.05 * pad, xmax + pad, ymax + pad

    def render(self, sites: Sequence[HPoint], views: Sequence[View]) -> str:
        scene = Scene(self.model, self.size, self.precision, self.bounds(sites))
        for view in views:
            view.update(scene)
        return scene.to_string()

def render_svg(t: Tessellation, diagram: Optional[VoronoiDiagram] = None, circumspheres: bool = True,
               configuration: Optional[Configuration] = None) -> str:
    """
    Draws a tessellation of H² with its circumspheres and optionally a Voronoi overlay.

    Args:
        t (Tessellation): the tessellation, possibly of no sites.
        diagram (Optional[VoronoiDiagram]): a Voronoi diagram to overlay. Defaults to None.
        circumspheres (bool, optional): whether to draw the circumspheres of the 2-cells. Defaults to True.
        configuration (Optional[Configuration]): the configuration, selecting the chart. Defaults to the default configuration.

    Returns:
        str: the SVG document.
    """
    if t.sites and t.n != 2:
        raise DimensionError(f"only tessellations of H² can be drawn, not H^{t.n}")
    views: list[View] = [BoundaryView()]
    if t.sites:
        views.append(TessellationView(t))
        if circumspheres:
            views.append(CircumsphereView(t))
        if diagram is not None:
            views.append(VoronoiView(diagram))
    return Renderer(configuration).render(t.sites, views)
