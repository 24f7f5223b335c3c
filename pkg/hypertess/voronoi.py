"""
Voronoi tessellations of finite site sets in H^n and the geometric dual of the Delaunay tessellation.

The Voronoi cell of a site s is the set of points at least as close to s as to any other site. In the hyperboloid model
the condition d(x, s) ≤ d(x, s′) is the linear inequality x∘(s - s′) ≥ 0, so cells are intersections of half-spaces
bounded by time-like planes through 0, and are kept symbolically as half-space lists without clipping.
The faces of the cells are the sets ∩_{s ∈ S0} V_s for maximal S0. Such a face exists exactly when the Delaunay cell with
vertex set S0 has a metric circumsphere centered in the face, so the faces are read off the geometric-dual cells of the
Delaunay tessellation, and inclusion of faces reverses inclusion of the dual cells.

Partial UML class diagram:

```mermaid
classDiagram
    `nx.DiGraph` <|-- VoronoiDiagram
    VoronoiDiagram --> VoronoiCell: nodes
    VoronoiDiagram --> Tessellation: tessellation
    VoronoiCell --> HalfSpace: half_spaces
    GeometricDual --> VoronoiDiagram: diagram
    GeometricDual --> DualPair: pairs
    VoronoiBuilder: sample_count
```
"""
import logging
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Annotated, Optional, Sequence, Union

import networkx as nx
import pandas as pd

from hypertess import linalg
from hypertess.configuration import Configuration, configurable
from hypertess.datacollection import TableCollector
from hypertess.delaunay import DelaunayCell, Tessellation, delaunay_tessellation
from hypertess.lorentz import DEFAULT_TOLERANCES, DegenerateError, DimensionError, LorentzVec, Tolerances, minkowski
from hypertess.models import AffinePlane, HalfSpace, HPoint, Model, ModelPoint, Side, lift, project_to_hyperboloid, to_model

logger = logging.getLogger(__name__)

def bisector(s0: HPoint, s1: HPoint) -> AffinePlane:
    """
    Returns the perpendicular bisector {x∘(s0 - s1) = 0} of two sites.
    Its normal is space-like, so the plane is a time-like subspace and meets H^n in a totally geodesic hyperplane.

    Args:
        s0 (HPoint): first site.
        s1 (HPoint): second site.

    Returns:
        AffinePlane: the bisector, with s0 on the side x∘u > 0.
    """
    if s0.dim != s1.dim:
        raise DimensionError(f"sites of dimensions {s0.dim} and {s1.dim}")
    if s0.vec == s1.vec:
        raise DegenerateError(f"the bisector of {s0.coords} with itself is undefined")
    return AffinePlane(s0.vec - s1.vec, 0)

@dataclass(frozen = True)
class VoronoiCell:
    """
    A face of the Voronoi tessellation: the points equidistant from the sites in site_ids and no farther from any other site.

    Attributes:
        id: position in the diagram, ordered by (dim, site_ids).
        site_ids: the maximal site set whose cells intersect in this face.
        dim: dimension of the face.
        equalities: bisectors of the first site with each other site of site_ids.
        half_spaces: the sides of the bisectors with the neighbouring sites that contain the face.
        witness: a time-like vector whose point lies in the relative interior of the face.
        delaunay_cell_id: the dual Delaunay cell.
    """
    id: int
    site_ids: tuple[int, ...]
    dim: int
    equalities: tuple[AffinePlane, ...]
    half_spaces: tuple[HalfSpace, ...]
    witness: LorentzVec
    delaunay_cell_id: int

    def contains(self, x: Union[HPoint, LorentzVec], tol: Optional[Tolerances] = None) -> bool:
        """
        Returns True if and only if x lies in the face (exactly for exact input).
        """
        return (all(p.contains(x, tol) for p in self.equalities)
                and all(h.contains(x, tol = tol) for h in self.half_spaces))

class VoronoiDiagram(nx.DiGraph):
    """
    The Voronoi faces of a site set as a Hasse diagram: nodes are face ids with the `VoronoiCell` in the node attribute
    "cell", and edges go from a face to each face of one dimension less on its boundary.
    """

    def __init__(self, tessellation: Tessellation):
        super().__init__()
        self.tessellation = tessellation
        self._by_sites: dict[tuple[int, ...], int] = {}

    @property
    def sites(self) -> list[HPoint]:
        return self.tessellation.sites

    @property
    def n(self) -> int:
        return self.tessellation.n

    def add_cell(self, cell: VoronoiCell):
        self.add_node(cell.id, cell = cell, dim = cell.dim)
        self._by_sites[cell.site_ids] = cell.id

    def cell(self, cell_id: int) -> VoronoiCell:
        return self.nodes[cell_id]["cell"]

    def cells(self, dim: Optional[int] = None) -> list[VoronoiCell]:
        return [self.nodes[i]["cell"] for i in sorted(self.nodes) if dim is None or self.nodes[i]["dim"] == dim]

    def cell_by_sites(self, site_ids: Sequence[int]) -> Optional[VoronoiCell]:
        i = self._by_sites.get(tuple(sorted(site_ids)))
        return None if i is None else self.cell(i)

    def site_cell(self, site_id: int) -> VoronoiCell:
        """
        Returns the n-dimensional cell V_s of a site.
        """
        cell = self.cell_by_sites((site_id,))
        assert cell is not None
        return cell

def _voronoi_cell(t: Tessellation, cell: DelaunayCell, cell_id: int) -> VoronoiCell:
    assert cell.witness is not None
    sites = t.sites
    first = sites[cell.vertex_ids[0]]
    equalities = tuple(bisector(first, sites[i]) for i in cell.vertex_ids[1:])
    neighbours = set().union(*(t.neighbours(v) for v in cell.vertex_ids)) - set(cell.vertex_ids)
    half_spaces = tuple(HalfSpace(bisector(first, sites[j]), Side.GEQ) for j in sorted(neighbours))
    return VoronoiCell(cell_id, cell.vertex_ids, t.n - cell.dim, equalities, half_spaces, cell.witness, cell.id)

def voronoi_from_tessellation(t: Tessellation) -> VoronoiDiagram:
    """
    Builds the Voronoi diagram dual to the geometric-dual cells of a Delaunay tessellation.
    """
    diagram = VoronoiDiagram(t)
    dual = sorted((c for c in t.cells() if c.is_geometric_dual), key = lambda c: (t.n - c.dim, c.vertex_ids))
    ids = {c.id: k for k, c in enumerate(dual)}
    for c in dual:
        diagram.add_cell(_voronoi_cell(t, c, ids[c.id]))
    for c in dual:
        for face_id in c.faces:
            if face_id in ids:
                diagram.add_edge(ids[face_id], ids[c.id])
    logger.debug("Voronoi diagram of %d sites: %s faces by dimension", len(t.sites),
                 [len(diagram.cells(d)) for d in range(t.n + 1)])
    return diagram

def voronoi_diagram(sites: Sequence[HPoint], tol: Optional[Tolerances] = None,
                    configuration: Optional[Configuration] = None) -> VoronoiDiagram:
    """
    Computes the Voronoi tessellation of a finite site set.

    Args:
        sites (Sequence[HPoint]): one or more sites.
        tol (Optional[Tolerances]): the float comparison policy. Defaults to DEFAULT_TOLERANCES.
        configuration (Optional[Configuration]): the configuration. Defaults to the default configuration.

    Returns:
        VoronoiDiagram: the faces of all dimensions with their incidences.
    """
    return voronoi_from_tessellation(delaunay_tessellation(sites, tol = tol, configuration = configuration))

def membership(diagram: VoronoiDiagram, x: Union[HPoint, LorentzVec], tol: Optional[Tolerances] = None) -> list[int]:
    """
    Returns the sites whose Voronoi cells contain a point, i.e. the sites nearest to it.

    Args:
        diagram (VoronoiDiagram): the diagram.
        x (Union[HPoint, LorentzVec]): a point of H^n, or a future time-like vector on its ray.
        tol (Optional[Tolerances]): the float comparison policy. Defaults to DEFAULT_TOLERANCES.

    Returns:
        list[int]: the site ids in increasing order.
    """
    return sorted(c.site_ids[0] for c in diagram.cells(diagram.n) if len(c.site_ids) == 1 and c.contains(x, tol))

def nearest_sites(sites: Sequence[HPoint], x: Union[HPoint, LorentzVec], tol: Optional[Tolerances] = None) -> list[int]:
    """
    Returns the sites minimizing the distance to x, found by maximizing x∘s.
    """
    tol = tol if tol is not None else DEFAULT_TOLERANCES
    v = x.vec if isinstance(x, HPoint) else x
    values = [minkowski(v, s.vec) for s in sites]
    best = max(values)
    scale = math.sqrt(float(v.euclidean_norm_squared())) * max(math.sqrt(float(s.vec.euclidean_norm_squared())) for s in sites)
    return [i for i, value in enumerate(values) if tol.sign(best - value, scale) == 0]

@dataclass(frozen = True)
class DualPair:
    """
    A Voronoi face and its geometric-dual Delaunay cell, whose dimensions sum to n.
    """
    voronoi_id: int
    delaunay_cell_id: int

@dataclass
class GeometricDual:
    """
    The geometric-dual subcomplex of a Delaunay tessellation with its pairing to the Voronoi faces.
    """
    tessellation: Tessellation
    diagram: VoronoiDiagram
    pairs: list[DualPair]

    @property
    def cells(self) -> list[DelaunayCell]:
        return [self.tessellation.cell(p.delaunay_cell_id) for p in self.pairs]

    def cell_vertex_sets(self) -> set[tuple[int, ...]]:
        return {c.vertex_ids for c in self.cells}

def geometric_dual(sites: Union[Sequence[HPoint], Tessellation], tol: Optional[Tolerances] = None,
                   configuration: Optional[Configuration] = None) -> GeometricDual:
    """
    Computes the geometric dual of the Voronoi tessellation: the Delaunay cells having a metric circumsphere whose center
    is equidistant from the cell's vertices and strictly closer to them than to the other sites.

    Args:
        sites (Union[Sequence[HPoint], Tessellation]): the sites, or an already computed tessellation.
        tol (Optional[Tolerances]): the float comparison policy. Defaults to DEFAULT_TOLERANCES.
        configuration (Optional[Configuration]): the configuration. Defaults to the default configuration.

    Returns:
        GeometricDual: the dual cells paired with the Voronoi faces.
    """
    t = sites if isinstance(sites, Tessellation) else delaunay_tessellation(sites, tol = tol, configuration = configuration)
    diagram = voronoi_from_tessellation(t)
    pairs = [DualPair(v.id, v.delaunay_cell_id) for v in diagram.cells()]
    return GeometricDual(t, diagram, pairs)

@dataclass
class ContravarianceReport:
    """
    Violations of the duality between Voronoi faces and Delaunay cells.

    Attributes:
        inclusions: number of Voronoi face inclusions checked.
        reversed_inclusions: pairs (V, V′) with V′ ⊂ V whose dual of V is not a face of the dual of V′.
        faces_without_dual: pairs (V, C) where C is a face of the dual of V with no Voronoi face V″ ⊇ V dual to it.
        dimension_mismatches: Voronoi faces whose dimension plus the dual cell's dimension is not n.
    """
    inclusions: int = 0
    reversed_inclusions: list[tuple[int, int]] = field(default_factory = list)
    faces_without_dual: list[tuple[int, int]] = field(default_factory = list)
    dimension_mismatches: list[int] = field(default_factory = list)

    @property
    def ok(self) -> bool:
        return not (self.reversed_inclusions or self.faces_without_dual or self.dimension_mismatches)

    def to_dataframe(self) -> pd.DataFrame:
        collector = TableCollector({"violations": ["check", "voronoi_id", "other_id"]})
        for v, w in self.reversed_inclusions:
            collector.add_row("violations", check = "inclusion", voronoi_id = v, other_id = w)
        for v, c in self.faces_without_dual:
            collector.add_row("violations", check = "face", voronoi_id = v, other_id = c)
        for v in self.dimension_mismatches:
            collector.add_row("violations", check = "dimension", voronoi_id = v, other_id = None)
        return collector.get_table_dataframe("violations")

def check_contravariance(dual: GeometricDual) -> ContravarianceReport:
    """
    Checks that geometric duality reverses inclusion: for Voronoi faces V′ ⊂ V the dual of V is a face of the dual of V′,
    and every face of the dual of V is dual to a Voronoi face containing V.

    Args:
        dual (GeometricDual): the dual.

    Returns:
        ContravarianceReport: the violations found.
    """
    t = dual.tessellation
    diagram = dual.diagram
    report = ContravarianceReport()
    by_delaunay = {v.delaunay_cell_id: v.id for v in diagram.cells()}
    for v in diagram.cells():
        c = t.cell(v.delaunay_cell_id)
        if v.dim + c.dim != t.n:
            report.dimension_mismatches.append(v.id)
        for w_id in sorted(nx.descendants(diagram, v.id)):
            report.inclusions += 1
            w = diagram.cell(w_id)
            if c.id not in t.subcells(w.delaunay_cell_id):
                report.reversed_inclusions.append((v.id, w_id))
        containing = {v.id} | nx.ancestors(diagram, v.id)
        for face_id in sorted(t.subcells(c.id)):
            if by_delaunay.get(face_id) not in containing:
                report.faces_without_dual.append((v.id, face_id))
    return report

@dataclass(frozen = True)
class EdgeGeometry:
    """
    The endpoints of a Voronoi edge in H², each a point of H² or, for unbounded edges, a light-like vector.
    """
    cell_id: int
    site_ids: tuple[int, ...]
    start: LorentzVec
    end: LorentzVec
    start_ideal: bool
    end_ideal: bool

def _min_slack(cell: VoronoiCell, x: LorentzVec) -> float:
    slacks = [float(minkowski(x, h.plane.u)) / math.sqrt(float(h.plane.u.euclidean_norm_squared())) for h in cell.half_spaces]
    return min(slacks, default = 0.0)

def voronoi_edges_geometry(diagram: VoronoiDiagram) -> list[EdgeGeometry]:
    """
    Computes the endpoints of the Voronoi edges of a planar diagram, for drawing.
    Bounded ends are the Voronoi vertices on the edge; unbounded ends are the ideal endpoints of the bisector.

    Args:
        diagram (VoronoiDiagram): a diagram of sites in H².

    Returns:
        list[EdgeGeometry]: one entry per edge, in id order, with float coordinates.
    """
    if diagram.n != 2:
        raise DimensionError(f"edge geometry is only defined in H², not H^{diagram.n}")
    result = []
    for edge in diagram.cells(1):
        p = project_to_hyperboloid(edge.witness.to_float()).vec
        w = edge.equalities[0].u.to_float()
        d = LorentzVec(tuple(linalg.nullspace([[-p[0], p[1], p[2]], [-w[0], w[1], w[2]]], 3)[0]))
        d = d / math.sqrt(float(minkowski(d, d)))
        ideal = sorted([p + d, p - d], key = lambda x: -_min_slack(edge, x))
        vertices = [project_to_hyperboloid(diagram.cell(v).witness.to_float()).vec for v in sorted(diagram.successors(edge.id))]
        ends = [(v, False) for v in vertices] + [(x, True) for x in ideal][:2 - len(vertices)]
        (start, start_ideal), (end, end_ideal) = ends
        result.append(EdgeGeometry(edge.id, edge.site_ids, start, end, start_ideal, end_ideal))
    return result

@configurable
class VoronoiBuilder:
    """
    Builds Voronoi diagrams and checks them against nearest-site queries at sampled points.
    """
    sample_count: Annotated[int, "Param", "number of sample points of the Voronoi membership check"] = 1000

    def __init__(self, configuration: Optional[Configuration] = None, tol: Optional[Tolerances] = None):
        """
        Creates a builder.

        Args:
            configuration (Optional[Configuration]): the configuration. Defaults to the default configuration.
            tol (Optional[Tolerances]): the float comparison policy. Defaults to DEFAULT_TOLERANCES.
        """
        self.configuration = configuration or Configuration()
        self.configuration.initialize(self)
        self.tol = tol if tol is not None else DEFAULT_TOLERANCES

    def build(self, sites: Sequence[HPoint]) -> VoronoiDiagram:
        return voronoi_diagram(sites, self.tol, self.configuration)

    def sample_points(self, sites: Sequence[HPoint], seed: int = 0, denominator: int = 1024) -> list[HPoint]:
        """
        Returns the sites followed by sample_count rational points of the Poincaré ball of radius (1 + max |p|) / 2,
        where p ranges over the sites' Poincaré coordinates. Points are exact when the sites are.
        """
        rng = random.Random(seed)
        n = sites[0].dim
        exact = all(s.is_exact for s in sites)
        reach = max(math.sqrt(sum(float(a) ** 2 for a in to_model(s, Model.POINCARE).coords)) for s in sites)
        radius = Fraction((1 + reach) / 2).limit_denominator(denominator)
        points = list(sites)
        while len(points) < len(sites) + self.sample_count:
            coords = tuple(Fraction(rng.randint(-denominator, denominator), denominator) for _ in range(n))
            if sum(c * c for c in coords) >= radius * radius:
                continue
            if not exact:
                coords = tuple(float(c) for c in coords)
            points.append(lift(ModelPoint(Model.POINCARE, coords), self.tol))
        return points

    def membership_mismatches(self, diagram: VoronoiDiagram, seed: int = 0) -> list[tuple[int, list[int], list[int]]]:
        """
        Compares `membership` with the nearest sites at sample points.

        Args:
            diagram (VoronoiDiagram): the diagram.
            seed (int, optional): seed of the sampling. Defaults to 0.

        Returns:
            list[tuple[int, list[int], list[int]]]: (sample index, cells containing it, nearest sites) for each disagreement.
        """
        mismatches = []
        for k, x in enumerate(self.sample_points(diagram.sites, seed)):
            found = membership(diagram, x, self.tol)
            expected = nearest_sites(diagram.sites, x, self.tol)
            if found != expected:
                mismatches.append((k, found, expected))
        if mismatches:
            logger.warning("%d of %d samples disagree with the nearest sites", len(mismatches), self.sample_count)
        return mismatches
