"""
Delaunay tessellations of finite site sets in H^n.

The sites are points of the hyperboloid, so their convex hull in R^{n+1} does not contain the origin.
The visible faces of that hull, projected radially back to H^n, are the Delaunay cells: each cell is the convex hull
of its vertices, and the hypersphere cut out by a separating support plane passes through the vertices with every
other site strictly outside its convex side. Cells are kept combinatorially, as sorted vertex id tuples.

Partial UML class diagram:

```mermaid
classDiagram
    `nx.DiGraph` <|-- Tessellation
    Tessellation --> DelaunayCell: nodes
    Tessellation --> HPoint: sites
    Tessellation --> Hull: hull
    DelaunayCell --> Circumsphere: circumsphere
    DelaunayCell --> AffinePlane: support_plane
    Tessellation: cells(dim)
    Tessellation: cell_by_vertices(vertex_ids)
    Tessellation: neighbours(site_id)
```
"""
import dataclasses
import itertools
import logging
import random
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import networkx as nx
import pandas as pd

from hypertess import linalg
from hypertess.configuration import Configuration
from hypertess.datacollection import TableCollector
from hypertess.hull import Hull, build_hull, face_support_plane, visible_faces
from hypertess.lorentz import DEFAULT_TOLERANCES, DegenerateError, DimensionError, DomainError, GeometryError, LorentzVec, Tolerances, minkowski
from hypertess.models import AffinePlane, Circumsphere, HPoint, classify_hypersphere, classify_plane, equidistant_witness

logger = logging.getLogger(__name__)

class VerificationError(GeometryError):
    """
    A certificate check failed, which signals a bug in the hull or in a predicate.
    """

@dataclass(frozen = True)
class DelaunayCell:
    """
    A Delaunay cell.

    Attributes:
        id: position of the cell in the tessellation, ordered by (dim, vertex_ids).
        dim: dimension of the cell.
        vertex_ids: indices into the site list, sorted.
        circumsphere: a hypersphere through the vertices with no site in its convex side; not unique below the top dimension.
        faces: ids of the cells of dimension dim - 1 contained in the cell.
        support_plane: a plane through the vertices with the origin and the other sites strictly on opposite sides.
        witness: a time-like vector whose point is equidistant from the vertices and strictly closer to them than to any
            other site, if there is one. Cells with a witness are the geometric-dual cells.
    """
    id: int
    dim: int
    vertex_ids: tuple[int, ...]
    circumsphere: Optional[Circumsphere]
    faces: tuple[int, ...]
    support_plane: Optional[AffinePlane]
    witness: Optional[LorentzVec] = None

    @property
    def is_geometric_dual(self) -> bool:
        return self.witness is not None

class Tessellation(nx.DiGraph):
    """
    A Delaunay tessellation as the Hasse diagram of its cells: nodes are cell ids with the `DelaunayCell` in the node
    attribute "cell", and edges go from a cell to each of its faces.
    """

    def __init__(self, sites: Sequence[HPoint] = (), hull: Optional[Hull] = None):
        """
        Creates an empty tessellation of a site list.

        Args:
            sites (Sequence[HPoint], optional): the sites. Defaults to no sites.
            hull (Optional[Hull], optional): the hull the cells were taken from. Defaults to None.
        """
        super().__init__()
        self.sites = list(sites)
        self.hull = hull
        self._by_vertices: dict[tuple[int, ...], int] = {}

    @property
    def n(self) -> int:
        """
        The dimension of the hyperbolic space containing the sites.
        """
        return self.sites[0].dim if self.sites else 0

    @property
    def mode(self) -> str:
        return "exact" if all(s.is_exact for s in self.sites) else "float"

    @property
    def top_dim(self) -> int:
        return max((d for _, d in self.nodes(data = "dim")), default = -1)

    def add_cell(self, cell: DelaunayCell):
        self.add_node(cell.id, cell = cell, dim = cell.dim)
        self._by_vertices[cell.vertex_ids] = cell.id
        for face in cell.faces:
            self.add_edge(cell.id, face)

    def replace_cell(self, cell: DelaunayCell):
        self.nodes[cell.id]["cell"] = cell

    def cell(self, cell_id: int) -> DelaunayCell:
        return self.nodes[cell_id]["cell"]

    def cells(self, dim: Optional[int] = None) -> list[DelaunayCell]:
        """
        Returns the cells, optionally only those of one dimension, in id order.
        """
        return [self.nodes[i]["cell"] for i in sorted(self.nodes) if dim is None or self.nodes[i]["dim"] == dim]

    def cell_by_vertices(self, vertex_ids: Iterable[int]) -> Optional[DelaunayCell]:
        i = self._by_vertices.get(tuple(sorted(vertex_ids)))
        return None if i is None else self.cell(i)

    def vertex_sets(self) -> set[tuple[int, ...]]:
        return set(self._by_vertices)

    def cofaces(self, cell_id: int) -> list[int]:
        return sorted(self.predecessors(cell_id))

    def subcells(self, cell_id: int) -> set[int]:
        """
        Returns the ids of the cell and all of its faces.
        """
        return {cell_id} | nx.descendants(self, cell_id)

    def maximal_cells(self) -> list[DelaunayCell]:
        return [self.cell(i) for i in sorted(self.nodes) if self.in_degree(i) == 0]

    def neighbours(self, site_id: int) -> set[int]:
        """
        Returns the sites joined to a site by a Delaunay edge.
        """
        result: set[int] = set()
        for cell in self.cells(1):
            if site_id in cell.vertex_ids:
                result.update(cell.vertex_ids)
        result.discard(site_id)
        return result

def _check_sites(sites: Sequence[HPoint]):
    if not sites:
        raise DegenerateError("empty input")
    if any(s.dim != sites[0].dim for s in sites):
        raise DimensionError("sites have different dimensions")

def delaunay_tessellation(sites: Sequence[HPoint], seed: Optional[int] = None, tol: Optional[Tolerances] = None,
                          configuration: Optional[Configuration] = None) -> Tessellation:
    """
    Computes the Delaunay tessellation of a finite site set.

    Args:
        sites (Sequence[HPoint]): one or more sites; duplicates are ignored with a warning.
        seed (Optional[int]): seed of the hull construction, overriding the configuration. Defaults to None.
        tol (Optional[Tolerances]): the float comparison policy. Defaults to DEFAULT_TOLERANCES.
        configuration (Optional[Configuration]): the configuration. Defaults to the default configuration.

    Returns:
        Tessellation: the tessellation, with circumspheres and geometric-dual witnesses on all cells.
    """
    _check_sites(sites)
    tol = tol if tol is not None else DEFAULT_TOLERANCES
    if all(s.vec == sites[0].vec for s in sites):
        t = Tessellation(sites)
        s = sites[0].vec
        t.add_cell(DelaunayCell(0, 0, (0,), None, (), AffinePlane(s, -1), s))
        return t

    hull = build_hull([s.vec for s in sites], seed, tol, configuration)
    faces = visible_faces(hull)
    index = {f.id: k for k, f in enumerate(faces)}
    t = Tessellation(sites, hull)
    for f in faces:
        children = tuple(sorted(index[c] for c in hull.lattice.children(f.id)))
        t.add_cell(DelaunayCell(index[f.id], f.dim, f.vertex_ids, None, children, face_support_plane(hull, f)))

    for cell in t.cells():
        others = set().union(*(t.neighbours(v) for v in cell.vertex_ids)) - set(cell.vertex_ids)
        assert cell.support_plane is not None
        witness = equidistant_witness(sites, cell.vertex_ids, sorted(others), -cell.support_plane.u, tol)
        t.replace_cell(dataclasses.replace(cell, witness = witness))
    for cell in t.cells():
        t.replace_cell(dataclasses.replace(cell, circumsphere = cell_circumsphere(cell, sites, tol)))
    logger.debug("tessellation of %d sites: %s cells by dimension", len(sites),
                 [len(t.cells(d)) for d in range(t.top_dim + 1)])
    return t

def _plane_certificate(plane: AffinePlane, vertex_ids: Sequence[int], sites: Sequence[HPoint], tol: Tolerances) -> list[int]:
    """
    Returns the sites violating the empty-hypersphere certificate of a plane: vertices must lie on it,
    other sites strictly on the side away from the origin. Duplicates of the vertices are skipped.
    """
    origin_side = tol.sign(-plane.c)
    members = set(vertex_ids)
    member_points = {sites[i].vec for i in members}
    bad = []
    for j, s in enumerate(sites):
        if j not in members and s.vec in member_points:
            continue
        side = plane.side_of(s, tol)
        if (j in members and side != 0) or (j not in members and (origin_side == 0 or side != -origin_side)):
            bad.append(j)
    return bad

def cell_circumsphere(cell: DelaunayCell, sites: Sequence[HPoint], tol: Optional[Tolerances] = None) -> Circumsphere:
    """
    Returns the circumsphere of a cell and verifies that its convex side contains no other site.
    Top-dimensional cells have a unique circumsphere. Lower cells get one of minimal type: a metric sphere about the
    cell's witness when the cell is a geometric-dual cell, and otherwise the hypersphere of its support plane.

    Args:
        cell (DelaunayCell): the cell.
        sites (Sequence[HPoint]): the sites of the tessellation.
        tol (Optional[Tolerances]): the float comparison policy. Defaults to DEFAULT_TOLERANCES.

    Returns:
        Circumsphere: the circumsphere.
    """
    tol = tol if tol is not None else DEFAULT_TOLERANCES
    n = sites[0].dim
    if cell.dim == n:
        sphere = classify_hypersphere([sites[i] for i in cell.vertex_ids], tol)
    elif cell.witness is not None:
        w = cell.witness
        sphere = classify_plane(AffinePlane(w, minkowski(w, sites[cell.vertex_ids[0]].vec)), tol).with_unique(False)
    elif cell.support_plane is not None:
        sphere = classify_plane(cell.support_plane, tol).with_unique(False)
    else:
        raise DomainError(f"cell {cell.vertex_ids} has no support plane")
    bad = _plane_certificate(sphere.plane, cell.vertex_ids, sites, tol)
    if bad:
        raise VerificationError(f"circumsphere of cell {cell.vertex_ids} fails at sites {bad}")
    return sphere

def cell_triangulation(t: Tessellation, cell: DelaunayCell) -> list[tuple[int, ...]]:
    """
    Triangulates a polytopal cell by coning from its lowest vertex over the faces not containing it.

    Args:
        t (Tessellation): the tessellation.
        cell (DelaunayCell): the cell.

    Returns:
        list[tuple[int, ...]]: vertex tuples of the simplices.
    """
    if cell.dim == 0:
        return [cell.vertex_ids]
    apex = cell.vertex_ids[0]
    result = []
    for face_id in cell.faces:
        face = t.cell(face_id)
        if apex not in face.vertex_ids:
            result.extend((apex,) + simplex for simplex in cell_triangulation(t, face))
    return result

@dataclass
class ComplexReport:
    """
    Violations found by `check_complex`, one list per check.
    """
    faces_not_cells: list[tuple[int, tuple[int, ...]]] = field(default_factory = list)
    bad_intersections: list[tuple[int, int]] = field(default_factory = list)
    uncovered_samples: list[tuple[int, ...]] = field(default_factory = list)
    failed_certificates: list[tuple[int, list[int]]] = field(default_factory = list)
    samples: int = 0

    @property
    def ok(self) -> bool:
        return not (self.faces_not_cells or self.bad_intersections or self.uncovered_samples or self.failed_certificates)

    def to_dataframe(self) -> pd.DataFrame:
        """
        Returns one row per violation, with the name of the check and the cells or sites involved.
        """
        collector = TableCollector({"violations": ["check", "cells", "detail"]})
        for cell_id, face in self.faces_not_cells:
            collector.add_row("violations", check = "faces", cells = (cell_id,), detail = face)
        for pair in self.bad_intersections:
            collector.add_row("violations", check = "intersections", cells = pair, detail = None)
        for sample in self.uncovered_samples:
            collector.add_row("violations", check = "coverage", cells = (), detail = sample)
        for cell_id, bad in self.failed_certificates:
            collector.add_row("violations", check = "certificates", cells = (cell_id,), detail = tuple(bad))
        return collector.get_table_dataframe("violations")

def _in_cone(vectors: Sequence[LorentzVec], y: LorentzVec, tol: Tolerances) -> bool:
    columns = [list(v) for v in vectors]
    rows = [[c[k] for c in columns] for k in range(len(y))]
    mu = linalg.solve(rows, list(y), tol.eps)
    if mu is None:
        return False
    residual = [sum((a * b for a, b in zip(row, mu)), 0 * y[0]) - yk for row, yk in zip(rows, y)]
    return all(linalg.sign(r, tol.eps * 1e3) == 0 for r in residual) and all(linalg.sign(m, tol.eps) >= 0 for m in mu)

def check_complex(t: Tessellation, samples: int = 200, seed: int = 0, tol: Optional[Tolerances] = None) -> ComplexReport:
    """
    Checks the polyhedral-complex axioms of a tessellation: (a) the geometric faces of every cell are cells,
    (b) cells sharing vertices intersect in a common face certified by its support plane, (c) the top cells cover the
    hull of the sites (by sampling random convex combinations of sites), and (d) every cell's empty-hypersphere certificate.

    Args:
        t (Tessellation): the tessellation.
        samples (int, optional): number of coverage samples. Defaults to 200.
        seed (int, optional): seed of the sampling. Defaults to 0.
        tol (Optional[Tolerances]): the float comparison policy. Defaults to DEFAULT_TOLERANCES.

    Returns:
        ComplexReport: the violations found.
    """
    tol = tol if tol is not None else DEFAULT_TOLERANCES
    report = ComplexReport(samples = samples)
    sites = t.sites

    for cell in t.cells():
        if cell.dim == 0:
            continue
        local = build_hull([sites[i].vec for i in cell.vertex_ids], tol = tol)
        geometric = {tuple(cell.vertex_ids[k] for k in f.vertex_ids) for f in local.faces(cell.dim - 1)}
        listed = {t.cell(c).vertex_ids for c in cell.faces}
        for face in sorted(geometric ^ listed):
            report.faces_not_cells.append((cell.id, face))

    for a, b in itertools.combinations(t.maximal_cells(), 2):
        common = set(a.vertex_ids) & set(b.vertex_ids)
        if not common:
            continue
        shared = t.cell_by_vertices(common)
        if (shared is None or shared.id not in t.subcells(a.id) or shared.id not in t.subcells(b.id)
                or shared.support_plane is None or _plane_certificate(shared.support_plane, shared.vertex_ids, sites, tol)):
            report.bad_intersections.append((a.id, b.id))

    rng = random.Random(seed)
    simplices = [[sites[i].vec for i in s] for cell in t.cells(t.top_dim) for s in cell_triangulation(t, cell)]
    for _ in range(samples):
        chosen = tuple(sorted(rng.sample(range(len(sites)), min(len(sites), t.n + 1))))
        weights = [rng.randint(1, 10) for _ in chosen]
        y = sum((w * sites[i].vec for w, i in zip(weights[1:], chosen[1:])), weights[0] * sites[chosen[0]].vec)
        if not any(_in_cone(s, y, tol) for s in simplices):
            report.uncovered_samples.append(chosen)

    for cell in t.cells():
        if cell.support_plane is None:
            continue
        bad = _plane_certificate(cell.support_plane, cell.vertex_ids, sites, tol)
        if bad:
            report.failed_certificates.append((cell.id, bad))
    return report
