import math
import random
from fractions import Fraction as F

import pytest

from hypertess.configuration import Configuration
from hypertess.fixtures import random_poincare_sites, three_point
from hypertess.lorentz import DegenerateError, DimensionError, LorentzVec, minkowski
from hypertess.models import HPoint, project_to_hyperboloid
from hypertess.voronoi import (VoronoiBuilder, bisector, check_contravariance, geometric_dual, membership, nearest_sites,
                               voronoi_diagram, voronoi_edges_geometry)

def v(*coords):
    return LorentzVec.of(*coords)

def site_sets(diagram, dim):
    return [c.site_ids for c in diagram.cells(dim)]

def test_bisector_of_mirror_sites():
    plane = bisector(HPoint.of(F(5, 3), F(4, 3), 0), HPoint.of(F(5, 3), F(-4, 3), 0))
    assert plane.c == 0
    assert plane.key() == (0, 1, 0, 0)
    assert plane.contains(HPoint.of(1, 0, 0))
    assert plane.side_of(HPoint.of(F(5, 3), F(4, 3), 0)) > 0

def test_bisector_contains_the_midpoint():
    s1 = HPoint.of(math.cosh(2), math.sinh(2), 0.0)
    plane = bisector(HPoint.of(1, 0, 0), s1)
    assert plane.u.coords == pytest.approx((1 - math.cosh(2), -math.sinh(2), 0))
    assert plane.contains(HPoint.of(math.cosh(1), math.sinh(1), 0.0))

def test_bisector_errors():
    with pytest.raises(DegenerateError):
        bisector(HPoint.of(1, 0, 0), HPoint.of(1, 0, 0))
    with pytest.raises(DimensionError):
        bisector(HPoint.of(1, 0, 0), HPoint.of(1, 0, 0, 0))

def test_two_sites_are_split_by_the_bisector():
    diagram = voronoi_diagram(three_point("left")[:2])
    assert site_sets(diagram, 2) == [(0,), (1,)]
    assert site_sets(diagram, 1) == [(0, 1)]
    assert site_sets(diagram, 0) == []
    edge = diagram.cell_by_sites((1, 0))
    assert sorted(diagram.predecessors(edge.id)) == [diagram.site_cell(0).id, diagram.site_cell(1).id]

def test_symmetric_sites_have_one_voronoi_vertex():
    diagram = voronoi_diagram(three_point("left"))
    assert len(diagram.cells(2)) == 3
    assert site_sets(diagram, 1) == [(0, 1), (0, 2), (1, 2)]
    (vertex,) = diagram.cells(0)
    assert vertex.site_ids == (0, 1, 2)
    assert project_to_hyperboloid(vertex.witness.to_float()).coords == pytest.approx((1, 0, 0))
    assert vertex.contains(HPoint.of(1, 0, 0))

@pytest.mark.parametrize("config", ["middle", "right"])
def test_no_voronoi_vertex_without_metric_circumcircle(config):
    diagram = voronoi_diagram(three_point(config))
    assert diagram.cells(0) == []
    assert site_sets(diagram, 1) == [(0, 1), (0, 2)]

def test_geometric_dual_of_the_three_point_configurations():
    left = geometric_dual(three_point("left"))
    assert left.cell_vertex_sets() == left.tessellation.vertex_sets()
    middle = geometric_dual(three_point("middle"))
    assert middle.cell_vertex_sets() == {(0,), (1,), (2,), (0, 1), (0, 2)}
    assert (0, 1, 2) in middle.tessellation.vertex_sets()

def test_dimensions_of_dual_pairs_add_up():
    dual = geometric_dual(three_point("left"))
    for pair in dual.pairs:
        assert dual.diagram.cell(pair.voronoi_id).dim + dual.tessellation.cell(pair.delaunay_cell_id).dim == 2

def test_single_site_is_dual_to_the_whole_plane():
    dual = geometric_dual([HPoint.of(1, 0, 0)])
    (pair,) = dual.pairs
    cell = dual.diagram.cell(pair.voronoi_id)
    assert cell.dim == 2
    assert cell.half_spaces == ()
    assert membership(dual.diagram, HPoint.of(F(5, 3), F(4, 3), 0)) == [0]

def test_contravariance():
    report = check_contravariance(geometric_dual(three_point("left")))
    assert report.ok
    assert report.inclusions == 12
    assert check_contravariance(geometric_dual(three_point("left")[:2])).inclusions == 2
    assert check_contravariance(geometric_dual(three_point("right"))).ok
    assert report.to_dataframe().empty

def test_contravariance_reports_a_missing_inclusion():
    dual = geometric_dual(three_point("left"))
    site = dual.diagram.site_cell(0)
    edge = dual.diagram.cell_by_sites((0, 1))
    dual.diagram.remove_edge(site.id, edge.id)
    report = check_contravariance(dual)
    assert not report.ok
    assert (edge.id, dual.tessellation.cell_by_vertices((0,)).id) in report.faces_without_dual

@pytest.mark.parametrize("seed", range(3))
def test_random_diagrams_are_contravariant(seed):
    dual = geometric_dual(random_poincare_sites(random.Random(seed), 8))
    assert check_contravariance(dual).ok

def test_membership_and_nearest_sites():
    sites = three_point("left")
    diagram = voronoi_diagram(sites)
    assert membership(diagram, HPoint.of(1, 0, 0)) == [0, 1, 2]
    assert membership(diagram, v(2, 0, 0)) == [0, 1, 2]
    assert membership(diagram, sites[1]) == [1]
    assert nearest_sites(sites, HPoint.of(1, 0, 0)) == [0, 1, 2]
    assert nearest_sites(sites, sites[2]) == [2]

def test_membership_agrees_with_nearest_sites_on_samples():
    configuration = Configuration()
    configuration.set_param_value("VoronoiBuilder", "sample_count", 150)
    builder = VoronoiBuilder(configuration)
    diagram = builder.build(random_poincare_sites(random.Random(5), 7))
    assert len(builder.sample_points(diagram.sites)) == 157
    assert builder.membership_mismatches(diagram) == []

def test_edge_geometry():
    edges = voronoi_edges_geometry(voronoi_diagram(three_point("left")))
    assert len(edges) == 3
    for edge in edges:
        assert not edge.start_ideal and edge.end_ideal
        assert edge.start.coords == pytest.approx((1, 0, 0))
        assert float(minkowski(edge.end, edge.end)) == pytest.approx(0, abs = 1e-9)
    (edge,) = voronoi_edges_geometry(voronoi_diagram(three_point("left")[1:]))
    assert edge.start_ideal and edge.end_ideal
    assert edge.start.coords[1] == pytest.approx(0, abs = 1e-9)
    assert edge.end.coords[1] == pytest.approx(0, abs = 1e-9)

def test_edge_geometry_is_planar_only():
    with pytest.raises(DimensionError):
        voronoi_edges_geometry(voronoi_diagram([HPoint.of(1, 0, 0, 0), HPoint.of(F(5, 3), F(4, 3), 0, 0)]))
