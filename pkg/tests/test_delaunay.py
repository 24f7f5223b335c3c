import dataclasses
import random
from fractions import Fraction as F

import pytest

from hypertess.delaunay import Tessellation, VerificationError, cell_circumsphere, cell_triangulation, check_complex, delaunay_tessellation
from hypertess.fixtures import random_poincare_sites, square, sweep_triple, three_point
from hypertess.lorentz import DegenerateError, DimensionError, LorentzVec, minkowski
from hypertess.models import AffinePlane, HPoint, SphereKind

def vertex_sets(t, dim):
    return [c.vertex_ids for c in t.cells(dim)]

def test_three_sites_give_one_triangle():
    t = delaunay_tessellation(three_point("left"))
    assert vertex_sets(t, 0) == [(0,), (1,), (2,)]
    assert vertex_sets(t, 1) == [(0, 1), (0, 2), (1, 2)]
    assert vertex_sets(t, 2) == [(0, 1, 2)]
    assert [c.id for c in t.cells()] == list(range(7))
    triangle = t.cell_by_vertices((2, 1, 0))
    assert sorted(t.cell(f).vertex_ids for f in triangle.faces) == [(0, 1), (0, 2), (1, 2)]
    assert t.maximal_cells() == [triangle]
    assert t.neighbours(0) == {1, 2}
    assert t.mode == "exact"
    assert t.n == 2

@pytest.mark.parametrize("config, kind", [("left", SphereKind.METRIC), ("middle", SphereKind.HOROSPHERE), ("right", SphereKind.EQUIDISTANT)])
def test_triangle_circumsphere_kind(config, kind):
    t = delaunay_tessellation(three_point(config))
    (triangle,) = t.cells(2)
    assert triangle.circumsphere.kind == kind
    assert triangle.circumsphere.unique

def test_horocycle_and_metric_circle_values():
    (middle,) = delaunay_tessellation(three_point("middle")).cells(2)
    assert middle.circumsphere.ideal == LorentzVec.of(1, 1, 0)
    (left,) = delaunay_tessellation(three_point("left")).cells(2)
    assert left.circumsphere.center.vec == LorentzVec.of(1, 0, 0)

def test_geometric_dual_cells_of_the_three_point_configurations():
    left = delaunay_tessellation(three_point("left"))
    assert all(c.is_geometric_dual for c in left.cells())
    for config in ("middle", "right"):
        t = delaunay_tessellation(three_point(config))
        dual = {c.vertex_ids for c in t.cells() if c.is_geometric_dual}
        assert dual == {(0,), (1,), (2,), (0, 1), (0, 2)}

def test_geometric_dual_cells_have_metric_circumspheres():
    t = delaunay_tessellation(random_poincare_sites(random.Random(3), 8))
    for cell in t.cells():
        if cell.is_geometric_dual:
            assert cell.circumsphere.kind == SphereKind.METRIC
            w = cell.witness
            values = {minkowski(w, t.sites[i].vec) for i in cell.vertex_ids}
            assert len(values) == 1

def test_square_gives_a_single_quadrilateral():
    t = delaunay_tessellation(square())
    (quad,) = t.cells(2)
    assert quad.vertex_ids == (0, 1, 2, 3)
    assert len(t.cells(1)) == 4
    assert t.cell_by_vertices((0, 1)) is None
    assert quad.circumsphere.kind == SphereKind.METRIC
    assert quad.circumsphere.center.vec == LorentzVec.of(1, 0, 0)
    assert len(cell_triangulation(t, quad)) == 2

def test_two_sites_give_an_edge():
    t = delaunay_tessellation(three_point("left")[:2])
    assert t.top_dim == 1
    assert vertex_sets(t, 1) == [(0, 1)]
    (edge,) = t.cells(1)
    assert edge.is_geometric_dual
    assert not edge.circumsphere.unique

def test_single_site():
    site = HPoint.of(F(5, 3), F(4, 3), 0)
    t = delaunay_tessellation([site])
    (cell,) = t.cells()
    assert cell.vertex_ids == (0,)
    assert cell.is_geometric_dual
    assert delaunay_tessellation([site, site]).cells(0)[0].vertex_ids == (0,)

def test_duplicate_sites_are_ignored():
    sites = three_point("left")
    t = delaunay_tessellation(sites + [sites[1]])
    assert vertex_sets(t, 2) == [(0, 1, 2)]
    assert check_complex(t, samples = 20).ok

def test_bad_input():
    with pytest.raises(DegenerateError):
        delaunay_tessellation([])
    with pytest.raises(DimensionError):
        delaunay_tessellation([HPoint.of(1, 0, 0), HPoint.of(1, 0, 0, 0)])

def test_float_sites_give_the_same_cells():
    exact = delaunay_tessellation(three_point("right"))
    floats = delaunay_tessellation([HPoint(s.vec.to_float()) for s in three_point("right")])
    assert floats.mode == "float"
    assert floats.vertex_sets() == exact.vertex_sets()
    left = delaunay_tessellation([HPoint(s.vec.to_float()) for s in three_point("left")])
    assert all(c.is_geometric_dual for c in left.cells())

def test_sweep_triple_changes_kind_at_the_horocycle():
    # cos θ = (1 - t²)/(1 + t²) equals 1/2 at t² = 1/3, so t = 1/2 is metric and t = 3/4 equidistant.
    (metric,) = delaunay_tessellation(sweep_triple(F(1, 2))).cells(2)
    (equidistant,) = delaunay_tessellation(sweep_triple(F(3, 4))).cells(2)
    assert metric.circumsphere.kind == SphereKind.METRIC
    assert equidistant.circumsphere.kind == SphereKind.EQUIDISTANT

def test_sweep_triple_just_before_the_horocycle():
    (cell,) = delaunay_tessellation(sweep_triple(F(28867513, 50000000))).cells(2)
    sphere = cell.circumsphere
    assert sphere.kind == SphereKind.METRIC
    assert sphere.center.coords[0] > 4000
    assert sphere.radius > 9

@pytest.mark.parametrize("seed", range(4))
def test_random_tessellations_are_complexes(seed):
    t = delaunay_tessellation(random_poincare_sites(random.Random(seed), 9))
    report = check_complex(t, samples = 60, seed = seed)
    assert report.ok, report.to_dataframe()
    assert report.to_dataframe().empty

def test_input_order_does_not_change_the_cells():
    sites = random_poincare_sites(random.Random(11), 8)
    t = delaunay_tessellation(sites)
    n = len(sites)
    reversed_sets = {tuple(sorted(n - 1 - i for i in s)) for s in delaunay_tessellation(sites[::-1]).vertex_sets()}
    assert reversed_sets == t.vertex_sets()
    assert delaunay_tessellation(sites, seed = 5).vertex_sets() == t.vertex_sets()

def test_removed_edge_is_reported():
    t = delaunay_tessellation(three_point("left"))
    edge = t.cell_by_vertices((1, 2))
    broken = Tessellation(t.sites)
    for cell in t.cells():
        if cell.id != edge.id:
            broken.add_cell(dataclasses.replace(cell, faces = tuple(f for f in cell.faces if f != edge.id)))
    report = check_complex(broken, samples = 10)
    assert not report.ok
    assert report.faces_not_cells == [(t.cell_by_vertices((0, 1, 2)).id, (1, 2))]
    assert "faces" in set(report.to_dataframe()["check"])

def test_circumsphere_certificate_failure_raises():
    sites = three_point("left")
    t = delaunay_tessellation(sites)
    edge = t.cell_by_vertices((0, 1))
    # The plane x0 = 5/3 passes through all three sites, so it certifies no edge.
    wrong = dataclasses.replace(edge, witness = None, support_plane = AffinePlane(LorentzVec.of(1, 0, 0), F(-5, 3)))
    with pytest.raises(VerificationError):
        cell_circumsphere(wrong, sites)
