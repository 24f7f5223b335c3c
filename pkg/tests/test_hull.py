from fractions import Fraction as F

import pytest

from hypertess.fixtures import square
from hypertess.hull import build_hull, face_support_plane, visible_faces
from hypertess.lorentz import DegenerateError, DimensionError, DomainError, LorentzVec

def v(*coords):
    return LorentzVec.of(*coords)

TETRAHEDRON = [v(1, 0, 0), v(0, 1, 0), v(0, 0, 1), v(1, 1, 1)]

def pyramid(to_float = False):
    points = [v(1, 0, 0)] + [s.vec for s in square()]
    return [p.to_float() for p in points] if to_float else points

def face_sets(hull, relabel = lambda i: i):
    return {(f.dim, frozenset(relabel(i) for i in f.vertex_ids)) for f in hull.faces()}

def test_tetrahedron_face_counts():
    hull = build_hull(TETRAHEDRON)
    assert hull.rank == 3
    assert [len(hull.faces(d)) for d in range(4)] == [4, 6, 4, 1]
    assert hull.lattice.euler_characteristic() == 2
    assert len(hull.facets) == 4
    assert all(len(f.neighbors) == 3 for f in hull.facets)

def test_interior_points_are_not_vertices():
    hull = build_hull(TETRAHEDRON + [v(F(1, 2), F(1, 2), F(1, 2))])
    assert 4 not in hull.vertex_ids
    assert all(4 not in f.vertex_ids for f in hull.faces())

def test_coplanar_points_give_a_single_polygon():
    hull = build_hull([s.vec for s in square()])
    assert hull.rank == 2
    assert not hull.origin_in_affine_hull
    (quad,) = hull.faces(2)
    assert quad.vertex_ids == (0, 1, 2, 3)
    faces = visible_faces(hull)
    assert [f.dim for f in faces].count(2) == 1
    assert [f.dim for f in faces].count(1) == 4
    assert [f.dim for f in faces].count(0) == 4

@pytest.mark.parametrize("to_float", [False, True])
def test_pyramid_merges_the_base_and_sees_the_sides(to_float):
    hull = build_hull(pyramid(to_float))
    assert [len(hull.faces(d)) for d in range(3)] == [5, 8, 5]
    base = hull.face([1, 2, 3, 4])
    assert base is not None and base.dim == 2
    assert not hull.is_visible(base)
    faces = visible_faces(hull)
    assert [f.dim for f in faces].count(2) == 4
    assert [f.dim for f in faces].count(1) == 8
    assert [f.dim for f in faces].count(0) == 5

def test_support_planes_touch_exactly_their_faces():
    points = pyramid()
    hull = build_hull(points)
    origin = v(0, 0, 0)
    for face in visible_faces(hull):
        plane = face_support_plane(hull, face)
        for i, p in enumerate(points):
            if i in face.vertex_ids:
                assert plane.contains(p)
            else:
                assert plane.side_of(p) > 0
        assert plane.side_of(origin) < 0

def test_invisible_faces_have_no_support_plane():
    hull = build_hull(pyramid())
    with pytest.raises(DomainError):
        face_support_plane(hull, hull.face([1, 2, 3, 4]))

def test_origin_inside_the_hull():
    hull = build_hull([v(1, 0, 0), v(-1, 0, 0), v(0, 1, 0), v(0, -1, 0)])
    with pytest.raises(DomainError):
        visible_faces(hull)

def test_two_points_give_an_edge():
    hull = build_hull([v(1, 0, 0), v(F(5, 3), F(4, 3), 0)])
    assert [f.dim for f in visible_faces(hull)] == [0, 0, 1]

def test_seed_and_input_order_do_not_change_the_lattice():
    points = pyramid()
    reference = face_sets(build_hull(points))
    assert face_sets(build_hull(points, seed = 7)) == reference
    n = len(points)
    assert face_sets(build_hull(points[::-1]), lambda i: n - 1 - i) == reference
    assert [f.vertex_ids for f in build_hull(points).faces()] == [f.vertex_ids for f in build_hull(points).faces()]

def test_duplicates_and_bad_input():
    hull = build_hull(TETRAHEDRON + [v(1, 0, 0)])
    assert 4 not in hull.vertex_ids
    with pytest.raises(DegenerateError):
        build_hull([v(1, 0, 0), v(1, 0, 0)])
    with pytest.raises(DegenerateError):
        build_hull([])
    with pytest.raises(DimensionError):
        build_hull([v(1, 0, 0), v(1, 0)])
