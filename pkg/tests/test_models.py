import math
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from hypertess.configuration import Configuration
from hypertess.fixtures import three_point
from hypertess.lorentz import DegenerateError, DomainError, LorentzVec, Tolerances, minkowski
from hypertess.models import (AffinePlane, HPoint, Model, ModelPoint, Side, SphereKind, classify_hypersphere, classify_plane,
                              convex_side, dist, equidistant_witness, geodesic_point, horoball_intersection, horoball_ray,
                              horosphere_chart, horosphere_level_shift, ideal_point, lift, project_to_hyperboloid,
                              separating_plane, to_model)

def v(*coords):
    return LorentzVec.of(*coords)

def test_lift_from_models():
    assert lift(ModelPoint(Model.POINCARE, (0, 0))).vec == v(1, 0, 0)
    assert lift(ModelPoint(Model.POINCARE, (F(1, 2), 0))).vec == v(F(5, 3), F(4, 3), 0)
    assert lift(ModelPoint(Model.KLEIN, (0, 0))).vec == v(1, 0, 0)
    assert lift(ModelPoint(Model.KLEIN, (F(3, 5), 0))).vec == v(F(5, 4), F(3, 4), 0)
    assert lift(ModelPoint(Model.UPPER_HALF, (0, 1))).vec == v(1, 0, 0)
    assert lift(ModelPoint(Model.HYPERBOLOID, (F(5, 3), F(4, 3), 0))).is_exact

def test_klein_points_without_rational_lift():
    with pytest.raises(DomainError):
        lift(ModelPoint(Model.KLEIN, (F(1, 2), 0)))
    configuration = Configuration()
    configuration.set_param_value("Tolerances", "exact", False)
    x = lift(ModelPoint(Model.KLEIN, (F(1, 2), 0)), Tolerances(configuration))
    assert not x.is_exact
    assert x.coords[0] == pytest.approx(2 / math.sqrt(3))

def test_points_outside_the_models_are_rejected():
    with pytest.raises(DomainError):
        ModelPoint(Model.POINCARE, (1, 0))
    with pytest.raises(DomainError):
        ModelPoint(Model.UPPER_HALF, (0, 0))
    with pytest.raises(DomainError):
        HPoint.of(1, 1, 0)
    with pytest.raises(DomainError):
        HPoint.of(-1, 0, 0)

def test_model_names():
    assert Model.parse("poincare") == Model.POINCARE
    assert Model.parse("halfplane") == Model.UPPER_HALF
    assert Model.parse("klein_ball") == Model.KLEIN
    with pytest.raises(DomainError):
        Model.parse("sphere")

coordinate = st.fractions(min_value = F(-7, 10), max_value = F(7, 10), max_denominator = 20)

@given(coordinate, coordinate)
def test_poincare_round_trip_is_exact(a, b):
    x = lift(ModelPoint(Model.POINCARE, (a, b)))
    assert x.is_exact
    assert minkowski(x.vec, x.vec) == -1
    assert to_model(x, Model.POINCARE).coords == (a, b)
    assert lift(to_model(x, Model.UPPER_HALF)).vec == x.vec

def test_project_to_hyperboloid():
    assert project_to_hyperboloid(v(2, 0, 0)).vec == v(1, 0, 0)
    assert project_to_hyperboloid(v(1, 0, 0)).vec == v(1, 0, 0)
    assert project_to_hyperboloid(v(F(10, 3), F(8, 3), 0)).vec == v(F(5, 3), F(4, 3), 0)
    with pytest.raises(DomainError):
        project_to_hyperboloid(v(0, 1, 0))
    with pytest.raises(DomainError):
        project_to_hyperboloid(v(-1, 0, 0))

def test_project_far_vector_to_hyperboloid():
    # -x∘x = 2·10⁹ - 1 is not a square, so the projection is a float point with x0 near 22360.
    p = project_to_hyperboloid(v(10**9, 10**9 - 1, 0))
    assert not p.is_exact
    assert p.coords[0] == pytest.approx(10**9 / math.sqrt(2 * 10**9 - 1))
    assert p.coords[1] == pytest.approx((10**9 - 1) / math.sqrt(2 * 10**9 - 1))

def test_float_points_far_from_the_origin():
    p = HPoint.of(4576.254344328389, 4576.254235068727, 0.0)
    assert abs(minkowski(p.vec, p.vec) + 1) < 1e-12 * p.coords[0] ** 2
    with pytest.raises(DomainError):
        HPoint.of(4576.0, 4575.0, 0.0)
    with pytest.raises(DomainError):
        HPoint.of(1.0, 0.1, 0.0)

def test_distances_and_geodesics():
    o = HPoint.of(1, 0, 0)
    assert dist(o, o) == 0
    assert dist(HPoint.of(math.cosh(1), math.sinh(1), 0.0), o) == pytest.approx(1)
    assert dist(lift(ModelPoint(Model.POINCARE, (F(1, 2), 0))), o) == pytest.approx(math.log(3))
    y = HPoint.of(math.cosh(2), math.sinh(2), 0.0)
    assert geodesic_point(o, y, 1).coords == pytest.approx((math.cosh(1), math.sinh(1), 0.0))
    assert geodesic_point(o, y, 0).coords == pytest.approx(o.coords)
    assert geodesic_point(o, y, 2).coords == pytest.approx(y.coords)
    with pytest.raises(DegenerateError):
        geodesic_point(o, o, 1)

def test_horoball_ray():
    o, u = HPoint.of(1, 0, 0), v(1, 1, 0)
    assert horoball_ray(o, u, 0).coords == pytest.approx((1, 0, 0))
    assert horoball_ray(o, u, math.log(2)).coords == pytest.approx((1.25, 0.75, 0))
    assert float(minkowski(horoball_ray(o, u, 1).vec, u.to_float())) == pytest.approx(-math.exp(-1))
    with pytest.raises(DomainError):
        horoball_ray(o, v(1, 0, 0), 1)
    with pytest.raises(DomainError):
        horoball_ray(o, v(2, 2, 0), 1)

def test_classify_metric_sphere():
    sphere = classify_hypersphere(three_point("left"))
    assert sphere.kind == SphereKind.METRIC
    assert sphere.center.vec == v(1, 0, 0)
    assert sphere.cosh_radius_squared == F(25, 9)
    assert sphere.radius == pytest.approx(math.log(3))

def test_classify_symmetric_triple_at_radius_one():
    points = [HPoint.of(math.cosh(1), math.sinh(1) * math.cos(a), math.sinh(1) * math.sin(a)) for a in (0, 2 * math.pi / 3, 4 * math.pi / 3)]
    sphere = classify_hypersphere(points)
    assert sphere.kind == SphereKind.METRIC
    assert sphere.center.coords == pytest.approx((1, 0, 0), abs = 1e-9)
    assert sphere.radius == pytest.approx(1)

def test_classify_horosphere():
    sphere = classify_hypersphere(three_point("middle"))
    assert sphere.kind == SphereKind.HOROSPHERE
    assert sphere.ideal == v(1, 1, 0)
    assert sphere.plane == AffinePlane(v(1, 1, 0), -1)

def test_classify_equidistant():
    points = [HPoint.of(math.sqrt(2), 0.0, 1.0), HPoint.of(math.sqrt(3), 1.0, 1.0), HPoint.of(math.sqrt(3), -1.0, 1.0)]
    sphere = classify_hypersphere(points)
    assert sphere.kind == SphereKind.EQUIDISTANT
    assert sphere.distance == pytest.approx(math.acosh(math.sqrt(2)))
    exact = classify_hypersphere(three_point("right"))
    assert exact.kind == SphereKind.EQUIDISTANT
    assert exact.sinh_distance_squared == 1
    assert exact.component == 1

def test_classify_plane_through_origin_and_missing_planes():
    assert classify_plane(AffinePlane(v(0, 1, 0), 0)).kind == SphereKind.TOTALLY_GEODESIC
    with pytest.raises(DomainError):
        classify_plane(AffinePlane(v(1, 0, 0), F(-1, 2)))
    with pytest.raises(DomainError):
        classify_plane(AffinePlane(v(1, 1, 0), 1))
    with pytest.raises(DegenerateError):
        classify_hypersphere([HPoint.of(1, 0, 0), HPoint.of(F(5, 3), F(4, 3), 0)])

def test_convex_side():
    ball = AffinePlane(v(1, 0, 0), F(-5, 3))
    assert convex_side(ball).side == Side.GEQ
    assert convex_side(ball).contains(HPoint.of(1, 0, 0))
    assert convex_side(AffinePlane(v(1, 1, 0), -1)).side == Side.GEQ
    assert convex_side(AffinePlane(v(0, 0, 1), 1)).side == Side.LEQ
    assert len(convex_side(AffinePlane(v(0, 0, 1), 0))) == 2

def test_separating_plane():
    plane = separating_plane([HPoint.of(1, 0, 0)], HPoint.of(F(5, 3), F(4, 3), 0))
    assert plane.u == v(0, F(4, 3), 0)
    assert plane.c == 0
    with pytest.raises(DomainError):
        separating_plane([HPoint.of(1, 0, 0)], HPoint.of(1, 0, 0))

def test_separating_plane_is_symmetric_for_mirror_configurations():
    C = [lift(ModelPoint(Model.POINCARE, (F(-1, 2), 0))), lift(ModelPoint(Model.POINCARE, (F(1, 2), 0)))]
    x0 = lift(ModelPoint(Model.POINCARE, (0, F(1, 2))))
    plane = separating_plane(C, x0)
    assert plane.u.coords[1] == pytest.approx(0, abs = 1e-6)
    assert minkowski(plane.u, x0.vec) > 0
    assert all(minkowski(plane.u, c.vec) <= 1e-9 for c in C)

def test_horosphere_chart():
    o, u = HPoint.of(1, 0, 0), v(1, 1, 0)
    assert horosphere_chart(o, u, v(0, 0, 0)).vec == o.vec
    assert horosphere_chart(o, u, v(0, 0, 1)).vec == v(F(3, 2), F(1, 2), 1)
    with pytest.raises(DomainError):
        horosphere_chart(o, u, v(0, 1, 0))

def test_horosphere_level_shift():
    assert horosphere_level_shift(-1) == 0
    assert horosphere_level_shift(-1 / math.e) == pytest.approx(1)
    assert horosphere_level_shift(-2) == pytest.approx(-math.log(2))
    with pytest.raises(DomainError):
        horosphere_level_shift(0)

def test_horoball_intersection():
    tangent = horoball_intersection(v(1, 1, 0), v(1, -1, 0))
    assert not tangent.empty
    assert tangent.r0 == -1
    assert tangent.center.vec == v(1, 0, 0)
    assert tangent.radius == 0
    assert horoball_intersection(v(1, 1, 0), v(2, -2, 0)).empty
    ball = horoball_intersection(v(1, 1, 0), v(F(1, 2), F(-1, 2), 0))
    assert ball.r0 == F(-3, 2)
    assert ball.radius == pytest.approx(math.acosh(1.5))
    with pytest.raises(DegenerateError):
        horoball_intersection(v(1, 1, 0), v(2, 2, 0))

def test_ideal_point():
    assert ideal_point(v(1, 1, 0), Model.POINCARE) == (1.0, 0.0)
    assert ideal_point(v(1, 1, 0), Model.UPPER_HALF) is None
    assert ideal_point(v(1, -1, 0), Model.UPPER_HALF) == (0.0, 0.0)

def test_equidistant_witness():
    left = three_point("left")
    assert equidistant_witness(left, [0, 1, 2], [], None) == v(1, 0, 0)
    assert equidistant_witness(three_point("middle"), [0, 1, 2], [], None) is None
