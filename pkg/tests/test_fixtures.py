import random
from fractions import Fraction as F

import pytest

from hypertess.delaunay import delaunay_tessellation
from hypertess.fixtures import (THREE_POINT_CONFIGURATIONS, parabolic_group, punctured_torus_group, random_poincare_sites,
                                square, sweep_triple, three_point)
from hypertess.lorentz import DomainError, minkowski
from hypertess.models import Model, SphereKind, to_model

@pytest.mark.parametrize("config", THREE_POINT_CONFIGURATIONS)
def test_three_point_configurations_are_isosceles(config):
    x, y, z = three_point(config)
    assert minkowski(x.vec, y.vec) == minkowski(x.vec, z.vec)

def test_unknown_configuration():
    with pytest.raises(DomainError):
        three_point("center")

def test_square_is_exact():
    sites = square()
    assert all(s.is_exact for s in sites)
    assert to_model(sites[0], Model.POINCARE).coords == (F(1, 2), 0)

@pytest.mark.parametrize("t, kind", [(F(1, 2), SphereKind.METRIC), (F(1, 3), SphereKind.METRIC), (F(3, 4), SphereKind.EQUIDISTANT)])
def test_sweep_triple(t, kind):
    sites = sweep_triple(t)
    assert minkowski(sites[0].vec, sites[1].vec) == F(-5, 3)
    (cell,) = delaunay_tessellation(sites).cells(2)
    assert cell.circumsphere.kind == kind

def test_sweep_triple_requires_positive_parameter():
    with pytest.raises(DomainError):
        sweep_triple(F(0))

def test_random_sites():
    sites = random_poincare_sites(random.Random(2), 10, denominator = 16, radius = F(1, 2))
    assert len({s.coords for s in sites}) == 10
    for s in sites:
        p = to_model(s, Model.POINCARE).coords
        assert p[0] * p[0] + p[1] * p[1] < F(1, 4)
        assert (p[0] * 16).denominator == 1
    assert random_poincare_sites(random.Random(2), 10, denominator = 16, radius = F(1, 2)) == sites
    assert random_poincare_sites(random.Random(0), 3, dim = 3)[0].dim == 3

def test_groups():
    gens, bases = punctured_torus_group()
    assert [g.word for g in gens] == ["a", "b"]
    assert all(g.preserves_form() for g in gens)
    (a,), _ = parabolic_group()
    assert a.is_parabolic()
    assert bases[0].coords == (1, 0, 0)
