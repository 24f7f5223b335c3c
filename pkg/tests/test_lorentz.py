from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from hypertess.configuration import Configuration
from hypertess.lorentz import (CausalType, DegenerateError, DimensionError, DomainError, LorentzVec, Subspace, Tolerances,
                               bar, classify_subspace, classify_vector, gram_inertia, lorentz_norm, minkowski,
                               orthogonal_complement)

def v(*coords):
    return LorentzVec.of(*coords)

def test_minkowski_product():
    assert minkowski(v(1, 0, 0), v(1, 0, 0)) == -1
    assert minkowski(v(1, 1, 0), v(1, 1, 0)) == 0
    assert minkowski(v(F(5, 3), F(4, 3), 0), v(1, 0, 0)) == F(-5, 3)

def test_minkowski_rejects_mismatched_dimensions():
    with pytest.raises(DimensionError):
        minkowski(v(1, 0, 0), v(1, 0))

def test_exact_and_float_vectors():
    assert v(1, F(1, 2)).is_exact
    assert not v(1, 0.5).is_exact
    assert v(1, 0.5).coords == (1.0, 0.5)

def test_classify_vector():
    assert classify_vector(v(1, 0, 0)) == CausalType.TIME_LIKE
    assert classify_vector(v(1, 1, 0)) == CausalType.LIGHT_LIKE
    assert classify_vector(v(0, 1, 0)) == CausalType.SPACE_LIKE
    assert classify_vector(v(0, 0, 0)) == CausalType.ZERO
    assert v(2, 1, 0).causal_type == CausalType.TIME_LIKE

def test_classify_vector_uses_relative_tolerance_for_floats():
    assert classify_vector(v(1.0, 1.0 + 1e-14, 0.0)) == CausalType.LIGHT_LIKE
    assert classify_vector(v(1.0, 1.0 + 1e-6, 0.0)) == CausalType.SPACE_LIKE
    configuration = Configuration()
    configuration.set_param_value("Tolerances", "eps", 1e-3)
    assert classify_vector(v(1.0, 1.0 + 1e-6, 0.0), Tolerances(configuration)) == CausalType.LIGHT_LIKE

def test_bar_turns_euclidean_into_lorentz_products():
    eta, x = v(2, 3, -1), v(F(1, 2), 5, 7)
    assert minkowski(bar(eta), x) == -eta.dot(x)
    assert bar(bar(eta)) == eta

def test_orthogonal_complement():
    assert orthogonal_complement(Subspace((v(0, 1, 0), v(0, 0, 1)))).primitive() == v(1, 0, 0)
    light = orthogonal_complement(Subspace((v(1, 1, 0), v(0, 0, 1))))
    assert light.primitive() == v(1, 1, 0)
    assert light.causal_type == CausalType.LIGHT_LIKE
    assert orthogonal_complement(Subspace((v(1, 0, 0), v(0, 1, 0)))).primitive() == v(0, 0, 1)

def test_orthogonal_complement_needs_a_hyperplane():
    with pytest.raises(DimensionError):
        orthogonal_complement(Subspace((v(1, 0, 0),)))

def test_dependent_basis_is_degenerate():
    with pytest.raises(DegenerateError):
        Subspace((v(1, 1, 0), v(2, 2, 0)))

def test_classify_subspace():
    assert classify_subspace(Subspace((v(1, 1, 0),))) == CausalType.LIGHT_LIKE
    assert classify_subspace(Subspace((v(1, 0, 0), v(0, 1, 0)))) == CausalType.TIME_LIKE
    assert classify_subspace(Subspace((v(0, 1, 0), v(0, 0, 1)))) == CausalType.SPACE_LIKE
    assert gram_inertia([v(1, 0, 0), v(0, 1, 0)]) == (1, 0, 1)

def test_lorentz_norm():
    assert lorentz_norm(v(0, 3, 4)) == 5.0
    with pytest.raises(DomainError):
        lorentz_norm(v(1, 0, 0))

entries = st.fractions(min_value = -4, max_value = 4, max_denominator = 5)

@given(st.tuples(entries, entries, entries), st.tuples(entries, entries, entries))
def test_minkowski_is_symmetric(a, b):
    assert minkowski(LorentzVec(a), LorentzVec(b)) == minkowski(LorentzVec(b), LorentzVec(a))

@given(entries, entries)
def test_complement_is_orthogonal_to_the_subspace(a, b):
    basis = (LorentzVec((F(0), a, F(1))), LorentzVec((F(1), b, F(0))))
    u = orthogonal_complement(Subspace(basis))
    assert all(minkowski(u, w) == 0 for w in basis)
    assert not u.is_zero()
