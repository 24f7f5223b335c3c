from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from hypertess import linalg

def test_coerce_keeps_exact_values_exact():
    assert linalg.coerce([1, F(1, 2)]) == (F(1), F(1, 2))
    assert all(isinstance(v, F) for v in linalg.coerce([1, F(1, 2)]))
    assert linalg.coerce([1, 0.5]) == (1.0, 0.5)
    assert all(isinstance(v, float) for v in linalg.coerce([1, 0.5]))

def test_parse_and_format_scalars():
    assert linalg.parse_scalar("3/4") == F(3, 4)
    assert linalg.parse_scalar("0.25") == F(1, 4)
    assert linalg.parse_scalar("3/4", exact = False) == 0.75
    assert linalg.format_scalar(F(-3, 4)) == "-3/4"
    assert linalg.format_scalar(F(2)) == "2"
    assert linalg.format_scalar(0.5) == 0.5
    with pytest.raises(ValueError):
        linalg.parse_scalar("three")
    with pytest.raises(ValueError):
        linalg.parse_scalar(True)

def test_rational_sqrt():
    assert linalg.rational_sqrt(F(25, 9)) == F(5, 3)
    assert linalg.rational_sqrt(F(2)) is None
    assert linalg.rational_sqrt(F(-1)) is None
    assert linalg.sqrt(F(4, 9)) == F(2, 3)
    assert linalg.sqrt(F(2)) == pytest.approx(2 ** 0.5)

def test_sign_uses_threshold_for_floats_only():
    assert linalg.sign(F(1, 10 ** 30)) == 1
    assert linalg.sign(1e-30, 1e-20) == 0
    assert linalg.sign(-0.5) == -1

def test_rank_and_nullspace_exact():
    rows = [[F(1), F(2), F(3)], [F(2), F(4), F(6)]]
    assert linalg.rank(rows) == 1
    kernel = linalg.nullspace(rows, 3)
    assert len(kernel) == 2
    for v in kernel:
        assert sum(a * b for a, b in zip(rows[0], v)) == 0

def test_nullspace_float():
    kernel = linalg.nullspace([[1.0, 1.0, 0.0], [0.0, 1.0, 1.0]], 3)
    assert len(kernel) == 1
    v = kernel[0]
    assert v[0] - v[1] + v[2] == pytest.approx(3 * v[0])
    assert v[0] + v[1] == pytest.approx(0.0, abs = 1e-12)

def test_solve():
    assert linalg.solve([[F(1), F(1)], [F(1), F(-1)]], [F(3), F(1)]) == [F(2), F(1)]
    assert linalg.solve([[F(1), F(1)], [F(1), F(1)]], [F(1), F(2)]) is None

def test_determinant_and_cofactor_normal():
    assert linalg.determinant([[F(2), F(1)], [F(1), F(3)]]) == 5
    assert linalg.determinant([[F(0), F(1)], [F(1), F(0)]]) == -1
    assert linalg.determinant([[F(1), F(2)], [F(2), F(4)]]) == 0
    normal = linalg.cofactor_normal([[F(1), F(0), F(0)], [F(0), F(1), F(0)]])
    assert normal == [0, 0, 1]

def test_inertia_of_lorentz_form():
    assert linalg.inertia([[F(-1), 0, 0], [0, F(1), 0], [0, 0, F(1)]]) == (1, 0, 2)
    assert linalg.inertia([[F(0), F(1)], [F(1), F(0)]]) == (1, 0, 1)
    assert linalg.inertia([[F(0), F(0)], [F(0), F(0)]]) == (0, 2, 0)
    assert linalg.inertia([[-1.0, 0.0], [0.0, 0.0]]) == (1, 1, 0)

def test_integerize():
    vectors, scale = linalg.integerize([[F(1, 2), F(1, 3)], [F(1), F(1, 4)]])
    assert scale == 12
    assert vectors == [[6, 4], [12, 3]]

small = st.fractions(min_value = -5, max_value = 5, max_denominator = 7)

@given(st.lists(st.lists(small, min_size = 3, max_size = 3), min_size = 1, max_size = 3))
def test_rank_nullity(rows):
    assert linalg.rank(rows) + len(linalg.nullspace(rows, 3)) == 3
