import pytest
from hypothesis import given
from hypothesis import strategies as st

from coeff import FieldSpec
from errors import InfiniteDimensional, NotZeroDimensional, StabilizationViolated, X0ZeroDivisor
from groebner import GradedFreeModule, Ideal, ModuleOrder, Submodule, ideal_power, intersect
from hilbert import (
    HilbertData,
    affine_hilbert,
    affine_k_dimension,
    affine_ring_dimension,
    castelnuovo_function,
    hf_module_quotient,
    hf_ring_quotient,
    hf_x_autostop,
    stabilize,
)
from poly import DEGLEX, Ring

Q = FieldSpec.rationals()
F3 = FieldSpec.prime_field(3)
P2 = Ring(Q, 2)
A2 = Ring(Q, 2, projective=False)
X0, X1, X2 = (P2.var(i) for i in range(3))
x1, x2 = A2.var(1), A2.var(2)


def point(a, b):
    return Ideal(P2, [X1 - a * X0, X2 - b * X0])


def points(coords):
    ideal = point(*coords[0])
    for c in coords[1:]:
        ideal = intersect(ideal, point(*c))
    return ideal


def test_zero_ideal_counts_monomials():
    assert hf_ring_quotient(Ideal(P2, []), 3) == [1, 3, 6, 10]


def test_complete_intersection_over_f3():
    R = Ring(F3, 2)
    Y0, Y1, Y2 = (R.var(i) for i in range(3))
    I = Ideal(R, [Y1**2 + Y2**2, Y0 * Y1**2 + Y1**3 + Y2**3])
    assert hf_ring_quotient(I, 4) == [1, 3, 5, 6, 6]


def test_non_reduced_scheme_of_degree_six():
    cubic = X2**3 + 2 * X0**2 * X2 + X0**3
    I = Ideal(P2, [(X1 - X0) ** 2, cubic])
    assert hf_ring_quotient(I, 4) == [1, 3, 5, 6, 6]


def test_free_module_twists():
    F = GradedFreeModule(P2, (1, 1, 1))
    assert hf_module_quotient(F, Submodule(F, []), 2) == [0, 3, 9]


def test_module_quotient_is_order_independent():
    F = GradedFreeModule(P2, (1, 1))
    N = Submodule(F, [F.element({0: X1, 1: X2}), F.element({0: X2 * X0, 1: -X0**2}), F.element({1: X1**2})])
    default = hf_module_quotient(F, N, 5)
    assert hf_module_quotient(F, N, 5, ModuleOrder(DEGLEX, "TOP_REV")) == default


@pytest.mark.parametrize(
    "values, bound, expected",
    [
        ([5, 5, 5], 0, (5, 0)),
        ([1, 3, 5, 6, 6, 6], 4, (6, 3)),
        ([0, 3, 8, 11, 10, 10, 10, 10, 10], 7, (10, 4)),
        ([0, 0, 1, 2, 3, 3, 3], 5, (3, 4)),
    ],
)
def test_stabilize(values, bound, expected):
    data = stabilize(values, bound)
    assert (data.hp, data.ri) == expected
    assert data.upto(len(values) + 2)[-1] == expected[0]


def test_stabilize_rejects_late_changes():
    with pytest.raises(StabilizationViolated):
        stabilize([1, 3, 5, 6, 7], 3)
    with pytest.raises(ValueError):
        stabilize([1, 3], 3)


def test_autostop_single_point():
    data = hf_x_autostop(point(0, 0))
    assert data == HilbertData((1, 1), 1, 0)


def test_autostop_five_points():
    data = hf_x_autostop(points([(0, 0), (1, 0), (2, 0), (0, 1), (0, 2)]))
    assert (data.hp, data.ri) == (5, 2)
    assert data.upto(3) == [1, 3, 5, 5]


def test_autostop_double_point():
    data = hf_x_autostop(ideal_power(point(0, 0), 2))
    assert (data.hp, data.ri) == (3, 1)


def test_autostop_rejects_bad_ideals():
    embedded = Ideal(P2, [X0 * X1, X0 * X2, X1**2, X1 * X2, X2**2])
    with pytest.raises(X0ZeroDivisor):
        hf_x_autostop(embedded)
    with pytest.raises(NotZeroDimensional):
        hf_x_autostop(Ideal(P2, [X1]), cap=6)
    with pytest.raises(NotZeroDimensional):
        hf_x_autostop(Ideal(P2, [P2.one]))


def test_castelnuovo_function():
    assert castelnuovo_function(HilbertData((1, 3, 5, 5), 5, 2)) == [1, 2, 2]


def test_affine_dimensions():
    assert affine_ring_dimension(Ideal(A2, [x1, x2])) == 1
    assert affine_ring_dimension(Ideal(A2, [x1**2, x2**2])) == 4
    assert affine_hilbert(Ideal(A2, [x1**2, x2**2])) == [1, 2, 1]
    with pytest.raises(InfiniteDimensional):
        affine_ring_dimension(Ideal(A2, [x1]))


def test_affine_module_dimension():
    F = GradedFreeModule(A2, (0, 0))
    N = Submodule(F, [F.element({0: x1}), F.element({0: x2}), F.element({1: x1**2}), F.element({1: x2})])
    assert affine_k_dimension(F, N) == 3
    with pytest.raises(InfiniteDimensional):
        affine_k_dimension(F, Submodule(F, [F.element({0: x1}), F.element({1: x2})]))


def test_hilbert_data_validation():
    HilbertData((1, 3, 5, 5), 5, 2)
    with pytest.raises(ValueError):
        HilbertData((1, 3, 5, 5), 5, 3)
    with pytest.raises(ValueError):
        HilbertData((1, 3, 4), 5, 2)
    with pytest.raises(ValueError):
        HilbertData((-1, 0), 0, 1)


def test_hilbert_data_total():
    assert HilbertData((0, 2, 1, 0), 0, 3).total() == 3
    with pytest.raises(InfiniteDimensional):
        HilbertData((1, 1), 1, 0).total()


@given(st.lists(st.tuples(st.integers(-3, 3), st.integers(-3, 3)), min_size=1, max_size=4, unique=True))
def test_points_have_degree_many_values(coords):
    data = hf_x_autostop(points(coords))
    assert data.hp == len(coords)
    assert data.ri <= len(coords) - 1
    values = data.upto(data.ri + 1)
    assert all(a < b for a, b in zip(values[: data.ri + 1], values[1 : data.ri + 1]))
