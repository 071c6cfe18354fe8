import pytest
from hypothesis import given
from hypothesis import strategies as st

from coeff import FieldSpec
from errors import CharTooSmall, FormDegreeOutOfRange, InvalidParameter
from formulas import (
    FatPointParams,
    binom,
    deg_fat_points,
    delta_bruteforce,
    delta_formula,
    dim_omega_local,
    euler_koszul_top_value,
    hf_omega_local,
    hf_omega_rtilde,
    hp_curvilinear,
    hp_omega_fatpoints,
    hp_recursion_dims,
)
from hilbert import HilbertData
from kaehler import local_omega_hilbert
from schemes import FatPoint, LocalRingProfile, SchemeSpec, compile_scheme

Q = FieldSpec.rationals()
F2 = FieldSpec.prime_field(2)


def test_binom_convention():
    assert binom(5, 2) == 10
    assert binom(2, 5) == 0
    assert binom(3, -1) == 0
    assert binom(0, 0) == 1


@pytest.mark.parametrize("n, mults, deg", [(2, (1, 1, 1), 3), (2, (1, 2), 4), (2, (2, 2, 1), 7), (3, (3,), 10),
                                           (2, (4,), 10), (2, (3, 2), 9), (2, (1,) * 14, 14)])
def test_deg_fat_points(n, mults, deg):
    assert deg_fat_points(FatPointParams(n, mults)) == deg


def test_params_validation():
    with pytest.raises(InvalidParameter):
        FatPointParams(0, (1,))
    with pytest.raises(InvalidParameter):
        FatPointParams(2, ())
    with pytest.raises(InvalidParameter):
        FatPointParams(2, (0,))
    with pytest.raises(InvalidParameter):
        FatPointParams(2, (1,), char=-1)


def test_params_from_scheme():
    spec = SchemeSpec(F2, 2, fat_points=(FatPoint((F2.one, F2.zero, F2.zero), 2),))
    assert FatPointParams.from_scheme(spec) == FatPointParams(2, (2,), 2)


@pytest.mark.parametrize(
    "n, k, m, values",
    [
        (2, 2, 1, [0, 2, 1, 0]),
        (2, 2, 2, [0, 0, 1, 0]),
        (1, 3, 1, [0, 1, 1, 0, 0]),
        (3, 2, 1, [0, 3, 3, 0]),
    ],
)
def test_local_hilbert_formula(n, k, m, values):
    data = hf_omega_local(n, k, m)
    assert data.upto(len(values) - 1) == values
    assert data.hp == 0


def test_local_dimensions():
    assert dim_omega_local(2, 2, 0) == 3
    assert dim_omega_local(2, 2, 1) == 3
    assert dim_omega_local(2, 2, 2) == 1
    assert dim_omega_local(2, 2, 3) == 0
    with pytest.raises(FormDegreeOutOfRange):
        dim_omega_local(2, 2, -1)


@pytest.mark.parametrize("n, k, m, delta", [(2, 2, 1, 3), (2, 2, 2, 2), (1, 2, 1, 1), (3, 2, 1, 6)])
def test_delta(n, k, m, delta):
    assert delta_formula(n, k, m) == delta
    assert delta_bruteforce(n, k, m) == delta


def test_delta_drops_in_char_two():
    assert delta_bruteforce(2, 2, 1, F2) == 1


def test_local_formulas_refuse_small_characteristic():
    with pytest.raises(CharTooSmall):
        hf_omega_local(2, 2, 1, char=2)
    with pytest.raises(CharTooSmall):
        dim_omega_local(2, 3, 1, char=3)
    assert hf_omega_local(2, 2, 1, char=3) == hf_omega_local(2, 2, 1)
    with pytest.raises(FormDegreeOutOfRange):
        hf_omega_local(2, 2, 3)


def test_top_degree_value_matches_engine():
    for n, k, m in [(2, 2, 1), (3, 2, 1), (3, 3, 2)]:
        assert local_omega_hilbert(Q, n, k, m).value(m + k - 1) == euler_koszul_top_value(n, k, m)


def test_fat_point_hilbert_polynomials():
    reduced = FatPointParams(2, (1,) * 5)
    assert [hp_omega_fatpoints(reduced, m) for m in (1, 2, 3)] == [5, 0, 0]
    double = FatPointParams(2, (2,))
    assert [hp_omega_fatpoints(double, m) for m in (1, 2, 3)] == [6, 4, 1]
    with pytest.raises(FormDegreeOutOfRange):
        hp_omega_fatpoints(double, 4)
    with pytest.raises(CharTooSmall):
        hp_omega_fatpoints(FatPointParams(2, (2,), 2), 1)


def test_curvilinear_hilbert_polynomials():
    assert hp_curvilinear(((4, 2),), 0, 8) == (12, 4)
    assert hp_curvilinear(((1, 1),) * 5, 0, 5) == (5, 0)
    assert hp_curvilinear(((1, 2), (1, 2)), 0, 4) == (6, 2)
    assert hp_curvilinear(((1, 2),), 2, 2) == (4, 2)
    assert hp_curvilinear(LocalRingProfile(((4, 2),)), 0, 8) == (12, 4)


def test_rtilde_and_recursion():
    assert hf_omega_rtilde(5, 0) == HilbertData((0, 5, 5), 5, 1)
    assert hf_omega_rtilde(3, 3).hp == 6
    assert hp_recursion_dims([6, 4, 1], 3) == [3, 3, 1, 0]
    with pytest.raises(ValueError):
        hf_omega_rtilde(-1, 0)


@given(st.integers(1, 7), st.integers(1, 7), st.data())
def test_top_value_closed_form(n, k, data):
    m = data.draw(st.integers(1, n))
    assert euler_koszul_top_value(n, k, m) == binom(m + k - 2, m) * binom(n + k - 2, n - m - 1)


@given(st.lists(st.tuples(st.integers(-2, 2), st.integers(-2, 2)), min_size=1, max_size=5, unique=True))
def test_rtilde_matches_the_stable_value_for_reduced_points(coords):
    points = tuple(FatPoint((Q.one, Q.from_integer(a), Q.from_integer(b)), 1) for a, b in coords)
    ctx = compile_scheme(SchemeSpec(Q, 2, fat_points=points))
    rtilde = hf_omega_rtilde(ctx.deg, ctx.affine_dim(1))
    assert rtilde.value(0) == 0
    assert rtilde.hp == ctx.omega(1).hp == ctx.deg == len(coords)


def test_rtilde_of_a_double_point():
    ctx = compile_scheme(SchemeSpec(Q, 2, fat_points=(FatPoint((Q.one, Q.zero, Q.zero), 2),)))
    rtilde = hf_omega_rtilde(ctx.deg, ctx.affine_dim(1))
    assert rtilde.hp == ctx.omega(1).hp == 6


@pytest.mark.parametrize("mults", [(2,), (1, 2), pytest.param((3, 1), marks=pytest.mark.slow)])
def test_fat_point_formula_matches_engine(mults):
    coords = [(1, 0, 0), (1, 1, 2), (1, -1, 3)]
    points = tuple(FatPoint(tuple(Q.from_integer(c) for c in coords[i]), k) for i, k in enumerate(mults))
    spec = SchemeSpec(Q, 2, fat_points=points)
    ctx = compile_scheme(spec)
    params = FatPointParams.from_scheme(spec)
    assert ctx.deg == deg_fat_points(params)
    hps = [hp_omega_fatpoints(params, m) for m in (1, 2, 3)]
    assert [ctx.omega(m).hp for m in (1, 2, 3)] == hps
    assert [ctx.affine_dim(m) for m in range(3)] == hp_recursion_dims(hps[:2], ctx.deg)
