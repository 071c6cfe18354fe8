import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

import settings
from coeff import FieldSpec
from errors import (
    DuplicatePoint,
    InvalidField,
    PolynomialSyntaxError,
    SchemeFileError,
    UnknownVariable,
    WrongRing,
)
from poly import Ring
from scheme_parser import FORMAT_HELP, load_scheme_file, parse_polynomial, render_polynomial, scheme_from_dict
from schemes import COMPONENTS, FATPOINTS, IDEAL

Q = FieldSpec.rationals()
F3 = FieldSpec.prime_field(3)
P2 = Ring(Q, 2)
A2 = Ring(Q, 2, projective=False)
X0, X1, X2 = (P2.var(i) for i in range(3))


@pytest.mark.parametrize(
    "text, expected",
    [
        ("X1^2+X0^2", X1**2 + X0**2),
        ("(X2^2-2*X0)^2", (X2**2 - 2 * X0) ** 2),
        ("0", P2.zero),
        ("X1**3 - X0*X2^2", X1**3 - X0 * X2**2),
        ("  -3 * X0 ", -3 * X0),
    ],
)
def test_parse_polynomial(text, expected):
    assert parse_polynomial(text, P2) == expected


def test_parse_rational_coefficients():
    f = parse_polynomial("2/3*X0 + X1/2", P2)
    assert f == X0 * Q.from_fraction(2, 3) + X1 * Q.from_fraction(1, 2)


def test_parse_reduces_into_prime_field():
    R = Ring(F3, 2)
    Y0, Y1 = R.var(0), R.var(1)
    assert parse_polynomial("X1^2 + 4*X0^2", R) == Y1**2 + Y0**2
    assert parse_polynomial("X1/2", R) == Y1 * F3.from_integer(2)


def test_parse_affine_ring():
    x1, x2 = A2.var(1), A2.var(2)
    assert parse_polynomial("x1*x2 - 1", A2) == x1 * x2 - 1


@pytest.mark.parametrize(
    "text, position",
    [
        ("X1 + $", 5),
        ("X1X2", 0),
        ("2X1", 1),
        ("X1 (X2)", 3),
        ("X1)", 2),
        ("X1 + + X2", 5),
        ("X1 ^", 3),
        ("X1^X2", 3),
        ("X1 * )", 5),
        ("(X1+X2)^1000", 8),
    ],
)
def test_syntax_errors_carry_positions(text, position):
    with pytest.raises(PolynomialSyntaxError) as info:
        parse_polynomial(text, P2)
    assert info.value.position == position
    assert f"(at position {position})" in str(info.value)


def test_dangling_operators_are_named():
    with pytest.raises(PolynomialSyntaxError, match=r"dangling operator '\+'"):
        parse_polynomial("X1 + + X2", P2)
    with pytest.raises(PolynomialSyntaxError, match=r"ends with '\^'"):
        parse_polynomial("X1 ^", P2)


def test_degree_limit():
    assert parse_polynomial(f"X1^{settings.MAX_EXPONENT}", P2) == X1**settings.MAX_EXPONENT
    with pytest.raises(PolynomialSyntaxError, match="exceeds"):
        parse_polynomial("((X1+X2)^40)^40", P2)
    with pytest.raises(PolynomialSyntaxError, match="exceeds"):
        parse_polynomial(f"X1^{settings.MAX_EXPONENT + 1}", P2)


@pytest.mark.parametrize("text", ["", "   ", "X1 +", "(X1 + X0", "X1/X2"])
def test_malformed_polynomials(text):
    with pytest.raises(PolynomialSyntaxError):
        parse_polynomial(text, P2)


def test_unknown_and_misplaced_variables():
    with pytest.raises(UnknownVariable):
        parse_polynomial("X1 + Y", P2)
    with pytest.raises(UnknownVariable):
        parse_polynomial("X3", P2)
    with pytest.raises(WrongRing):
        parse_polynomial("x1 + X0", P2)
    with pytest.raises(WrongRing):
        parse_polynomial("X1", A2)


def test_render_polynomial():
    assert render_polynomial(X1**2 + X0**2) == "X0^2 + X1^2"
    assert render_polynomial(-X1 * X2 + 3 * X0) == "-X1*X2 + 3*X0"
    assert render_polynomial(P2.zero) == "0"
    assert render_polynomial(X0 * Q.from_fraction(-2, 3)) == "-2/3*X0"


terms = st.lists(
    st.tuples(st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3)),
              st.fractions(min_value=-9, max_value=9, max_denominator=5)),
    max_size=5,
)


@given(terms)
def test_render_then_parse_gives_the_same_polynomial(pairs):
    f = P2.zero
    for m, c in pairs:
        f += P2.monomial(m, Q.from_fraction(c.numerator, c.denominator))
    assert parse_polynomial(render_polynomial(f), P2) == f


def doc(**extra):
    base = {"format": 1, "field": "Q", "n": 2}
    base.update(extra)
    return base


def test_scheme_from_points():
    spec = scheme_from_dict(doc(points=[{"coords": ["2", "1", "0"]}, {"coords": ["1", "0", "1/2"], "multiplicity": 2}]))
    assert spec.source == FATPOINTS
    assert spec.fat_points[0].coords == (Q.one, Q.from_fraction(1, 2), Q.zero)
    assert spec.fat_points[1].multiplicity == 2


def test_scheme_from_ideal_and_components():
    spec = scheme_from_dict(doc(ideal=["X1^2 + X0^2", "(X2^2 - 2*X0^2)^2"], profile=[{"kappa": 4, "nu": 2}]),
                            label="curve")
    assert spec.source == IDEAL
    assert spec.label == "curve"
    assert spec.profile == ((4, 2),)
    comps = scheme_from_dict(doc(components=[["X1", "X2"], ["X1 - X0", "X2^2"]]))
    assert comps.source == COMPONENTS
    assert comps.components[1] == (X1 - X0, X2**2)


def test_prime_field_from_p():
    spec = scheme_from_dict(doc(field="Fp", p=3, ideal=["X1^2 + X2^2"]))
    assert spec.field == F3


@pytest.mark.parametrize(
    "bad",
    [
        doc(format=2, points=[{"coords": ["1", "0", "0"]}]),
        doc(n=0, points=[{"coords": ["1"]}]),
        doc(),
        doc(points=[{"coords": ["1", "0", "0"]}], ideal=["X1"]),
        doc(points=[{"multiplicity": 2}]),
        doc(points=[{"coords": ["1", "0"]}]),
        doc(points=[{"coords": ["1", "0", "0"], "multiplicity": "two"}]),
        doc(points=[{"coords": ["1", "0", "0"], "multiplicity": 0}]),
    ],
)
def test_scheme_file_errors_show_the_format(bad):
    with pytest.raises(SchemeFileError) as info:
        scheme_from_dict(bad)
    assert FORMAT_HELP in str(info.value)


def test_library_errors_pass_through():
    with pytest.raises(InvalidField):
        scheme_from_dict(doc(field="F4", points=[{"coords": ["1", "0", "0"]}]))
    with pytest.raises(DuplicatePoint):
        scheme_from_dict(doc(points=[{"coords": ["1", "1", "0"]}, {"coords": ["2", "2", "0"]}]))
    with pytest.raises(PolynomialSyntaxError):
        scheme_from_dict(doc(ideal=["X1 X2"]))


def test_load_scheme_file(tmp_path):
    path = tmp_path / "two_points.json"
    path.write_text(json.dumps(doc(points=[{"coords": ["1", "0", "0"]}, {"coords": ["1", "1", "0"]}])))
    spec = load_scheme_file(path)
    assert spec.label == "two_points"
    assert len(spec.fat_points) == 2


def test_load_scheme_file_errors(tmp_path):
    with pytest.raises(SchemeFileError, match="no such scheme file"):
        load_scheme_file(tmp_path / "missing.json")
    broken = tmp_path / "broken.json"
    broken.write_text("{ not json")
    with pytest.raises(SchemeFileError, match="invalid JSON"):
        load_scheme_file(broken)
    listing = tmp_path / "list.json"
    listing.write_text("[1, 2]")
    with pytest.raises(SchemeFileError, match="top level"):
        load_scheme_file(listing)


def test_shipped_fixtures_load(fixture_path):
    for rel in ["five_points/lines.json", "char3/f3.json", "curvilinear/curvilinear.json", "cbp/ci4.json"]:
        assert load_scheme_file(fixture_path(rel)).n == 2
