from fractions import Fraction

import pytest

from nashres import (
    MultiPoly,
    arc_to_document,
    load_presentation,
    parse_arc,
    parse_poly,
    presentation_to_document,
)
from nashres.errors import ParseError, ValidationError
from nashres.parsing import poly_text, series_text

from conftest import exact_arc


def test_parse_umbrella():
    f = parse_poly("x^2 - z1^2*z2")
    assert f.vars == ("x", "z1", "z2")
    assert f.terms == {(2, 0, 0): 1, (0, 2, 1): -1}


def test_parse_cusp_without_stars():
    f = parse_poly("x^2-z^3")
    assert f.terms == {(2, 0): 1, (0, 3): -1}


def test_parse_error_position():
    with pytest.raises(ParseError) as err:
        parse_poly("x^^2")
    assert err.value.column == 3


def test_unknown_identifier():
    with pytest.raises(ParseError, match="unknown identifier"):
        parse_poly("x + y")


def test_juxtaposition_and_rationals():
    assert parse_poly("2x", ("x",)) == MultiPoly(("x",), {(1,): 2})
    assert parse_poly("3/4 z^2") == MultiPoly(("z",), {(2,): Fraction(3, 4)})
    assert parse_poly("(x + z)(x - z)") == parse_poly("x^2 - z^2")


def test_unicode_minus():
    assert parse_poly("x−z") == parse_poly("x - z")


def test_leading_sign():
    assert parse_poly("-z^3 + x^2") == parse_poly("x^2 - z^3")


def test_trailing_input_rejected():
    with pytest.raises(ParseError, match="trailing"):
        parse_poly("x )")


def test_division_only_in_rationals():
    with pytest.raises(ParseError):
        parse_poly("x/2")
    with pytest.raises(ParseError, match="division by zero"):
        parse_poly("1/0")


def test_print_parse_round_trip():
    samples = [
        "x^2 - z^3",
        "x^2 - z1^2*z2",
        "x^3 + z^2 x + z^4",
        "3/4 z^2 - 7 z + 1/2",
        "x1^2 x2 - z1 z2 + 5",
    ]
    for text in samples:
        f = parse_poly(text)
        assert parse_poly(poly_text(f), f.vars) == f


def test_parse_arc_document():
    arc = parse_arc({"precision": "exact", "coords": {"x": "t^3", "z": "t^2"}})
    assert arc.coords["x"].is_exact
    assert arc.coords["x"].order().value == 3


def test_parse_arc_not_through_origin():
    with pytest.raises(ValidationError, match="not through the origin"):
        parse_arc({"precision": "exact", "coords": {"x": "1 + t", "z": "t"}})


def test_parse_arc_truncated():
    arc = parse_arc({"precision": 16, "coords": {"x": "t^3 + t^5", "z": "t^2"}})
    assert arc.precision == 16
    assert arc.coords["x"].coeffs == (0, 0, 0, 1, 0, 1)


def test_parse_arc_rejects_non_t_variables():
    with pytest.raises(ValidationError, match="non-t"):
        parse_arc({"precision": "exact", "coords": {"x": "z^2"}})


def test_parse_arc_rejects_bad_precision():
    with pytest.raises(ValidationError):
        parse_arc({"precision": 0, "coords": {"x": "t"}})


def test_arc_document_round_trip():
    arc = exact_arc(x="t^3 + 2*t^5", z="t^2")
    doc = arc_to_document(arc)
    again = parse_arc(doc)
    assert again.coords == arc.coords


def test_series_text_zero():
    from nashres import PowerSeries

    assert series_text(PowerSeries.zero(4)) == "0"
    assert series_text(PowerSeries([0, -1, Fraction(1, 2)])) == "-t + 1/2*t^2"


def test_load_presentation_normalizes():
    p = load_presentation(
        {"d": 1, "hypersurfaces": [{"var": "x", "b": 2, "f": "x^2 + 2z x + z^3"}]}
    )
    h = p.hypersurfaces[0]
    assert str(h.coeffs[0]) == "z^3 - z^2"


def test_load_presentation_round_trip(two_hyp):
    doc = presentation_to_document(two_hyp)
    again = load_presentation(doc)
    assert presentation_to_document(again) == doc


def test_load_presentation_base_count_mismatch():
    with pytest.raises(ValidationError, match="d = 2"):
        load_presentation(
            {"d": 2, "hypersurfaces": [{"var": "x", "b": 2, "f": "x^2 - z^3"}]}
        )


def test_load_presentation_rejects_shared_distinguished_variables():
    doc = {
        "d": 1,
        "hypersurfaces": [
            {"var": "x1", "b": 2, "f": "x1^2 - z^3"},
            {"var": "x2", "b": 2, "f": "x2^2 - x1 z"},
        ],
    }
    with pytest.raises(ValidationError, match="distinguished"):
        load_presentation(doc)


def test_load_presentation_rejects_t():
    with pytest.raises(ValidationError, match="t cannot appear"):
        load_presentation(
            {"d": 1, "hypersurfaces": [{"var": "x", "b": 2, "f": "x^2 - t^3"}]}
        )


def test_load_presentation_wrong_degree():
    with pytest.raises(ValidationError, match="declared degree"):
        load_presentation(
            {"d": 1, "hypersurfaces": [{"var": "x", "b": 3, "f": "x^2 - z^3"}]}
        )
