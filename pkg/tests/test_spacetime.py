import pytest

from errors import DimensionMismatchError, ParseError, UnsupportedFieldError
from scalar import I, ONE, gq
from spacetime import (SpacetimeFunction, SymTensorArg, VectorField, format_field, format_function,
                       lie_bracket, parse_field, parse_function, partial, probe_basis, spatial_monomials,
                       temporal_probe)


def test_partial_derivatives():
    f = parse_function(2, 'e(2)*x1^2')
    assert partial(f, 0) == parse_function(2, '2*i*e(2)*x1^2')
    assert partial(f, 1) == parse_function(2, '2*e(2)*x1')
    assert partial(partial(partial(f, 1), 1), 1).is_zero()


def test_lie_bracket_of_translation_and_dilation():
    translation = parse_field('0 ; 1')
    dilation = parse_field('0 ; x1')
    assert lie_bracket(translation, dilation) == translation
    assert lie_bracket(dilation, translation) == translation.scale(-1)


def test_temporal_fields_close_on_the_witt_algebra():
    xi, eta = temporal_probe(2, 2), temporal_probe(2, -1)
    # [e(m) d0, e(n) d0] = i(n - m) e(m+n) d0
    expected = VectorField.basis(0, SpacetimeFunction.phase(2, 1)).scale(-3 * I)
    assert lie_bracket(xi, eta) == expected


def test_divergence():
    xi = parse_field('e(1) ; x1^2')
    assert xi.divergence() == parse_function(2, 'i*e(1) + 2*x1')


def test_probe_basis_order_and_size():
    probes = probe_basis(2, 2, 2)
    assert len(probes) == 3 * 5 * 2
    assert probes[0] == temporal_probe(2, -2)
    assert spatial_monomials(3, 1) == [(0, 0), (1, 0), (0, 1)]


def test_text_round_trip():
    xi = parse_field('e(2)*x1^2 ; x1*x2 ; 3', N=3)
    assert parse_field(format_field(xi), N=3) == xi
    f = parse_function(2, '1/2*x1 - i*e(-1)')
    assert parse_function(2, format_function(f)) == f


def test_time_coordinate_is_not_a_polynomial_variable():
    with pytest.raises(UnsupportedFieldError):
        parse_function(2, 'x0')
    with pytest.raises(UnsupportedFieldError):
        parse_function(2, 't')


def test_dimension_checks():
    with pytest.raises(DimensionMismatchError):
        parse_function(2, 'x1') + parse_function(3, 'x1')
    with pytest.raises(DimensionMismatchError):
        SymTensorArg(2, 1, {(0, 1): SpacetimeFunction.constant(2)})


def test_symmetric_argument_stores_sorted_indices():
    f = parse_function(2, 'x1')
    g = SymTensorArg(2, 2, {(1, 0): f})
    assert g.component((0, 1)) == f
    assert g.component((1, 0)) == f
    assert g.component((1, 1)).is_zero()
