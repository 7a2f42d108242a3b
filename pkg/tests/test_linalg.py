import pytest

from errors import RankDeficiencyError, ResidualError
from linalg import RowSpace, from_domain, row_reduce, solve_exact, to_domain
from scalar import I, ONE, ZERO, gq


def test_domain_conversion_round_trip():
    for value in (ZERO, ONE, I, gq('-3/7+5/2*i')):
        assert from_domain(to_domain(value)) == value


def test_row_reduce_finds_pivots():
    rows = [{0: ONE, 1: gq(2)}, {0: gq(2), 1: gq(4)}, {2: I}]
    reduced, pivots = row_reduce(rows, 3)
    assert pivots == [0, 2]
    assert reduced[0] == {0: ONE, 1: gq(2)}
    assert reduced[1] == {2: ONE}


def test_row_space_reduce_is_a_projection():
    space = RowSpace([{0: ONE, 1: -ONE}], 2)
    assert space.rank == 1
    assert space.reduce({0: gq(3)}) == {1: gq(3)}
    assert space.reduce({0: ONE, 1: -ONE}) == {}
    once = space.reduce({0: I, 1: gq(2)})
    assert space.reduce(once) == once


def test_solve_exact():
    rows = [{0: ONE, 1: ONE}, {0: ONE, 1: -ONE}, {0: gq(2)}]
    rhs = [gq(3), ONE, gq(4)]
    assert solve_exact(rows, rhs, 2) == [gq(2), ONE]


def test_solve_exact_reports_rank_deficiency_and_residual():
    with pytest.raises(RankDeficiencyError):
        solve_exact([{0: ONE, 1: ONE}], [ONE], 2)
    with pytest.raises(ResidualError):
        solve_exact([{0: ONE}, {0: ONE}], [ONE, gq(2)], 1)


def test_rank_deficiency_keeps_the_identified_columns():
    rows = [{0: ONE}, {1: ONE, 2: ONE}, {0: gq(2), 1: ONE, 2: ONE}]
    rhs = [gq(3), gq(5), gq(11)]
    with pytest.raises(RankDeficiencyError) as info:
        solve_exact(rows, rhs, 3)
    assert info.value.identified == {0: gq(3)}
    assert info.value.missing == [1, 2]
    assert 'unidentified columns [1, 2]' in str(info.value)
