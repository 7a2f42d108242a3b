import random

import pytest

from current import (CENTRAL, CurrentParams, HighestWeight, InducedModule, J_mode, L_mode, T_mode,
                     current_bracket, gauge_algebra, pbw_degree, verify_current_jacobi, window_modes)
from errors import DimensionMismatchError, ParameterConstraintError
from scalar import I, ONE, ZERO, gq


def test_virasoro_bracket_with_central_term():
    p = CurrentParams(2, c=gq('1/2'))
    assert current_bracket(L_mode(2), L_mode(-2), p) == {L_mode(0): gq(4), CENTRAL: gq('1/4')}
    assert current_bracket(L_mode(1), L_mode(-1), p) == {L_mode(0): gq(2)}
    assert current_bracket(L_mode(3), L_mode(3), p) == {}


def test_brackets_are_antisymmetric():
    p = CurrentParams(2, k0=gq(3), k1=gq(1), k2=gq(2))
    x, y = L_mode(2), T_mode(1, 1, -2)
    forward = current_bracket(x, y, p)
    assert forward == {T_mode(1, 1, 0): gq(2), CENTRAL: gq(6)}
    assert current_bracket(y, x, p) == {k: -v for k, v in forward.items()}


def test_stress_tensor_bracket():
    p = CurrentParams(2, k1=gq(5), k2=gq(7))
    bracket = current_bracket(T_mode(0, 1, 1), T_mode(1, 0, -1), p)
    assert bracket == {T_mode(0, 0, 0): ONE, T_mode(1, 1, 0): -ONE, CENTRAL: gq(-5)}


def test_sl2_currents():
    p = CurrentParams(2, k=gq(2), gauge=gauge_algebra('sl2'))
    assert current_bracket(J_mode(0, 1), J_mode(1, 0), p) == {J_mode(2, 1): I}
    assert current_bracket(J_mode(0, 1), J_mode(0, -1), p) == {CENTRAL: gq(2)}


def test_parameter_constraints():
    with pytest.raises(ParameterConstraintError):
        CurrentParams(2, gauge=gauge_algebra('sl2'), g=(ONE, ZERO, ZERO))
    with pytest.raises(ParameterConstraintError):
        gauge_algebra('so5')
    with pytest.raises(DimensionMismatchError):
        CurrentParams(0)
    with pytest.raises(DimensionMismatchError):
        CurrentParams(2, gauge=gauge_algebra('u1:2'), g=(ONE,))
    with pytest.raises(DimensionMismatchError):
        current_bracket(T_mode(0, 2, 0), L_mode(0), CurrentParams(2))


def test_jacobi_holds_for_generic_parameters():
    p = CurrentParams(2, c=gq('1/2'), k0=ONE, k1=gq(2), k2=gq(3), k=gq(5),
                      gauge=gauge_algebra('u1:1'), g=(ONE,), gprime=(gq(2),))
    report = verify_current_jacobi(p, 1)
    assert report.passed
    assert report.counts['triples'] > 0


def test_jacobi_holds_for_sl2():
    p = CurrentParams(1, c=ONE, k=gq(3), gauge=gauge_algebra('sl2'))
    assert verify_current_jacobi(p, 1).passed


def test_highest_weight_module_actions():
    h = gq('1/3')
    module = InducedModule(CurrentParams(2, c=gq('1/2')), HighestWeight(h, gq(2)))
    v1 = {(L_mode(-1),): ONE}
    assert module.apply(L_mode(1), v1) == {(): 2 * h}
    assert module.apply(L_mode(0), v1) == {(L_mode(-1),): h + 1}
    assert module.apply(T_mode(0, 0, 0), {(): ONE}) == {(): gq(2)}
    assert module.apply(T_mode(0, 1, 0), {(): ONE}) == {}
    assert module.apply(L_mode(1), {(): ONE}) == {}


def test_module_central_charge_on_level_two():
    module = InducedModule(CurrentParams(1, c=gq(7)), HighestWeight())
    state = module.apply(L_mode(-2), {(): ONE})
    # L_2 L_{-2} v = (4 L_0 + c/2) v
    assert module.apply(L_mode(2), state) == {(): gq('7/2')}


def test_gauge_character_must_vanish_on_commutators():
    p = CurrentParams(2, gauge=gauge_algebra('sl2'))
    with pytest.raises(ParameterConstraintError):
        InducedModule(p, HighestWeight(mu=(ONE, ZERO, ZERO)))


def test_basis():
    assert InducedModule.trivial_module(2).basis(3, 3) == [()]
    module = InducedModule(CurrentParams(1))
    assert module.basis(1, 1) == [(), (L_mode(-1),), (T_mode(0, 0, -1),)]
    assert all(pbw_degree(m) <= 2 for m in module.basis(2, 2))


def _add(total, state, scale=ONE):
    for mono, value in state.items():
        total[mono] = total.get(mono, ZERO) + scale * value
    return {k: v for k, v in total.items() if v}


@pytest.mark.parametrize('seed', [0, 1, 2])
def test_rewriting_order_does_not_change_the_normal_form(seed):
    # x (y v) reached directly and through y (x v) + [x, y] v
    p = CurrentParams(2, c=gq('1/2'), k0=gq(2), k1=gq(3), k2=gq(-1), k=gq(5),
                      gauge=gauge_algebra('u1:1'), g=(ONE,), gprime=(gq(-2),))
    module = InducedModule(p, HighestWeight(gq('1/3'), gq(2), (gq(7),)))
    modes = window_modes(p, 2)
    basis = module.basis(2, 2)
    rng = random.Random(seed)
    for _ in range(20):
        x, y = rng.choice(modes), rng.choice(modes)
        v = {rng.choice(basis): ONE}
        direct = module.apply(x, module.apply(y, v))
        swapped = module.apply(y, module.apply(x, v))
        for z, c in current_bracket(x, y, p).items():
            swapped = _add(swapped, module.apply(z, v), c)
        assert direct == swapped, (str(x), str(y), v)
