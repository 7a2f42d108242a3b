import pytest

from current import CurrentParams, HighestWeight, InducedModule, L_mode
from errors import BudgetViolationError, DimensionMismatchError, UnsupportedFieldError
from fock import Mode
from jets import JetFunction
from realize import (FockModeOperator, IdentityOperator, JetOperator, LieOperator, LinearCombination,
                     RealizedOperator, TensorState, build_hamiltonian, build_J, build_jet, build_L,
                     commutator_apply, op_apply)
from scalar import I, ONE, gq
from spacetime import SpacetimeFunction, VectorField, parse_field

VACUUM = ((), ())


def q(i, n):
    return Mode('Q', i, n)


def test_constant_jet_is_the_scalar_minus_i():
    op = JetOperator(JetFunction.constant(2))
    assert op_apply(op, {VACUUM: ONE}) == {VACUUM: -I}


def test_translation_contracts_the_zero_mode():
    module = InducedModule.trivial_module(2)
    translation = build_L(parse_field('0 ; 1'), module)
    assert op_apply(translation, {((q(1, 0),), ()): ONE}) == {VACUUM: ONE}
    assert op_apply(translation, {VACUUM: ONE}) == {}


def test_hamiltonian_counts_degree():
    module = InducedModule.trivial_module(2)
    H = build_hamiltonian(module)
    state = {((q(1, 2),), ()): ONE}
    assert op_apply(H, state) == {((q(1, 2),), ()): gq(2)}
    momentum = {((Mode('P', 1, 1),), ()): ONE}
    assert op_apply(H, momentum) == momentum


def test_hamiltonian_adds_the_highest_weight():
    module = InducedModule(CurrentParams(1), HighestWeight(gq('1/2')))
    H = build_hamiltonian(module)
    assert op_apply(H, {((), (L_mode(-1),)): ONE}) == {((), (L_mode(-1),)): gq('3/2')}
    assert op_apply(H, {VACUUM: ONE}) == {VACUUM: gq('1/2')}


@pytest.mark.parametrize('n', [0, 1, 2, 3])
def test_hamiltonian_raises_position_modes_by_their_frequency(n):
    # modes of the e^{-int} expansion: [H, qhat(n)] = n qhat(n)
    H = build_hamiltonian(InducedModule.trivial_module(2))
    image = commutator_apply(H, FockModeOperator(q(1, n)), {VACUUM: ONE})
    assert image == ({((q(1, n),), ()): gq(n)} if n else {})


def test_commutator_with_a_heisenberg_mode():
    module = InducedModule.trivial_module(2)
    translation = build_L(parse_field('0 ; 1'), module)
    assert commutator_apply(translation, FockModeOperator(q(1, 0)), {VACUUM: ONE}) == {VACUUM: ONE}


def test_budget_is_enforced():
    class Creator(RealizedOperator):
        descriptor = 'creator'

        def apply_basis(self, key):
            return {((q(1, 1),), ()): ONE}

    with pytest.raises(BudgetViolationError):
        op_apply(Creator(), {VACUUM: ONE})


def test_linear_combination():
    combo = LinearCombination([(gq(2), IdentityOperator()), (-ONE, IdentityOperator())])
    state = {((q(1, 0),), ()): I}
    assert op_apply(combo, state) == state


def test_construction_errors():
    module = InducedModule.trivial_module(2)
    with pytest.raises(DimensionMismatchError):
        LieOperator(parse_field('0 ; 0 ; 1'), module)
    with pytest.raises(DimensionMismatchError):
        build_J([SpacetimeFunction.constant(2)], module)
    with pytest.raises(UnsupportedFieldError):
        build_jet(JetFunction.variable(2, 3, 1))


def test_tensor_state_arithmetic():
    a = TensorState.basis((q(1, 1),))
    b = TensorState.basis((), (L_mode(-2),))
    total = a + b.scale(3)
    assert total.degrees() == [1, 2]
    assert (total - a) == b.scale(3)
    assert (a - a).is_zero()
