"""
Realized operators on F (x) M, the Fock module tensored with an induced module.

    L_xi = sum_i int :xi~^i(q) p_i: + int xi^0(q) L + int d_nu xi^mu(q) T^nu_mu
    S, R = (1/2 pi i) int Phi(q, qdot, qddot)
    J_X  = int X_a(q) J^a

with xi~^i = xi^i - qdot^i xi^0, so p_0 never appears. Each term carries a
phase e^{i mu t} of its spacetime data and shifts the total degree by exactly
mu, which is what the frequency budget of an operator bounds.
"""

import logging
from typing import Dict, List, Optional, Sequence, Tuple

from current import (CurrentMode, CurrentParams, HighestWeight, InducedModule, J_mode,
                     L_mode, PBWMonomial, T_mode, format_pbw, pbw_degree)
from errors import BudgetViolationError, DegreeCapError, DimensionMismatchError, UnsupportedFieldError
from fock import (CreatorMonomial, Mode, add_into, apply_loop_component, apply_mode_monomial,
                  format_monomial, monomial_degree, normal_apply, FockState)
from jets import JetFunction, lift, mixed_to_jet, sym_to_jet, transverse_component
from scalar import GaussianRational, I, ONE, ZERO, format_scalar
from spacetime import MixedTensorArg, SpacetimeFunction, SymTensorArg, VectorField, format_field, partial

logger = logging.getLogger(__name__)

BasisKey = Tuple[CreatorMonomial, PBWMonomial]
StateDict = Dict[BasisKey, GaussianRational]


def tensor_degree(key: BasisKey) -> int:
    return monomial_degree(key[0]) + pbw_degree(key[1])


def format_basis(key: BasisKey) -> str:
    return f"{format_monomial(key[0])} (x) {format_pbw(key[1])}"


class TensorState:
    """Finite combination of (creator monomial, PBW monomial) pairs."""

    __slots__ = ('coeffs',)

    def __init__(self, coeffs: Optional[StateDict] = None):
        self.coeffs = {k: v for k, v in (coeffs or {}).items() if v}

    @classmethod
    def basis(cls, fock: CreatorMonomial = (), induced: PBWMonomial = ()) -> 'TensorState':
        return cls({(fock, induced): ONE})

    def __add__(self, other: 'TensorState') -> 'TensorState':
        return TensorState(add_into(dict(self.coeffs), other.coeffs))

    def __sub__(self, other: 'TensorState') -> 'TensorState':
        return TensorState(add_into(dict(self.coeffs), other.coeffs, -ONE))

    def scale(self, factor) -> 'TensorState':
        return TensorState({k: factor * v for k, v in self.coeffs.items()})

    def is_zero(self) -> bool:
        return not self.coeffs

    def degrees(self) -> List[int]:
        return sorted({tensor_degree(k) for k in self.coeffs})

    def __eq__(self, other) -> bool:
        if not isinstance(other, TensorState):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __str__(self) -> str:
        if not self.coeffs:
            return '0'
        ordered = sorted(self.coeffs.items(), key=lambda kv: (tensor_degree(kv[0]), format_basis(kv[0])))
        return ' + '.join(f"({format_scalar(c)})*[{format_basis(k)}]" for k, c in ordered)


class RealizedOperator:
    """A linear endomorphism of F (x) M evaluated basis element by basis element."""

    descriptor = 'op'
    budget = 0

    def apply_basis(self, key: BasisKey) -> StateDict:
        raise NotImplementedError

    def apply(self, state: StateDict) -> StateDict:
        result: StateDict = {}
        for key, coeff in state.items():
            add_into(result, self.apply_basis(key), coeff)
        return result

    def __str__(self) -> str:
        return self.descriptor


class IdentityOperator(RealizedOperator):
    descriptor = 'id'

    def apply_basis(self, key: BasisKey) -> StateDict:
        return {key: ONE}


class LinearCombination(RealizedOperator):
    """sum_r c_r A_r."""

    def __init__(self, terms: Sequence[Tuple[GaussianRational, RealizedOperator]]):
        self.terms = [(c, op) for c, op in terms if c]
        self.budget = max((op.budget for _, op in self.terms), default=0)
        self.descriptor = ' + '.join(f"({format_scalar(c)}){op.descriptor}" for c, op in self.terms) or '0'

    def apply_basis(self, key: BasisKey) -> StateDict:
        result: StateDict = {}
        for c, op in self.terms:
            add_into(result, op.apply_basis(key), c)
        return result


class JetOperator(RealizedOperator):
    """(1/2 pi i) int Phi(q, qdot, qddot) dt = -i [Phi]_0 on the Fock factor."""

    def __init__(self, phi: JetFunction, descriptor: Optional[str] = None):
        self.phi = phi
        self.budget = phi.max_frequency()
        self.descriptor = descriptor or f"S[{phi}]"

    def apply_basis(self, key: BasisKey) -> StateDict:
        fock, induced = key
        out = apply_loop_component(self.phi, 0, {fock: ONE})
        return {(mono, induced): -I * c for mono, c in out.items()}


class LoopComponentOperator(RealizedOperator):
    """The e^{ikt} component of the multiplication operator Phi(q(t), ...)."""

    def __init__(self, phi: JetFunction, k: int):
        self.phi = phi
        self.k = k
        self.budget = phi.max_frequency() + abs(k)
        self.descriptor = f"[{phi}]_{k}"

    def apply_basis(self, key: BasisKey) -> StateDict:
        fock, induced = key
        out = apply_loop_component(self.phi, self.k, {fock: ONE})
        return {(mono, induced): c for mono, c in out.items()}


class FockModeOperator(RealizedOperator):
    """A single Heisenberg mode acting on the Fock factor."""

    def __init__(self, mode: Mode):
        self.mode = mode
        self.budget = abs(mode.freq)
        self.descriptor = str(mode)

    def apply_basis(self, key: BasisKey) -> StateDict:
        fock, induced = key
        return {(mono, induced): c for mono, c in apply_mode_monomial(self.mode, fock).items()}


def _current_term(fock: CreatorMonomial, induced: PBWMonomial, F: JetFunction,
                  mode_at, module: InducedModule, factor: GaussianRational) -> StateDict:
    """sum_m F_{-m} (x) mode_at(m) on one basis element."""
    result: StateDict = {}
    if F.is_zero():
        return result
    low = -monomial_degree(fock) - F.max_frequency()
    high = pbw_degree(induced)
    for m in range(low, high + 1):
        fock_part = apply_loop_component(F, -m, {fock: ONE})
        if not fock_part:
            continue
        module_part = module.apply_monomial(mode_at(m), induced)
        for mono, a in fock_part.items():
            for pbw, b in module_part.items():
                add_into(result, {(mono, pbw): factor * a * b})
    return result


class LieOperator(RealizedOperator):
    """The realized L_xi of a vector field in the polynomial x Fourier class."""

    def __init__(self, xi: VectorField, module: InducedModule, descriptor: Optional[str] = None):
        if xi.N != module.params.N:
            raise DimensionMismatchError(f"field for N={xi.N}, module for N={module.params.N}")
        self.xi = xi
        self.module = module
        self.budget = xi.max_frequency()
        self.descriptor = descriptor or f"L[{format_field(xi)}]"
        N = xi.N
        self._transverse = [(i, transverse_component(xi, i)) for i in range(1, N)]
        self._temporal = lift(xi[0])
        self._gradients = [(nu, mu, lift(partial(xi[mu], nu))) for nu in range(N) for mu in range(N)]

    def apply_basis(self, key: BasisKey) -> StateDict:
        fock, induced = key
        result: StateDict = {}
        for i, f in self._transverse:
            if f.is_zero():
                continue
            out = normal_apply(f, i, FockState({fock: ONE}))
            for mono, c in out.coeffs.items():
                add_into(result, {(mono, induced): c})
        if self.module.trivial:
            return result
        add_into(result, _current_term(fock, induced, self._temporal, L_mode, self.module, I))
        for nu, mu, F in self._gradients:
            add_into(result, _current_term(fock, induced, F,
                                           lambda m, nu=nu, mu=mu: T_mode(nu, mu, m), self.module, ONE))
        return result


class GaugeOperator(RealizedOperator):
    """J_X = sum_a sum_m [X_a]_{-m} (x) J^a_m."""

    def __init__(self, X: Sequence[SpacetimeFunction], module: InducedModule):
        if len(X) != module.params.gauge.dim:
            raise DimensionMismatchError(f"gauge field with {len(X)} components, "
                                         f"gauge dimension {module.params.gauge.dim}")
        self.X = tuple(X)
        self.module = module
        self.budget = max((f.max_frequency() for f in X), default=0)
        self.descriptor = 'J[' + ' ; '.join(str(f) for f in X) + ']'
        self._lifted = [(a, lift(f)) for a, f in enumerate(X)]

    def apply_basis(self, key: BasisKey) -> StateDict:
        fock, induced = key
        result: StateDict = {}
        if self.module.trivial:
            return result
        for a, F in self._lifted:
            add_into(result, _current_term(fock, induced, F,
                                           lambda m, a=a: J_mode(a, m), self.module, ONE))
        return result


def build_L(xi: VectorField, module: InducedModule) -> LieOperator:
    return LieOperator(xi, module)


def build_S(n: int, g: SymTensorArg) -> JetOperator:
    return JetOperator(sym_to_jet(n, g), descriptor=f"S{n}[{g!r}]")


def build_S0(f: SpacetimeFunction) -> JetOperator:
    return JetOperator(lift(f), descriptor=f"S0[{f}]")


def build_R(n: int, h: MixedTensorArg) -> JetOperator:
    return JetOperator(mixed_to_jet(n, h), descriptor=f"R{n}[{h!r}]")


def build_jet(phi: JetFunction) -> JetOperator:
    if phi.max_order() > 2:
        raise UnsupportedFieldError("realized jets use at most second time derivatives")
    return JetOperator(phi)


def build_J(X: Sequence[SpacetimeFunction], module: InducedModule) -> GaugeOperator:
    return GaugeOperator(X, module)


def build_hamiltonian(module: InducedModule) -> LieOperator:
    """
    L_{-i d_0}. It acts as deg_F + deg_M + h; the orientation is confirmed on
    qhat^1(1)|0> when N >= 2 and a wrong sign raises.
    """
    N = module.params.N
    generator = VectorField.basis(0, SpacetimeFunction.constant(N, -I))
    H = LieOperator(generator, module, descriptor='H')
    if N >= 2:
        probe = (Mode('Q', 1, 1),), ()
        shifted = H.apply_basis(probe).get(probe, ZERO) - H.apply_basis(((), ())).get(((), ()), ZERO)
        if shifted != ONE:
            raise BudgetViolationError(f"energy operator raises qhat(1) by {shifted}, expected +1")
    return H


def op_apply(A: RealizedOperator, v: StateDict, degree_cap: Optional[int] = None) -> StateDict:
    """
    Exact image A v. Every output degree is checked against the input degree
    plus or minus the budget of A, and against degree_cap when given.
    """
    result: StateDict = {}
    for key, coeff in v.items():
        d = tensor_degree(key)
        image = A.apply_basis(key)
        for out in image:
            e = tensor_degree(out)
            if abs(e - d) > A.budget:
                raise BudgetViolationError(
                    f"{A.descriptor} moved degree {d} to {e}, budget {A.budget}")
            if degree_cap is not None and e > degree_cap:
                raise DegreeCapError(f"{A.descriptor} reached degree {e} > cap {degree_cap}")
        add_into(result, image, coeff)
    return result


def commutator_apply(A: RealizedOperator, B: RealizedOperator, v: StateDict,
                     degree_cap: Optional[int] = None) -> StateDict:
    """A(Bv) - B(Av)."""
    left = op_apply(A, op_apply(B, v, degree_cap), degree_cap)
    right = op_apply(B, op_apply(A, v, degree_cap), degree_cap)
    return add_into(left, right, -ONE)
