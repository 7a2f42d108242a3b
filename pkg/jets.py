"""
Jet polynomials: functions of q^i(t) and its first three time derivatives.

A JetFunction is a finite sum of c * exp(i m t) * prod_{i,r} (d^r q^i / dt^r)^e.
The variables of order 0..3 print as x, v, a, j. The time component is
eliminated structurally: q^0 = t, so v^0 = 1 and a^0 = j^0 = 0.

A JetFunction Phi stands for the functional (1/2 pi i) int dt Phi(q(t), ...);
in that reading the constant 1 is the central scalar -i.
"""

import itertools
import logging
from typing import Dict, Iterator, List, Mapping, Optional, Tuple

from errors import DimensionMismatchError, UnsupportedFieldError
from scalar import GaussianRational, I, ONE, ZERO, format_scalar, gq
from spacetime import MixedTensorArg, SpacetimeFunction, SymTensorArg, VectorField, partial

logger = logging.getLogger(__name__)

MAX_ORDER = 3
ORDER_NAMES = ('x', 'v', 'a', 'j')

# (time frequency, exponents laid out as order * (N-1) + (i-1))
JetKey = Tuple[int, Tuple[int, ...]]


class JetFunction:
    """Commutative polynomial in jet variables with Fourier phases. Immutable."""

    __slots__ = ('N', '_terms', '_hash')

    def __init__(self, N: int, terms: Optional[Mapping[JetKey, GaussianRational]] = None):
        self.N = N
        size = (MAX_ORDER + 1) * (N - 1)
        cleaned: Dict[JetKey, GaussianRational] = {}
        for (freq, exps), coeff in (terms or {}).items():
            if len(exps) != size:
                raise DimensionMismatchError(f"jet exponent vector of length {len(exps)} for N={N}")
            if coeff:
                cleaned[(int(freq), tuple(exps))] = gq(coeff)
        self._terms = cleaned
        self._hash = None

    @property
    def spatial(self) -> int:
        return self.N - 1

    def slot(self, order: int, i: int) -> int:
        """Exponent position of the order-th derivative of q^i, 1 <= i < N."""
        return order * (self.N - 1) + (i - 1)

    @classmethod
    def zero(cls, N: int) -> 'JetFunction':
        return cls(N)

    @classmethod
    def constant(cls, N: int, value=1) -> 'JetFunction':
        return cls(N, {(0, (0,) * ((MAX_ORDER + 1) * (N - 1))): gq(value)})

    @classmethod
    def variable(cls, N: int, order: int, i: int) -> 'JetFunction':
        if not 1 <= i < N:
            raise UnsupportedFieldError(f"jet variable index {i} out of range for N={N}")
        exps = [0] * ((MAX_ORDER + 1) * (N - 1))
        exps[order * (N - 1) + (i - 1)] = 1
        return cls(N, {(0, tuple(exps)): ONE})

    @classmethod
    def lift(cls, f: SpacetimeFunction) -> 'JetFunction':
        """f(q(t)): spatial x^i becomes q^i(t), exp(i m x0) becomes exp(i m t)."""
        pad = (0,) * (MAX_ORDER * (f.N - 1))
        return cls(f.N, {(m, tuple(a) + pad): c for (a, m), c in f.items()})

    def items(self) -> Iterator[Tuple[JetKey, GaussianRational]]:
        return iter(sorted(self._terms.items()))

    @property
    def terms(self) -> Dict[JetKey, GaussianRational]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def _check(self, other: 'JetFunction'):
        if not isinstance(other, JetFunction):
            raise TypeError(f"expected JetFunction, got {type(other).__name__}")
        if other.N != self.N:
            raise DimensionMismatchError(f"N={self.N} vs N={other.N}")

    def __add__(self, other: 'JetFunction') -> 'JetFunction':
        self._check(other)
        result = dict(self._terms)
        for key, coeff in other._terms.items():
            result[key] = result.get(key, ZERO) + coeff
        return JetFunction(self.N, result)

    def __neg__(self) -> 'JetFunction':
        return JetFunction(self.N, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other: 'JetFunction') -> 'JetFunction':
        return self + (-other)

    def scale(self, factor) -> 'JetFunction':
        factor = gq(factor)
        if not factor:
            return JetFunction(self.N)
        return JetFunction(self.N, {k: factor * c for k, c in self._terms.items()})

    def __mul__(self, other) -> 'JetFunction':
        if isinstance(other, SpacetimeFunction):
            other = JetFunction.lift(other)
        if not isinstance(other, JetFunction):
            return self.scale(other)
        self._check(other)
        result: Dict[JetKey, GaussianRational] = {}
        for (m, a), c in self._terms.items():
            for (n, b), d in other._terms.items():
                key = (m + n, tuple(x + y for x, y in zip(a, b)))
                result[key] = result.get(key, ZERO) + c * d
        return JetFunction(self.N, result)

    def __rmul__(self, other) -> 'JetFunction':
        return self.__mul__(other)

    def partial_x(self, mu: int) -> 'JetFunction':
        """Explicit d/dx^mu, holding velocities and higher derivatives fixed."""
        if not 0 <= mu < self.N:
            raise IndexError(f"derivative index {mu} out of range for N={self.N}")
        if mu == 0:
            return JetFunction(self.N, {(m, e): c * I * m for (m, e), c in self._terms.items() if m})
        return self.partial_var(0, mu)

    def partial_var(self, order: int, i: int) -> 'JetFunction':
        pos = self.slot(order, i)
        result: Dict[JetKey, GaussianRational] = {}
        for (m, e), c in self._terms.items():
            if e[pos]:
                lowered = list(e)
                lowered[pos] -= 1
                result[(m, tuple(lowered))] = c * e[pos]
        return JetFunction(self.N, result)

    def total_derivative(self) -> 'JetFunction':
        """D = d_0 + sum_i sum_r q^{(r+1)i} d/dq^{(r)i}."""
        result = self.partial_x(0)
        for i in range(1, self.N):
            for order in range(MAX_ORDER + 1):
                derivative = self.partial_var(order, i)
                if not derivative:
                    continue
                if order == MAX_ORDER:
                    raise UnsupportedFieldError(
                        f"total derivative needs jet order {MAX_ORDER + 1}")
                result = result + derivative * JetFunction.variable(self.N, order + 1, i)
        return result

    def max_order(self) -> int:
        top = -1
        for (_, e), _ in self._terms.items():
            for order in range(MAX_ORDER, -1, -1):
                if any(e[order * (self.N - 1):(order + 1) * (self.N - 1)]):
                    top = max(top, order)
                    break
        return top

    def order_degree(self, key_exps: Tuple[int, ...], order: int) -> int:
        return sum(key_exps[order * (self.N - 1):(order + 1) * (self.N - 1)])

    def max_frequency(self) -> int:
        return max((abs(m) for (m, _) in self._terms), default=0)

    def constant_term(self) -> GaussianRational:
        return self._terms.get((0, (0,) * ((MAX_ORDER + 1) * (self.N - 1))), ZERO)

    def factors(self, exps: Tuple[int, ...]) -> List[Tuple[int, int]]:
        """Expand an exponent vector into (spatial index, derivative order) factors."""
        result = []
        for order in range(MAX_ORDER + 1):
            for i in range(1, self.N):
                result.extend([(i, order)] * exps[self.slot(order, i)])
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, JetFunction):
            return NotImplemented
        return self.N == other.N and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.N, frozenset(self._terms.items())))
        return self._hash

    def __str__(self) -> str:
        return format_jet(self)

    def __repr__(self) -> str:
        return f"JetFunction(N={self.N}, '{format_jet(self)}')"


def velocity(N: int, mu: int) -> JetFunction:
    """dq^mu/dt with dq^0/dt = 1."""
    if mu == 0:
        return JetFunction.constant(N)
    return JetFunction.variable(N, 1, mu)


def acceleration(N: int, mu: int) -> JetFunction:
    """d^2 q^mu/dt^2 with the time component identically zero."""
    if mu == 0:
        return JetFunction.zero(N)
    return JetFunction.variable(N, 2, mu)


def lift(f: SpacetimeFunction) -> JetFunction:
    return JetFunction.lift(f)


def time_derivative(f: SpacetimeFunction) -> JetFunction:
    """d/dt f(q(t)) = v^mu d_mu f."""
    total = JetFunction.zero(f.N)
    for mu in range(f.N):
        total = total + velocity(f.N, mu) * lift(partial(f, mu))
    return total


def transverse_component(xi: VectorField, i: int) -> JetFunction:
    """xi~^i = xi^i(q) - v^i xi^0(q), the variation of q^i under xi."""
    return lift(xi[i]) - velocity(xi.N, i) * lift(xi[0])


def format_jet(phi: JetFunction) -> str:
    if phi.is_zero():
        return '0'
    pieces = []
    for (freq, exps), coeff in phi.items():
        factors = [f"e({freq})"] if freq else []
        for order in range(MAX_ORDER + 1):
            for i in range(1, phi.N):
                e = exps[phi.slot(order, i)]
                if e:
                    name = f"{ORDER_NAMES[order]}{i}"
                    factors.append(name if e == 1 else f"{name}^{e}")
        text = format_scalar(coeff) if coeff.is_real() else f"({format_scalar(coeff)})"
        if factors:
            if coeff == ONE:
                text = '*'.join(factors)
            elif coeff == -ONE:
                text = '-' + '*'.join(factors)
            else:
                text = f"{text}*{'*'.join(factors)}"
        if pieces and text.startswith('-'):
            pieces.append(f" - {text[1:]}")
        elif pieces:
            pieces.append(f" + {text}")
        else:
            pieces.append(text)
    return ''.join(pieces)


def sym_to_jet(n: int, g: SymTensorArg) -> JetFunction:
    """S_n^{nu1..nun}(g) as the jet v^{nu1}...v^{nun} g_{nu1..nun}, summed over ordered indices."""
    if g.rank != n:
        raise DimensionMismatchError(f"S_{n} given an argument of rank {g.rank}")
    total = JetFunction.zero(g.N)
    for indices in itertools.product(range(g.N), repeat=n):
        component = g.component(indices)
        if component.is_zero():
            continue
        term = lift(component)
        for nu in indices:
            term = term * velocity(g.N, nu)
        total = total + term
    return total


def mixed_to_jet(n: int, h: MixedTensorArg) -> JetFunction:
    """R_n^{rho|nu1..nun}(h) as a^rho v^{nu1}...v^{nun} h_{rho|nu1..nun}."""
    if h.rank != n:
        raise DimensionMismatchError(f"R_{n} given an argument of rank {h.rank}")
    total = JetFunction.zero(h.N)
    for rho in range(1, h.N):
        for indices in itertools.product(range(h.N), repeat=n):
            component = h.component(rho, indices)
            if component.is_zero():
                continue
            term = lift(component) * acceleration(h.N, rho)
            for nu in indices:
                term = term * velocity(h.N, nu)
            total = total + term
    return total
