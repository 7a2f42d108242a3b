"""
Functions and vector fields on spacetime that are polynomial in the spatial
coordinates x1..x(N-1) and Fourier polynomials in x0.

Text syntax: a term is a product of a coefficient, e(m) for exp(i*m*x0) and
powers x1^2; terms are joined with + and -, vector field components with ';'.
Example: "e(2)*x1^2 ; x1*x2".
"""

import itertools
import logging
import re
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from errors import DimensionMismatchError, ParseError, UnsupportedFieldError
from scalar import GaussianRational, I, ONE, ZERO, format_scalar, gq, parse_scalar

logger = logging.getLogger(__name__)

# (spatial exponents a1..a(N-1), time frequency m)
TermKey = Tuple[Tuple[int, ...], int]

_PHASE_RE = re.compile(r'^e\((-?\d+)\)$')
_COORD_RE = re.compile(r'^x(\d+)(?:\^(\d+))?$')


class SpacetimeFunction:
    """Finite sum of c * x^a * exp(i m x0). Treated as immutable."""

    __slots__ = ('N', '_terms', '_hash')

    def __init__(self, N: int, terms: Optional[Mapping[TermKey, GaussianRational]] = None):
        if N < 1:
            raise ValueError(f"spacetime dimension must be >= 1, got {N}")
        self.N = N
        cleaned: Dict[TermKey, GaussianRational] = {}
        for (exponents, freq), coeff in (terms or {}).items():
            if len(exponents) != N - 1:
                raise DimensionMismatchError(
                    f"multi-index {exponents} does not fit N={N}")
            if any(e < 0 for e in exponents):
                raise UnsupportedFieldError(f"negative spatial exponent in {exponents}")
            coeff = gq(coeff)
            if coeff:
                cleaned[(tuple(exponents), int(freq))] = coeff
        self._terms = cleaned
        self._hash = None

    @classmethod
    def zero(cls, N: int) -> 'SpacetimeFunction':
        return cls(N)

    @classmethod
    def constant(cls, N: int, value=1) -> 'SpacetimeFunction':
        return cls(N, {((0,) * (N - 1), 0): gq(value)})

    @classmethod
    def monomial(cls, N: int, exponents: Sequence[int] = None, freq: int = 0,
                 coeff=1) -> 'SpacetimeFunction':
        exponents = tuple(exponents) if exponents is not None else (0,) * (N - 1)
        return cls(N, {(exponents, freq): gq(coeff)})

    @classmethod
    def coordinate(cls, N: int, i: int) -> 'SpacetimeFunction':
        """The spatial coordinate x^i, 1 <= i < N."""
        if not 1 <= i < N:
            raise UnsupportedFieldError(f"x{i} is not a spatial coordinate for N={N}")
        exponents = [0] * (N - 1)
        exponents[i - 1] = 1
        return cls.monomial(N, exponents)

    @classmethod
    def phase(cls, N: int, freq: int) -> 'SpacetimeFunction':
        return cls.monomial(N, None, freq)

    @property
    def terms(self) -> Dict[TermKey, GaussianRational]:
        return dict(self._terms)

    def items(self) -> Iterator[Tuple[TermKey, GaussianRational]]:
        return iter(sorted(self._terms.items()))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def max_frequency(self) -> int:
        return max((abs(m) for (_, m) in self._terms), default=0)

    def max_degree(self) -> int:
        return max((sum(a) for (a, _) in self._terms), default=0)

    def frequencies(self) -> List[int]:
        return sorted({m for (_, m) in self._terms})

    def is_time_only(self) -> bool:
        return all(not any(a) for (a, _) in self._terms)

    def _check(self, other: 'SpacetimeFunction'):
        if not isinstance(other, SpacetimeFunction):
            raise TypeError(f"expected SpacetimeFunction, got {type(other).__name__}")
        if other.N != self.N:
            raise DimensionMismatchError(f"N={self.N} vs N={other.N}")

    def __add__(self, other: 'SpacetimeFunction') -> 'SpacetimeFunction':
        self._check(other)
        result = dict(self._terms)
        for key, coeff in other._terms.items():
            result[key] = result.get(key, ZERO) + coeff
        return SpacetimeFunction(self.N, result)

    def __neg__(self) -> 'SpacetimeFunction':
        return SpacetimeFunction(self.N, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other: 'SpacetimeFunction') -> 'SpacetimeFunction':
        return self + (-other)

    def scale(self, factor) -> 'SpacetimeFunction':
        factor = gq(factor)
        return SpacetimeFunction(self.N, {k: factor * c for k, c in self._terms.items()})

    def __mul__(self, other) -> 'SpacetimeFunction':
        if not isinstance(other, SpacetimeFunction):
            return self.scale(other)
        return fn_mul(self, other)

    def __rmul__(self, other) -> 'SpacetimeFunction':
        return self.scale(other)

    def partial(self, mu: int) -> 'SpacetimeFunction':
        return partial(self, mu)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SpacetimeFunction):
            return NotImplemented
        return self.N == other.N and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.N, frozenset(self._terms.items())))
        return self._hash

    def __str__(self) -> str:
        return format_function(self)

    def __repr__(self) -> str:
        return f"SpacetimeFunction(N={self.N}, '{format_function(self)}')"


def fn_mul(f: SpacetimeFunction, g: SpacetimeFunction) -> SpacetimeFunction:
    """Exact product; exponents and frequencies add."""
    f._check(g)
    result: Dict[TermKey, GaussianRational] = {}
    for (a, m), c in f._terms.items():
        for (b, n), d in g._terms.items():
            key = (tuple(x + y for x, y in zip(a, b)), m + n)
            result[key] = result.get(key, ZERO) + c * d
    return SpacetimeFunction(f.N, result)


def partial(f: SpacetimeFunction, mu: int) -> SpacetimeFunction:
    """d/dx^mu; d_0 multiplies each term by i*m."""
    if not 0 <= mu < f.N:
        raise IndexError(f"derivative index {mu} out of range for N={f.N}")
    result: Dict[TermKey, GaussianRational] = {}
    for (a, m), c in f._terms.items():
        if mu == 0:
            if m:
                result[(a, m)] = c * I * m
        elif a[mu - 1]:
            lowered = list(a)
            lowered[mu - 1] -= 1
            result[(tuple(lowered), m)] = c * a[mu - 1]
    return SpacetimeFunction(f.N, result)


class VectorField:
    """xi = xi^mu d_mu with N SpacetimeFunction components."""

    __slots__ = ('N', 'components')

    def __init__(self, components: Sequence[SpacetimeFunction]):
        components = tuple(components)
        if not components:
            raise ValueError("vector field needs at least one component")
        N = components[0].N
        if len(components) != N or any(c.N != N for c in components):
            raise DimensionMismatchError(
                f"vector field with {len(components)} components for N={N}")
        self.N = N
        self.components = components

    @classmethod
    def zero(cls, N: int) -> 'VectorField':
        return cls([SpacetimeFunction.zero(N)] * N)

    @classmethod
    def basis(cls, mu: int, f: SpacetimeFunction) -> 'VectorField':
        """f * d_mu."""
        comps = [SpacetimeFunction.zero(f.N)] * f.N
        comps[mu] = f
        return cls(comps)

    def __getitem__(self, mu: int) -> SpacetimeFunction:
        return self.components[mu]

    def __add__(self, other: 'VectorField') -> 'VectorField':
        if other.N != self.N:
            raise DimensionMismatchError(f"N={self.N} vs N={other.N}")
        return VectorField([a + b for a, b in zip(self.components, other.components)])

    def __neg__(self) -> 'VectorField':
        return VectorField([-a for a in self.components])

    def __sub__(self, other: 'VectorField') -> 'VectorField':
        return self + (-other)

    def scale(self, factor) -> 'VectorField':
        return VectorField([a.scale(factor) for a in self.components])

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)

    def derivative_of(self, f: SpacetimeFunction) -> SpacetimeFunction:
        """xi^mu d_mu f."""
        total = SpacetimeFunction.zero(self.N)
        for mu, comp in enumerate(self.components):
            if comp:
                total = total + comp * partial(f, mu)
        return total

    def divergence(self) -> SpacetimeFunction:
        total = SpacetimeFunction.zero(self.N)
        for mu, comp in enumerate(self.components):
            total = total + partial(comp, mu)
        return total

    def max_frequency(self) -> int:
        return max(c.max_frequency() for c in self.components)

    def is_temporal(self) -> bool:
        return all(c.is_zero() for c in self.components[1:]) and self.components[0].is_time_only()

    def __eq__(self, other) -> bool:
        if not isinstance(other, VectorField):
            return NotImplemented
        return self.components == other.components

    def __hash__(self) -> int:
        return hash(self.components)

    def __str__(self) -> str:
        return format_field(self)

    def __repr__(self) -> str:
        return f"VectorField('{format_field(self)}')"


def lie_bracket(xi: VectorField, eta: VectorField) -> VectorField:
    """[xi, eta]^nu = xi^mu d_mu eta^nu - eta^mu d_mu xi^nu."""
    if xi.N != eta.N:
        raise DimensionMismatchError(f"N={xi.N} vs N={eta.N}")
    return VectorField([
        xi.derivative_of(eta[nu]) - eta.derivative_of(xi[nu]) for nu in range(xi.N)
    ])


class SymTensorArg:
    """g_{nu1..nun}, totally symmetric; only sorted index tuples are stored."""

    def __init__(self, N: int, rank: int, entries: Mapping[Tuple[int, ...], SpacetimeFunction]):
        self.N = N
        self.rank = rank
        self.entries: Dict[Tuple[int, ...], SpacetimeFunction] = {}
        for indices, f in entries.items():
            key = tuple(sorted(indices))
            if len(key) != rank or any(not 0 <= v < N for v in key):
                raise DimensionMismatchError(f"index block {indices} invalid for rank {rank}, N={N}")
            if f.N != N:
                raise DimensionMismatchError(f"argument built for N={f.N}, expected {N}")
            if f:
                self.entries[key] = self.entries.get(key, SpacetimeFunction.zero(N)) + f

    def component(self, indices: Sequence[int]) -> SpacetimeFunction:
        return self.entries.get(tuple(sorted(indices)), SpacetimeFunction.zero(self.N))

    def __repr__(self) -> str:
        body = ', '.join(f"{k}: {v}" for k, v in sorted(self.entries.items()))
        return f"SymTensorArg(rank={self.rank}, {{{body}}})"


class MixedTensorArg:
    """h_{rho|nu1..nun}, symmetric in the nu block only."""

    def __init__(self, N: int, rank: int,
                 entries: Mapping[Tuple[int, Tuple[int, ...]], SpacetimeFunction]):
        self.N = N
        self.rank = rank
        self.entries: Dict[Tuple[int, Tuple[int, ...]], SpacetimeFunction] = {}
        for (rho, indices), f in entries.items():
            key = (rho, tuple(sorted(indices)))
            if not 0 <= rho < N or len(key[1]) != rank or any(not 0 <= v < N for v in key[1]):
                raise DimensionMismatchError(f"index block {(rho, indices)} invalid for rank {rank}, N={N}")
            if f:
                self.entries[key] = self.entries.get(key, SpacetimeFunction.zero(N)) + f

    def component(self, rho: int, indices: Sequence[int]) -> SpacetimeFunction:
        return self.entries.get((rho, tuple(sorted(indices))), SpacetimeFunction.zero(self.N))

    def __repr__(self) -> str:
        body = ', '.join(f"{k}: {v}" for k, v in sorted(self.entries.items()))
        return f"MixedTensorArg(rank={self.rank}, {{{body}}})"


def spatial_monomials(N: int, max_degree: int) -> List[Tuple[int, ...]]:
    """Exponent vectors of total degree <= max_degree, graded then lexicographic."""
    result = []
    for degree in range(max_degree + 1):
        for combo in itertools.combinations_with_replacement(range(N - 1), degree):
            exponents = [0] * (N - 1)
            for i in combo:
                exponents[i] += 1
            result.append(tuple(exponents))
    return result


def probe_basis(N: int, max_spatial_degree: int, max_frequency: int) -> List[VectorField]:
    """
    All fields x^a e(m) d_mu within bounds.

    Order: spatial monomial (graded, then lexicographic), then frequency from
    -max_frequency to max_frequency, then component mu. Reports cite probes
    by their ordinal in this list.
    """
    if max_spatial_degree < 0 or max_frequency < 0:
        raise ValueError("probe bounds must be non-negative")
    fields = []
    for exponents in spatial_monomials(N, max_spatial_degree):
        for freq in range(-max_frequency, max_frequency + 1):
            f = SpacetimeFunction.monomial(N, exponents, freq)
            for mu in range(N):
                fields.append(VectorField.basis(mu, f))
    return fields


def temporal_probe(N: int, freq: int) -> VectorField:
    """exp(i freq x0) d_0."""
    return VectorField.basis(0, SpacetimeFunction.phase(N, freq))


def _format_coefficient(c: GaussianRational, bare: bool) -> str:
    if bare:
        return format_scalar(c) if c.is_real() else f"({format_scalar(c)})"
    if c == ONE:
        return ''
    if c == -ONE:
        return '-'
    text = format_scalar(c) if c.is_real() else f"({format_scalar(c)})"
    return f"{text}*"


def _format_term(exponents: Tuple[int, ...], freq: int, coeff: GaussianRational) -> str:
    factors = []
    if freq:
        factors.append(f"e({freq})")
    for i, e in enumerate(exponents, start=1):
        if e == 1:
            factors.append(f"x{i}")
        elif e > 1:
            factors.append(f"x{i}^{e}")
    if not factors:
        return _format_coefficient(coeff, bare=True)
    return _format_coefficient(coeff, bare=False) + '*'.join(factors)


def format_function(f: SpacetimeFunction) -> str:
    if f.is_zero():
        return '0'
    pieces = []
    for (exponents, freq), coeff in f.items():
        text = _format_term(exponents, freq, coeff)
        if not pieces:
            pieces.append(text)
        elif text.startswith('-'):
            pieces.append(f" - {text[1:]}")
        else:
            pieces.append(f" + {text}")
    return ''.join(pieces)


def format_field(xi: VectorField) -> str:
    return ' ; '.join(format_function(c) for c in xi.components)


def _split_terms(text: str) -> List[str]:
    terms, depth, start = [], 0, 0
    for pos, ch in enumerate(text):
        if ch == '(':
            depth += 1
        elif ch == ')':
            depth -= 1
        elif ch in '+-' and depth == 0 and pos > start and text[pos - 1] not in '*^':
            terms.append(text[start:pos])
            start = pos
    terms.append(text[start:])
    return [t for t in terms if t not in ('', '+')]


def _split_factors(text: str) -> List[str]:
    factors, depth, start = [], 0, 0
    for pos, ch in enumerate(text):
        if ch == '(':
            depth += 1
        elif ch == ')':
            depth -= 1
        elif ch == '*' and depth == 0:
            factors.append(text[start:pos])
            start = pos + 1
    factors.append(text[start:])
    return factors


def _parse_term(N: int, text: str) -> Tuple[TermKey, GaussianRational]:
    coeff = ONE
    if text.startswith('-'):
        coeff, text = -ONE, text[1:]
    elif text.startswith('+'):
        text = text[1:]
    exponents = [0] * (N - 1)
    freq = 0
    for factor in _split_factors(text):
        if not factor:
            raise ParseError(f"empty factor in term {text!r}")
        phase = _PHASE_RE.match(factor)
        coord = _COORD_RE.match(factor)
        if phase:
            freq += int(phase.group(1))
        elif coord:
            index = int(coord.group(1))
            if index == 0:
                raise UnsupportedFieldError("polynomial dependence on x0 is not supported; use e(m)")
            if index >= N:
                raise DimensionMismatchError(f"x{index} used with N={N}")
            exponents[index - 1] += int(coord.group(2) or 1)
        elif factor == 't':
            raise UnsupportedFieldError("polynomial dependence on time is not supported; use e(m)")
        elif factor.startswith('(') and factor.endswith(')'):
            coeff = coeff * parse_scalar(factor[1:-1])
        else:
            coeff = coeff * parse_scalar(factor)
    return (tuple(exponents), freq), coeff


def parse_function(N: int, text: str) -> SpacetimeFunction:
    compact = text.replace(' ', '')
    if not compact:
        raise ParseError("empty function text")
    total: Dict[TermKey, GaussianRational] = {}
    for term in _split_terms(compact):
        key, coeff = _parse_term(N, term)
        total[key] = total.get(key, ZERO) + coeff
    return SpacetimeFunction(N, total)


def parse_field(text: str, N: Optional[int] = None) -> VectorField:
    """Parse "comp0 ; comp1 ; ..."; N defaults to the component count."""
    parts = text.split(';')
    if N is None:
        N = len(parts)
    if len(parts) != N:
        raise DimensionMismatchError(f"{len(parts)} components given for N={N}")
    return VectorField([parse_function(N, part) for part in parts])
