"""
Graded Fock module of the Heisenberg algebra [p_j(s), q^i(t)] = delta^i_j delta(s-t).

Fields are expanded as q^i(t) = sum_n qhat^i(n) e^{-int} and
p_j(t) = (1/2 pi) sum_n P_j(n) e^{-int}, so that

    [P_j(m), qhat^i(n)] = delta^i_j delta_{m+n,0}.

Creators are qhat^i(n >= 0) and P_j(n > 0). The vacuum is killed by
P_j(m <= 0), which acts as d/d qhat^j(-m), and by qhat^i(n < 0), which acts
as -d/d P_i(-n). A state is a polynomial in creators; the degree of a
monomial is the sum of its frequencies.

The loop component of index k of a function F(t) is the coefficient of
e^{ikt}; the mode qhat^i(n) carries loop index -n.
Expanding with e^{+int} instead relabels qhat(n) as qhat(-n), which flips the
sign of n in mode formulas such as [L_{-i d_0}, qhat^i(n)] = n qhat^i(n).
"""

import itertools
import logging
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterable, Iterator, List, Optional, Tuple

from errors import DegreeCapError, ParseError
from jets import JetFunction
from scalar import GaussianRational, I, ONE, ZERO, format_scalar

logger = logging.getLogger(__name__)

_MODE_RE = re.compile(r'^([qP])(\d+)\((-?\d+)\)$')


@dataclass(frozen=True)
class Mode:
    kind: str  # 'Q' or 'P'
    index: int
    freq: int

    @property
    def key(self) -> Tuple[int, int, int]:
        return (0 if self.kind == 'Q' else 1, self.index, self.freq)

    def is_creator(self) -> bool:
        return self.freq >= 0 if self.kind == 'Q' else self.freq > 0

    def __str__(self) -> str:
        return f"{'q' if self.kind == 'Q' else 'P'}{self.index}({self.freq})"


# A canonical creator monomial is a tuple of creator Modes sorted by Mode.key.
CreatorMonomial = Tuple[Mode, ...]
VACUUM: CreatorMonomial = ()


def canonical(modes: Iterable[Mode]) -> CreatorMonomial:
    return tuple(sorted(modes, key=lambda m: m.key))


def monomial_degree(mono: CreatorMonomial) -> int:
    return sum(m.freq for m in mono)


def format_monomial(mono: CreatorMonomial) -> str:
    return '*'.join(str(m) for m in mono) if mono else '1'


def parse_monomial(text: str) -> CreatorMonomial:
    text = text.replace(' ', '')
    if text in ('', '1'):
        return VACUUM
    modes = []
    for part in text.split('*'):
        match = _MODE_RE.match(part)
        if not match:
            raise ParseError(f"not a Fock mode: {part!r}")
        mode = Mode('Q' if match.group(1) == 'q' else 'P', int(match.group(2)), int(match.group(3)))
        if not mode.is_creator():
            raise ParseError(f"{part} is not a creator")
        modes.append(mode)
    return canonical(modes)


def _insert(mono: CreatorMonomial, mode: Mode) -> CreatorMonomial:
    return canonical(mono + (mode,))


def _remove(mono: CreatorMonomial, mode: Mode) -> Tuple[int, CreatorMonomial]:
    """Multiplicity of mode in mono, and mono with one copy removed."""
    count = mono.count(mode)
    if not count:
        return 0, mono
    pos = mono.index(mode)
    return count, mono[:pos] + mono[pos + 1:]


def mode_commutator(a: Mode, b: Mode) -> GaussianRational:
    """[a, b] in the rescaled convention; zero for Q-Q and P-P pairs."""
    if a.index != b.index or a.freq + b.freq != 0 or a.kind == b.kind:
        return ZERO
    return ONE if a.kind == 'P' else -ONE


class FockState:
    """Finite combination of creator monomials over the vacuum."""

    __slots__ = ('coeffs',)

    def __init__(self, coeffs: Optional[Dict[CreatorMonomial, GaussianRational]] = None):
        self.coeffs = {k: v for k, v in (coeffs or {}).items() if v}

    @classmethod
    def vacuum(cls) -> 'FockState':
        return cls({VACUUM: ONE})

    @classmethod
    def basis(cls, mono: CreatorMonomial) -> 'FockState':
        return cls({mono: ONE})

    def items(self) -> Iterator[Tuple[CreatorMonomial, GaussianRational]]:
        return iter(sorted(self.coeffs.items(), key=lambda kv: [m.key for m in kv[0]]))

    def __add__(self, other: 'FockState') -> 'FockState':
        return FockState(add_into(dict(self.coeffs), other.coeffs))

    def scale(self, factor) -> 'FockState':
        return FockState({k: factor * v for k, v in self.coeffs.items()})

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other) -> bool:
        if not isinstance(other, FockState):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __str__(self) -> str:
        if not self.coeffs:
            return '0'
        return ' + '.join(f"({format_scalar(c)})*{format_monomial(m)}" for m, c in self.items())


def add_into(target: Dict, source: Dict, factor: GaussianRational = ONE) -> Dict:
    """target += factor * source, pruning zeros. Returns target."""
    for key, value in source.items():
        updated = target.get(key, ZERO) + factor * value
        if updated:
            target[key] = updated
        else:
            target.pop(key, None)
    return target


def apply_mode_monomial(mode: Mode, mono: CreatorMonomial) -> Dict[CreatorMonomial, GaussianRational]:
    if mode.is_creator():
        return {_insert(mono, mode): ONE}
    if mode.kind == 'P':
        partner = Mode('Q', mode.index, -mode.freq)
        count, rest = _remove(mono, partner)
        return {rest: GaussianRational(count)} if count else {}
    partner = Mode('P', mode.index, -mode.freq)
    count, rest = _remove(mono, partner)
    return {rest: GaussianRational(-count)} if count else {}


def apply_mode(mode: Mode, v: FockState) -> FockState:
    """Creators multiply; annihilators contract against their partner creator."""
    result: Dict[CreatorMonomial, GaussianRational] = {}
    for mono, coeff in v.coeffs.items():
        add_into(result, apply_mode_monomial(mode, mono), coeff)
    return FockState(result)


def grade(v: FockState) -> Dict[int, FockState]:
    """Homogeneous components keyed by degree."""
    parts: Dict[int, Dict[CreatorMonomial, GaussianRational]] = {}
    for mono, coeff in v.coeffs.items():
        parts.setdefault(monomial_degree(mono), {})[mono] = coeff
    return {d: FockState(c) for d, c in sorted(parts.items())}


def creator_modes(N: int, max_freq: int) -> List[Mode]:
    modes = [Mode('Q', i, n) for i in range(1, N) for n in range(0, max_freq + 1)]
    modes += [Mode('P', i, n) for i in range(1, N) for n in range(1, max_freq + 1)]
    return sorted(modes, key=lambda m: m.key)


def fock_basis(N: int, D: int, W: int) -> List[CreatorMonomial]:
    """Canonical monomials of degree <= D with at most W factors, by width then lexicographically."""
    if D < 0 or W < 0:
        raise ValueError("degree and width caps must be non-negative")
    creators = creator_modes(N, D)
    basis = []
    for width in range(W + 1):
        for combo in itertools.combinations_with_replacement(creators, width):
            if sum(m.freq for m in combo) <= D:
                basis.append(tuple(combo))
    return basis


def _weak_compositions(total: int, parts: int) -> Iterator[Tuple[int, ...]]:
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _weak_compositions(total - first, parts - 1):
            yield (first,) + rest


def _derivative_weight(loop_index: int, order: int) -> GaussianRational:
    """(i * loop_index)^order, the factor d^order/dt^order puts on e^{i loop_index t}."""
    return (I * loop_index) ** order


@lru_cache(maxsize=200000)
def _loop_term(factors: Tuple[Tuple[int, int], ...], target: int,
               mono: CreatorMonomial) -> Tuple[Tuple[CreatorMonomial, GaussianRational], ...]:
    """
    Loop component `target` of prod_r d^{o_r} q^{i_r}(t) / dt^{o_r} acting on mono.

    Each factor is either an annihilator qhat^i(-p), p > 0, contracted against a
    P_i(p) already in mono, or a creator qhat^i(n), n >= 0. Creator frequencies
    are fixed by loop-index conservation, so the sum is finite.
    """
    result: Dict[CreatorMonomial, GaussianRational] = {}

    def place_creators(current: CreatorMonomial, coeff: GaussianRational,
                       annihilated: int, creators: List[Tuple[int, int]]):
        # loop indices: annihilator qhat(-p) has +p, creator qhat(n) has -n
        total = annihilated - target
        if total < 0:
            return
        for freqs in _weak_compositions(total, len(creators)):
            weight = coeff
            for (_, order), n in zip(creators, freqs):
                weight = weight * _derivative_weight(-n, order)
                if not weight:
                    break
            if not weight:
                continue
            out = canonical(current + tuple(Mode('Q', i, n) for (i, _), n in zip(creators, freqs)))
            updated = result.get(out, ZERO) + weight
            if updated:
                result[out] = updated
            else:
                result.pop(out, None)

    def assign(r: int, current: CreatorMonomial, coeff: GaussianRational,
               annihilated: int, creators: List[Tuple[int, int]]):
        if r == len(factors):
            place_creators(current, coeff, annihilated, creators)
            return
        i, order = factors[r]
        assign(r + 1, current, coeff, annihilated, creators + [(i, order)])
        for mode in sorted(set(current), key=lambda m: m.key):
            if mode.kind != 'P' or mode.index != i:
                continue
            count, rest = _remove(current, mode)
            weight = _derivative_weight(mode.freq, order)
            if weight:
                assign(r + 1, rest, coeff * weight * (-count), annihilated + mode.freq, creators)

    assign(0, mono, ONE, 0, [])
    return tuple(result.items())


def apply_loop_component(phi: JetFunction, k: int,
                         state: Dict[CreatorMonomial, GaussianRational]) -> Dict[CreatorMonomial, GaussianRational]:
    """Apply the e^{ikt} component of the multiplication operator phi(q(t), ...)."""
    result: Dict[CreatorMonomial, GaussianRational] = {}
    for (freq, exps), c in phi.items():
        factors = tuple(phi.factors(exps))
        for mono, coeff in state.items():
            for out, weight in _loop_term(factors, k - freq, mono):
                add_into(result, {out: weight}, c * coeff)
    return result


def normal_apply(f: JetFunction, j: int, v: FockState,
                 degree_cap: Optional[int] = None) -> FockState:
    """
    int dt :f p_j: acting on v, i.e. sum_n :f_n P_j(n): with P_j(n > 0) on the left.

    Only finitely many n contribute: for n <= 0 the annihilator P_j(n) needs a
    qhat^j(-n) in the monomial, for n > 0 the component f_n must lower the degree
    by n before P_j(n) restores it.
    """
    result: Dict[CreatorMonomial, GaussianRational] = {}
    for mono, coeff in v.coeffs.items():
        degree = monomial_degree(mono)
        for n in sorted({m.freq for m in mono if m.kind == 'Q' and m.index == j}):
            contracted = apply_mode_monomial(Mode('P', j, -n), mono)
            add_into(result, apply_loop_component(f, -n, contracted), coeff)
        for n in range(1, degree + f.max_frequency() + 1):
            lowered = apply_loop_component(f, n, {mono: ONE})
            for low, weight in lowered.items():
                add_into(result, {_insert(low, Mode('P', j, n)): weight}, coeff)
    if degree_cap is not None:
        for mono in result:
            if monomial_degree(mono) > degree_cap:
                raise DegreeCapError(f"normal-ordered product reached degree "
                                     f"{monomial_degree(mono)} > cap {degree_cap}")
    return FockState(result)
