"""
Mode algebra of the currents L(t), T^mu_nu(t) and J^a(t), and the modules
induced from a one-dimensional highest-weight character.

Modes are labelled by the loop index m of e^{imt}:
L(t) = (i/2pi) sum 𝕃_m e^{imt}, T(t) = (1/2pi) sum 𝕋_m e^{imt},
J(t) = (1/2pi) sum 𝕁_m e^{imt}. With d = delta_{m+n,0} the brackets are

    [L_m, L_n]             = (m-n) L_{m+n} + (c/12)(m^3-m) d
    [L_m, T^mu_{nu,n}]     = -n T^mu_{nu,m+n} + (k0/2) m^2 delta^mu_nu d
    [T^mu_{nu,m}, T^s_{t,n}] = delta^s_nu T^mu_{t,m+n} - delta^mu_t T^s_{nu,m+n}
                             - m (k1 delta^mu_t delta^s_nu + k2 delta^mu_nu delta^s_t) d
    [J^a_m, J^b_n]         = i f^{ab}_c J^c_{m+n} + k m delta^{ab} d
    [T^mu_{nu,m}, J^a_n]   = g'^a m delta^mu_nu d
    [L_m, J^a_n]           = -n J^a_{m+n} + g^a m^2 d

Negative modes create, positive modes annihilate the highest-weight vector and
zero modes act by the character (h, lambda delta^mu_nu, mu_a).
"""

import itertools
import logging
from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from errors import DimensionMismatchError, ParameterConstraintError, RewriteDepthError
from report import Report
from scalar import GaussianRational, I, ONE, ZERO, format_scalar, gq

logger = logging.getLogger(__name__)

KIND_ORDER = {'L': 0, 'T': 1, 'J': 2, 'C': 3}


@dataclass(frozen=True)
class CurrentMode:
    kind: str  # 'L', 'T', 'J' or 'C' (central)
    indices: Tuple[int, ...] = ()
    freq: int = 0

    @property
    def key(self) -> Tuple:
        return (KIND_ORDER[self.kind], self.indices, self.freq)

    def is_central(self) -> bool:
        return self.kind == 'C'

    def __str__(self) -> str:
        if self.kind == 'C':
            return 'K'
        if self.kind == 'L':
            return f"L({self.freq})"
        if self.kind == 'T':
            return f"T{self.indices[0]}_{self.indices[1]}({self.freq})"
        return f"J{self.indices[0]}({self.freq})"


CENTRAL = CurrentMode('C')

ModeCombination = Dict[CurrentMode, GaussianRational]
PBWMonomial = Tuple[CurrentMode, ...]


def L_mode(m: int) -> CurrentMode:
    return CurrentMode('L', (), m)


def T_mode(mu: int, nu: int, m: int) -> CurrentMode:
    return CurrentMode('T', (mu, nu), m)


def J_mode(a: int, m: int) -> CurrentMode:
    return CurrentMode('J', (a,), m)


@dataclass(frozen=True)
class GaugeAlgebra:
    """Structure constants f^{ab}_c in a basis with Killing form delta^{ab}."""

    name: str
    dim: int
    structure: Tuple[Tuple[Tuple[int, int, int], GaussianRational], ...] = ()

    def f(self, a: int, b: int, c: int) -> GaussianRational:
        return dict(self.structure).get((a, b, c), ZERO)

    def bracket_terms(self, a: int, b: int) -> List[Tuple[int, GaussianRational]]:
        return [(c, v) for (x, y, c), v in self.structure if x == a and y == b and v]


def gauge_algebra(name: str) -> GaugeAlgebra:
    """Built-in algebras: "none", "u1^d" (also "u1:d") and "sl2"."""
    if name in ('none', '', None):
        return GaugeAlgebra('none', 0)
    if name == 'sl2':
        structure = []
        for a, b, c in itertools.permutations(range(3)):
            sign = 1 if (a, b, c) in ((0, 1, 2), (1, 2, 0), (2, 0, 1)) else -1
            structure.append(((a, b, c), gq(sign)))
        return GaugeAlgebra('sl2', 3, tuple(structure))
    for sep in ('^', ':'):
        if name.startswith(f"u1{sep}"):
            dim = int(name[3:])
            if dim < 1:
                raise ParameterConstraintError(f"abelian gauge dimension must be >= 1: {name}")
            return GaugeAlgebra(f"u1^{dim}", dim)
    raise ParameterConstraintError(f"unknown gauge algebra {name!r}")


@dataclass(frozen=True)
class CurrentParams:
    N: int
    c: GaussianRational = ZERO
    k0: GaussianRational = ZERO
    k1: GaussianRational = ZERO
    k2: GaussianRational = ZERO
    k: GaussianRational = ZERO
    gauge: GaugeAlgebra = GaugeAlgebra('none', 0)
    g: Tuple[GaussianRational, ...] = ()
    gprime: Tuple[GaussianRational, ...] = ()

    def __post_init__(self):
        if self.N < 1:
            raise DimensionMismatchError(f"spacetime dimension must be >= 1, got {self.N}")
        for name in ('c', 'k0', 'k1', 'k2', 'k'):
            object.__setattr__(self, name, gq(getattr(self, name)))
        dim = self.gauge.dim
        for name in ('g', 'gprime'):
            value = tuple(getattr(self, name)) or (ZERO,) * dim
            if len(value) != dim:
                raise DimensionMismatchError(f"{name} has {len(value)} charges for gauge dimension {dim}")
            object.__setattr__(self, name, tuple(gq(v) for v in value))
        self._check_structure()

    def _check_structure(self):
        gauge = self.gauge
        dims = range(gauge.dim)
        for a, b, c in itertools.product(dims, repeat=3):
            if gauge.f(a, b, c) != -gauge.f(b, a, c):
                raise ParameterConstraintError(f"structure constants not antisymmetric at {(a, b, c)}")
        for a, b, c, e in itertools.product(dims, repeat=4):
            total = ZERO
            for d in dims:
                total += (gauge.f(a, b, d) * gauge.f(d, c, e) + gauge.f(b, c, d) * gauge.f(d, a, e)
                          + gauge.f(c, a, d) * gauge.f(d, b, e))
            if total:
                raise ParameterConstraintError(f"structure constants violate Jacobi at {(a, b, c, e)}")
        for a, b in itertools.product(dims, repeat=2):
            for label, charges in (('g', self.g), ("g'", self.gprime)):
                total = sum((gauge.f(a, b, c) * charges[c] for c in dims), ZERO)
                if total:
                    raise ParameterConstraintError(
                        f"f^{{{a}{b}}}_c {label}^c = {format_scalar(total)} must vanish")

    def describe(self) -> Dict[str, str]:
        return {
            'N': str(self.N), 'c': format_scalar(self.c), 'k0': format_scalar(self.k0),
            'k1': format_scalar(self.k1), 'k2': format_scalar(self.k2),
            'gauge': self.gauge.name, 'level': format_scalar(self.k),
            'g': ','.join(format_scalar(x) for x in self.g),
            'gprime': ','.join(format_scalar(x) for x in self.gprime),
        }


def _delta(a, b) -> int:
    return 1 if a == b else 0


def _validate(x: CurrentMode, p: CurrentParams):
    if x.kind == 'T' and not all(0 <= v < p.N for v in x.indices):
        raise DimensionMismatchError(f"{x} has indices outside 0..{p.N - 1}")
    if x.kind == 'J' and not 0 <= x.indices[0] < p.gauge.dim:
        raise DimensionMismatchError(f"{x} outside gauge dimension {p.gauge.dim}")


def _ordered_bracket(x: CurrentMode, y: CurrentMode, p: CurrentParams) -> Optional[ModeCombination]:
    """Bracket for kind pairs listed in the module docstring; None if the pair is reversed."""
    m, n = x.freq, y.freq
    d = _delta(m + n, 0)
    out: ModeCombination = {}

    def put(mode: CurrentMode, value):
        value = gq(value)
        if value:
            out[mode] = out.get(mode, ZERO) + value

    if x.kind == 'L' and y.kind == 'L':
        put(L_mode(m + n), m - n)
        put(CENTRAL, p.c * gq(m ** 3 - m) / 12 * d)
    elif x.kind == 'L' and y.kind == 'T':
        mu, nu = y.indices
        put(T_mode(mu, nu, m + n), -n)
        put(CENTRAL, p.k0 * gq(m * m) / 2 * (d * _delta(mu, nu)))
    elif x.kind == 'T' and y.kind == 'T':
        mu, nu = x.indices
        s, t = y.indices
        put(T_mode(mu, t, m + n), _delta(s, nu))
        put(T_mode(s, nu, m + n), -_delta(mu, t))
        put(CENTRAL, -(p.k1 * (_delta(mu, t) * _delta(s, nu)) + p.k2 * (_delta(mu, nu) * _delta(s, t))) * (m * d))
    elif x.kind == 'J' and y.kind == 'J':
        a, b = x.indices[0], y.indices[0]
        for c, f in p.gauge.bracket_terms(a, b):
            put(J_mode(c, m + n), I * f)
        put(CENTRAL, p.k * (m * _delta(a, b) * d))
    elif x.kind == 'T' and y.kind == 'J':
        mu, nu = x.indices
        put(CENTRAL, p.gprime[y.indices[0]] * (m * _delta(mu, nu) * d))
    elif x.kind == 'L' and y.kind == 'J':
        put(J_mode(y.indices[0], m + n), -n)
        put(CENTRAL, p.g[y.indices[0]] * (m * m * d))
    else:
        return None
    return {k: v for k, v in out.items() if v}


def current_bracket(x: CurrentMode, y: CurrentMode, p: CurrentParams) -> ModeCombination:
    """[x, y] as a combination of modes; the CENTRAL key carries the scalar part."""
    _validate(x, p)
    _validate(y, p)
    if x.is_central() or y.is_central():
        return {}
    direct = _ordered_bracket(x, y, p)
    if direct is not None:
        return direct
    return {k: -v for k, v in _ordered_bracket(y, x, p).items()}


def bracket_combinations(u: ModeCombination, w: ModeCombination, p: CurrentParams) -> ModeCombination:
    out: ModeCombination = {}
    for x, a in u.items():
        for y, b in w.items():
            for z, c in current_bracket(x, y, p).items():
                out[z] = out.get(z, ZERO) + a * b * c
    return {k: v for k, v in out.items() if v}


@dataclass(frozen=True)
class HighestWeight:
    h: GaussianRational = ZERO
    lam: GaussianRational = ZERO
    mu: Tuple[GaussianRational, ...] = ()

    def character(self, x: CurrentMode) -> GaussianRational:
        if x.kind == 'L':
            return self.h
        if x.kind == 'T':
            return self.lam if x.indices[0] == x.indices[1] else ZERO
        if x.kind == 'J':
            return self.mu[x.indices[0]] if self.mu else ZERO
        return ONE

    def describe(self) -> Dict[str, str]:
        return {'h': format_scalar(self.h), 'lambda': format_scalar(self.lam),
                'mu': ','.join(format_scalar(x) for x in self.mu)}


def pbw_degree(mono: PBWMonomial) -> int:
    return -sum(x.freq for x in mono)


def format_pbw(mono: PBWMonomial) -> str:
    return '*'.join(str(x) for x in mono) if mono else 'v'


class InducedModule:
    """
    Module induced from the character of the non-negative modes.

    States are dicts PBWMonomial -> scalar; a monomial (y1, ..., yr) means
    y1 ... yr v with keys non-decreasing. A trivial module has every current
    acting as zero and only the vector v.
    """

    def __init__(self, params: CurrentParams, weight: Optional[HighestWeight] = None,
                 trivial: bool = False, depth_cap: int = 400):
        self.params = params
        self.trivial = trivial
        weight = weight or HighestWeight(mu=(ZERO,) * params.gauge.dim)
        if not weight.mu:
            weight = HighestWeight(weight.h, weight.lam, (ZERO,) * params.gauge.dim)
        if len(weight.mu) != params.gauge.dim:
            raise DimensionMismatchError(f"gauge character has {len(weight.mu)} entries, "
                                         f"gauge dimension is {params.gauge.dim}")
        gauge = params.gauge
        for a, b in itertools.product(range(gauge.dim), repeat=2):
            if sum((gauge.f(a, b, c) * weight.mu[c] for c in range(gauge.dim)), ZERO):
                raise ParameterConstraintError(
                    f"gauge character does not vanish on [J^{a}_0, J^{b}_0]")
        self.weight = weight
        self.depth_cap = depth_cap
        self._memo: Dict[Tuple[CurrentMode, PBWMonomial], ModeCombination] = {}

    @classmethod
    def trivial_module(cls, N: int) -> 'InducedModule':
        return cls(CurrentParams(N), HighestWeight(), trivial=True)

    def creators(self, max_freq: int) -> List[CurrentMode]:
        modes = []
        for n in range(1, max_freq + 1):
            modes.append(L_mode(-n))
            modes.extend(T_mode(mu, nu, -n) for mu in range(self.params.N) for nu in range(self.params.N))
            modes.extend(J_mode(a, -n) for a in range(self.params.gauge.dim))
        return sorted(modes, key=lambda x: x.key)

    def basis(self, D: int, W: int) -> List[PBWMonomial]:
        """PBW monomials of degree <= D and width <= W, by width then key order."""
        if self.trivial:
            return [()]
        creators = self.creators(D)
        result = []
        for width in range(W + 1):
            for combo in itertools.combinations_with_replacement(creators, width):
                if pbw_degree(combo) <= D:
                    result.append(tuple(combo))
        return result

    def apply_monomial(self, x: CurrentMode, mono: PBWMonomial, depth: int = 0) -> ModeCombination:
        if self.trivial:
            return {}
        if depth > self.depth_cap:
            raise RewriteDepthError(f"PBW rewriting of {x} on {format_pbw(mono)} exceeded depth {self.depth_cap}")
        memo_key = (x, mono)
        if memo_key in self._memo:
            return self._memo[memo_key]
        result: Dict[PBWMonomial, GaussianRational] = {}
        if x.is_central():
            result[mono] = ONE
        elif x.freq < 0 and (not mono or x.key <= mono[0].key):
            result[(x,) + mono] = ONE
        elif not mono:
            if x.freq == 0:
                value = self.weight.character(x)
                if value:
                    result[()] = value
        else:
            head, rest = mono[0], mono[1:]
            # x head rest = head (x rest) + [x, head] rest
            moved = self.apply_monomial(x, rest, depth + 1)
            for out, coeff in moved.items():
                for out2, coeff2 in self.apply_monomial(head, out, depth + 1).items():
                    result[out2] = result.get(out2, ZERO) + coeff * coeff2
            for z, c in current_bracket(x, head, self.params).items():
                for out, coeff in self.apply_monomial(z, rest, depth + 1).items():
                    result[out] = result.get(out, ZERO) + c * coeff
        result = {k: v for k, v in result.items() if v}
        self._memo[memo_key] = result
        return result

    def apply(self, x: CurrentMode, state: Dict[PBWMonomial, GaussianRational]) -> Dict[PBWMonomial, GaussianRational]:
        result: Dict[PBWMonomial, GaussianRational] = {}
        for mono, coeff in state.items():
            for out, value in self.apply_monomial(x, mono).items():
                result[out] = result.get(out, ZERO) + coeff * value
        return {k: v for k, v in result.items() if v}


def induce_apply(x: CurrentMode, v: Dict[PBWMonomial, GaussianRational],
                 module: InducedModule) -> Dict[PBWMonomial, GaussianRational]:
    return module.apply(x, v)


def window_modes(p: CurrentParams, window: int) -> List[CurrentMode]:
    modes = []
    for m in range(-window, window + 1):
        modes.append(L_mode(m))
        modes.extend(T_mode(mu, nu, m) for mu in range(p.N) for nu in range(p.N))
        modes.extend(J_mode(a, m) for a in range(p.gauge.dim))
    return modes


def verify_current_jacobi(p: CurrentParams, window: int, kinds: Sequence[str] = ('L', 'T', 'J')) -> Report:
    """Jacobi identity of current_bracket on every mode triple with |m| <= window."""
    report = Report('current-jacobi', params={**p.describe(), 'window': window})
    modes = [x for x in window_modes(p, window) if x.kind in kinds]
    for x, y, z in itertools.combinations(modes, 3):
        total: ModeCombination = {}
        for a, b, c in ((x, y, z), (y, z, x), (z, x, y)):
            inner = current_bracket(a, b, p)
            for mode, value in bracket_combinations(inner, {c: ONE}, p).items():
                total[mode] = total.get(mode, ZERO) + value
        total = {k: v for k, v in total.items() if v}
        report.count('triples')
        if total:
            logger.error(f"current Jacobi fails on ({x}, {y}, {z})")
            report.fail({'triple': [str(x), str(y), str(z)],
                         'defect': {str(k): format_scalar(v) for k, v in total.items()}})
    logger.info(f"current Jacobi: {report.counts.get('triples', 0)} triples, pass={report.passed}")
    return report
