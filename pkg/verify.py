"""
Verification campaigns. Every check returns a Report; a mathematical failure
never raises, it is recorded as the first counterexample in probe order.

Work over probe pairs is spread across DIFFEXT_WORKERS processes when asked
to; results are merged by probe ordinal, so reports do not depend on the
worker count.
"""

import itertools
import logging
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from sympy import QQ_I
from sympy.polys.rings import ring

from abstract import (COCYCLE_NAMES, AbstractElement, Csym, ExtensionParams, Isym, Jsym, Lsym,
                      abstract_bracket, canonical_jet, eliminate_trivial, exact_chain_check,
                      ext, extension_terms, gauge_bracket, jacobi_defect, lie_on_gauge, mixed_transform,
                      sym_transform, vary)
from current import CurrentParams, HighestWeight, InducedModule, verify_current_jacobi
from errors import DegreeCapError, RankDeficiencyError, ResidualError
from fock import Mode, add_into, fock_basis, monomial_degree
from jets import JetFunction, lift, mixed_to_jet, sym_to_jet, transverse_component
from linalg import solve_exact, to_domain
from realize import (BasisKey, GaugeOperator, JetOperator, LieOperator, LoopComponentOperator, FockModeOperator,
                     RealizedOperator, StateDict, build_hamiltonian, commutator_apply, format_basis, op_apply,
                     tensor_degree)
from report import Report
from scalar import GaussianRational, I, ONE, ZERO, format_scalar, gq
from spacetime import (MixedTensorArg, SpacetimeFunction, SymTensorArg, VectorField, format_field, lie_bracket,
                       probe_basis, spatial_monomials, temporal_probe)

logger = logging.getLogger(__name__)

CHECKS = ('delta', 'jet', 'realization', 'fit', 'virasoro', 'qtransform', 'energy',
          'jacobi', 'coboundary', 'chain', 'antisymmetry', 'transforms', 'current')


@dataclass(frozen=True)
class ProbeSpec:
    N: int = 2
    deg: int = 2
    freq: int = 2
    D: int = 4
    W: int = 4
    params: Optional[CurrentParams] = None
    weight: HighestWeight = HighestWeight()
    module: str = 'trivial'
    seed: int = 0
    args: int = 2
    kmax: int = 50
    K: int = 2
    trials: int = 20
    window: int = 3
    draws: int = 5
    max_pairs: int = 0

    def __post_init__(self):
        for name in ('deg', 'freq', 'D', 'W', 'args', 'trials', 'window', 'draws', 'max_pairs'):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be non-negative, got {getattr(self, name)}")
        if self.N < 2:
            raise ValueError(f"verification needs at least one spatial direction, got N={self.N}")
        if self.module not in ('trivial', 'verma'):
            raise ValueError(f"unknown module kind {self.module!r}")
        if self.params is None:
            object.__setattr__(self, 'params', CurrentParams(self.N))
        if self.params.N != self.N:
            raise ValueError(f"current parameters built for N={self.params.N}, probes for N={self.N}")

    def probes(self) -> List[VectorField]:
        return probe_basis(self.N, self.deg, self.freq)

    def functions(self) -> List[SpacetimeFunction]:
        """Scalar probe functions x^a e(m) in the same bounds."""
        return [SpacetimeFunction.monomial(self.N, exps, m)
                for exps in spatial_monomials(self.N, self.deg)
                for m in range(-self.freq, self.freq + 1)]

    def pairs(self) -> List[Tuple[int, int]]:
        pairs = list(itertools.combinations(range(len(self.probes())), 2))
        if self.max_pairs and len(pairs) > self.max_pairs:
            chosen = random.Random(self.seed).sample(range(len(pairs)), self.max_pairs)
            pairs = [pairs[k] for k in sorted(chosen)]
        return pairs

    def induced(self) -> InducedModule:
        return _module_for(self)

    def extension(self) -> ExtensionParams:
        params = self.params if self.module == 'verma' else CurrentParams(self.N)
        return ExtensionParams.realized(params)

    def states(self) -> List[BasisKey]:
        """Basis of F (x) M of total degree <= D and total width <= W."""
        return list(_states_for(self))

    def describe(self) -> Dict[str, str]:
        data = {'N': str(self.N), 'deg': str(self.deg), 'freq': str(self.freq),
                'D': str(self.D), 'W': str(self.W), 'module': self.module, 'seed': str(self.seed)}
        if self.module == 'verma':
            data.update(self.params.describe())
            data.update(self.weight.describe())
        return data


@lru_cache(maxsize=16)
def _module_for(spec: ProbeSpec) -> InducedModule:
    if spec.module == 'trivial':
        return InducedModule.trivial_module(spec.N)
    return InducedModule(spec.params, spec.weight)


@lru_cache(maxsize=16)
def _states_for(spec: ProbeSpec) -> Tuple[BasisKey, ...]:
    module = spec.induced()
    keys = []
    for mono in fock_basis(spec.N, spec.D, spec.W):
        for pbw in module.basis(spec.D, spec.W):
            if monomial_degree(mono) + tensor_degree(((), pbw)) <= spec.D and len(mono) + len(pbw) <= spec.W:
                keys.append((mono, pbw))
    return tuple(sorted(keys, key=lambda k: (tensor_degree(k), len(k[0]) + len(k[1]), format_basis(k))))


def _parallel_map(fn: Callable, tasks: Sequence, workers: int = 1) -> List:
    if workers <= 1 or len(tasks) < 2:
        return [fn(task) for task in tasks]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, tasks, chunksize=max(1, len(tasks) // (4 * workers))))


def _timed(report: Report, started: float) -> Report:
    report.millis = int((time.perf_counter() - started) * 1000)
    return report


def _format_state(state: StateDict) -> str:
    if not state:
        return '0'
    ordered = sorted(state.items(), key=lambda kv: (tensor_degree(kv[0]), format_basis(kv[0])))
    return ' + '.join(f"({format_scalar(c)})*[{format_basis(k)}]" for k, c in ordered)


def _difference(a: StateDict, b: StateDict) -> StateDict:
    return add_into(dict(a), b, -ONE)


def _capped(fn: Callable[[int], StateDict], cap: int) -> StateDict:
    """Run fn(cap); a cap overflow is retried once with twice the headroom."""
    try:
        return fn(cap)
    except DegreeCapError as e:
        logger.warning(f"{e}; retrying with cap {2 * cap}")
        return fn(2 * cap)


# ---------------------------------------------------------------------------
# mode-sum identities for the split delta function

DELTA_IDENTITIES = ('i', 'ii', 'iii')

# right sides as sum_r beta_r (-ik)^r, matching the derivatives of delta
_DELTA_BETAS = {
    'i': {1: I},
    'ii': {1: I / 2, 2: gq(1) / 2},
    'iii': {1: I / 6, 3: I / 6},
}


def delta_lhs_coefficient(identity: str, k: int) -> GaussianRational:
    """
    Coefficient of e^{-ikt} in the rescaled left side, as the finite double sum
    over m > 0, n <= 0 of the weighted e^{-i(m-n)t} and e^{i(m-n)t} terms.
    """
    total = ZERO
    for m in range(1, abs(k) + 1):
        if k > 0:
            n = m - k
            weight = {'i': 1, 'ii': n, 'iii': m * n}[identity]
            total += weight
        elif k < 0:
            n = m + k
            weight = {'i': 1, 'ii': m, 'iii': m * n}[identity]
            total -= weight
    return gq(total)


def delta_closed_form(identity: str, k: int) -> GaussianRational:
    return gq({'i': k, 'ii': -k * (k - 1) // 2, 'iii': -(k ** 3 - k) // 6}[identity])


def delta_rhs_coefficient(identity: str, k: int) -> GaussianRational:
    return sum((beta * (-I * k) ** r for r, beta in _DELTA_BETAS[identity].items()), ZERO)


def check_delta_lemma(identity: str, k_range: int) -> Report:
    if identity not in DELTA_IDENTITIES:
        raise ValueError(f"unknown delta identity {identity!r}")
    if k_range < 1:
        raise ValueError(f"k_range must be >= 1, got {k_range}")
    started = time.perf_counter()
    report = Report(f"delta-{identity}", params={'identity': identity, 'kmax': str(k_range)})
    for k in itertools.chain(range(-k_range, 0), range(1, k_range + 1)):
        lhs = delta_lhs_coefficient(identity, k)
        rhs = delta_rhs_coefficient(identity, k)
        report.count('coefficients')
        if lhs != rhs or lhs != delta_closed_form(identity, k):
            report.fail({'k': k, 'lhs': format_scalar(lhs), 'rhs': format_scalar(rhs),
                         'closed_form': format_scalar(delta_closed_form(identity, k))})
    return _timed(report, started)


# ---------------------------------------------------------------------------
# jet identities, exactly and on truncated loops

def _random_function(rng: random.Random, N: int, deg: int, freq: int) -> SpacetimeFunction:
    total = SpacetimeFunction.zero(N)
    monomials = spatial_monomials(N, deg)
    for _ in range(rng.randint(1, 3)):
        total = total + SpacetimeFunction.monomial(N, rng.choice(monomials), rng.randint(-freq, freq),
                                                   rng.choice((-2, -1, 1, 2, 3)))
    return total


def _random_field(rng: random.Random, N: int, deg: int, freq: int) -> VectorField:
    return VectorField([_random_function(rng, N, deg, freq) for _ in range(N)])


def divergence_identity(xi: VectorField) -> Tuple[JetFunction, JetFunction]:
    """sum_i d_i xi~^i and d_mu xi^mu - D xi^0."""
    N = xi.N
    left = JetFunction.zero(N)
    for i in range(1, N):
        left = left + transverse_component(xi, i).partial_x(i)
    right = lift(xi.divergence()) - lift(xi[0]).total_derivative()
    return left, right


def _dot(f: SpacetimeFunction) -> JetFunction:
    return lift(f).total_derivative()


def _vdot(phi: JetFunction) -> JetFunction:
    """v^rho d_rho phi with the velocities held fixed."""
    N = phi.N
    total = phi.partial_x(0)
    for rho in range(1, N):
        total = total + JetFunction.variable(N, 1, rho) * phi.partial_x(rho)
    return total


def product_identity(xi: VectorField, eta: VectorField) -> Tuple[JetFunction, JetFunction]:
    """Both sides of the identity for d_j (D xi~^i) d_i eta~^j."""
    N = xi.N
    left = JetFunction.zero(N)
    for i in range(1, N):
        dxi = transverse_component(xi, i).total_derivative()
        for j in range(1, N):
            left = left + dxi.partial_x(j) * transverse_component(eta, j).partial_x(i)
    right = JetFunction.zero(N)
    for mu in range(N):
        for nu in range(N):
            right = right + _dot(xi[mu]).partial_x(nu) * lift(eta[nu]).partial_x(mu)
        right = right + lift(xi[0]).partial_x(mu) * _vdot(_dot(eta[mu]))
        right = right - _vdot(_dot(xi[mu])) * lift(eta[0]).partial_x(mu)
    xi0, eta0 = _dot(xi[0]), _dot(eta[0])
    right = right - xi0.total_derivative() * eta0 - xi0 * _vdot(eta0) + _vdot(xi0) * eta0
    inner = xi0 * eta0
    for nu in range(N):
        inner = inner - lift(xi[0]).partial_x(nu) * _dot(eta[nu])
    right = right + inner.total_derivative()
    return left, right


class TruncatedLoops:
    """
    Evaluation of jets on q^i(t) = sum_{|n|<=K} Q_{i,n} e^{-int} with commuting
    indeterminates Q, as Laurent polynomials {frequency: polynomial}.
    """

    def __init__(self, N: int, K: int):
        self.N = N
        self.K = K
        names = [f"Q{i}_{n + K}" for i in range(1, N) for n in range(-K, K + 1)]
        self.ring, *gens = ring(','.join(names), QQ_I)
        self._gens = {}
        position = 0
        for i in range(1, N):
            for n in range(-K, K + 1):
                self._gens[(i, n)] = gens[position]
                position += 1

    def series(self, i: int, order: int) -> Dict[int, object]:
        """d^order q^i / dt^order."""
        return {-n: self._gens[(i, n)] * to_domain((-I * n) ** order)
                for n in range(-self.K, self.K + 1) if n or order == 0}

    @staticmethod
    def _multiply(a: Dict[int, object], b: Dict[int, object]) -> Dict[int, object]:
        out: Dict[int, object] = {}
        for m, x in a.items():
            for n, y in b.items():
                out[m + n] = out.get(m + n, 0) + x * y
        return {k: v for k, v in out.items() if v}

    def evaluate(self, phi: JetFunction) -> Dict[int, object]:
        total: Dict[int, object] = {}
        for (freq, exps), coeff in phi.items():
            value = {freq: self.ring(to_domain(coeff))}
            for i, order in phi.factors(exps):
                value = self._multiply(value, self.series(i, order))
            for k, v in value.items():
                total[k] = total.get(k, 0) + v
        return {k: v for k, v in total.items() if v}


def check_jet_lemma(K: int, trials: int, seed: int, N: int = 2, deg: int = 2, freq: int = 2) -> Report:
    if K < 1:
        raise ValueError(f"mode cutoff must be >= 1, got {K}")
    started = time.perf_counter()
    report = Report('jet-lemma', params={'N': str(N), 'K': str(K), 'trials': str(trials),
                                         'deg': str(deg), 'freq': str(freq), 'seed': str(seed)})
    rng = random.Random(seed)
    loops = TruncatedLoops(N, K)
    for trial in range(trials):
        xi = _random_field(rng, N, deg, freq)
        eta = _random_field(rng, N, deg, freq)
        for name, (left, right) in (('divergence', divergence_identity(xi)),
                                    ('product', product_identity(xi, eta))):
            report.count(f"{name}-jets")
            if left != right:
                report.fail({'trial': trial, 'identity': name, 'xi': format_field(xi), 'eta': format_field(eta),
                             'lhs': str(left), 'rhs': str(right), 'difference': str(left - right)})
                continue
            lhs, rhs = loops.evaluate(left), loops.evaluate(right)
            report.count(f"{name}-frequencies", len(set(lhs) | set(rhs)))
            if lhs != rhs:
                bad = sorted(k for k in set(lhs) | set(rhs) if lhs.get(k) != rhs.get(k))
                report.fail({'trial': trial, 'identity': name, 'xi': format_field(xi), 'eta': format_field(eta),
                             'frequency': bad[0]})
    report.notes = 'loop coefficients are exact polynomials in the truncated modes, so no frequency window is skipped'
    return _timed(report, started)


# ---------------------------------------------------------------------------
# realized brackets on F (x) M

def _ops_cap(spec: ProbeSpec, *ops: RealizedOperator) -> int:
    return spec.D + sum(op.budget for op in ops)


def _compare_commutator(spec: ProbeSpec, A: RealizedOperator, B: RealizedOperator,
                        expected: RealizedOperator, states: Sequence[BasisKey]) -> Optional[Dict]:
    """First basis state on which [A, B] differs from the expected operator."""
    cap = _ops_cap(spec, A, B, expected)
    for key in states:
        v = {key: ONE}
        lhs = _capped(lambda c: commutator_apply(A, B, v, c), cap)
        rhs = _capped(lambda c: op_apply(expected, v, c), cap)
        difference = _difference(lhs, rhs)
        if difference:
            return {'state': format_basis(key), 'lhs': _format_state(lhs), 'rhs': _format_state(rhs),
                    'difference': _format_state(difference)}
    return None


class _Sum(RealizedOperator):
    def __init__(self, *ops: RealizedOperator):
        self.ops = ops
        self.budget = max(op.budget for op in ops)
        self.descriptor = ' + '.join(op.descriptor for op in ops)

    def apply_basis(self, key: BasisKey) -> StateDict:
        result: StateDict = {}
        for op in self.ops:
            add_into(result, op.apply_basis(key))
        return result


def _pair_equations(task: Tuple[ProbeSpec, int, int]) -> Dict:
    """
    Equations for the cocycle of one probe pair: for every basis state and
    every output basis element, Delta v = sum_c x_c (ext term c) v.
    """
    spec, i, j = task
    probes = spec.probes()
    xi, eta = probes[i], probes[j]
    module = spec.induced()
    theorem = spec.extension()
    A, B = LieOperator(xi, module), LieOperator(eta, module)
    C = LieOperator(lie_bracket(xi, eta), module)
    terms = extension_terms(xi, eta)
    columns = [JetOperator(terms[name]) for name in COCYCLE_NAMES]
    cap = _ops_cap(spec, A, B)
    equations = {}
    mismatch = None
    try:
        for key in spec.states():
            v = {key: ONE}
            delta = _difference(_capped(lambda c: commutator_apply(A, B, v, c), cap), op_apply(C, v, cap))
            images = [op_apply(col, v, cap) for col in columns]
            predicted: StateDict = {}
            for name, image in zip(COCYCLE_NAMES, images):
                add_into(predicted, image, getattr(theorem, name))
            if mismatch is None and _difference(delta, predicted):
                mismatch = {'probes': [i, j], 'xi': format_field(xi), 'eta': format_field(eta),
                            'state': format_basis(key), 'lhs': _format_state(delta),
                            'rhs': _format_state(predicted),
                            'difference': _format_state(_difference(delta, predicted))}
            outputs = set(delta)
            for image in images:
                outputs.update(image)
            for out in outputs:
                row = tuple((c, image[out]) for c, image in enumerate(images) if image.get(out))
                equations[row + (('rhs', delta.get(out, ZERO)),)] = None
    except DegreeCapError as e:
        mismatch = {'probes': [i, j], 'error': str(e)}
    return {'pair': (i, j), 'equations': list(equations), 'mismatch': mismatch, 'states': len(spec.states())}


def _solve_cocycle(equations: Iterable[Tuple]) -> Dict[str, GaussianRational]:
    rows, rhs = [], []
    for eq in equations:
        *entries, (_, value) = eq
        if not entries and not value:
            continue
        rows.append(dict(entries))
        rhs.append(value)
    solution = solve_exact(rows, rhs, len(COCYCLE_NAMES))
    return dict(zip(COCYCLE_NAMES, solution))


def fit_cocycle_coefficients(spec: ProbeSpec, workers: int = 1,
                             pairs: Optional[Sequence[Tuple[int, int]]] = None) -> ExtensionParams:
    """
    Fit (c1..c4, a1..a3) to the realized commutators. Raises RankDeficiencyError
    when the probes do not separate the cocycles and ResidualError when no
    parameters fit.
    """
    pairs = spec.pairs() if pairs is None else pairs
    results = _parallel_map(_pair_equations, [(spec, i, j) for i, j in pairs], workers)
    equations = {}
    for result in results:
        for eq in result['equations']:
            equations[eq] = None
    fitted = _solve_cocycle(equations)
    base = spec.extension()
    return ExtensionParams(**fitted, k=base.k, g=base.g, gprime=base.gprime, gauge=base.gauge)


def _fitted_strings(values: Dict[str, GaussianRational]) -> Dict[str, str]:
    return {name: format_scalar(values[name]) for name in COCYCLE_NAMES}


def _rank_deficient(report: Report, spec: ProbeSpec, error: RankDeficiencyError):
    """Fail the report and keep whatever coefficients the equations still fix."""
    identified = {COCYCLE_NAMES[j]: format_scalar(v) for j, v in sorted(error.identified.items())}
    report.fitted = identified or None
    failure = {'error': str(error), 'unidentified': [COCYCLE_NAMES[j] for j in error.missing]}
    if spec.freq < 2:
        failure['hint'] = 'frequencies |m| <= 1 cannot separate m^3 from m; use freq >= 2'
    report.fail(failure)


def _decomposition_note(spec: ProbeSpec) -> str:
    N = spec.N
    ordering = ExtensionParams.realized(CurrentParams(N))
    total = spec.extension()
    parts = ', '.join(f"{name}={format_scalar(getattr(ordering, name))}+{format_scalar(getattr(total, name) - getattr(ordering, name))}"
                      for name in COCYCLE_NAMES)
    return f"normal ordering + module: {parts}"


def check_fit(spec: ProbeSpec, workers: int = 1) -> Report:
    started = time.perf_counter()
    report = Report('fit', params=spec.describe())
    pairs = spec.pairs()
    report.count('pairs', len(pairs))
    try:
        fitted = fit_cocycle_coefficients(spec, workers, pairs)
    except RankDeficiencyError as e:
        _rank_deficient(report, spec, e)
        return _timed(report, started)
    except ResidualError as e:
        report.fail({'error': str(e)})
        return _timed(report, started)
    report.fitted = _fitted_strings(fitted.cocycles())
    expected = spec.extension().cocycles()
    if fitted.cocycles() != expected:
        report.fail({'expected': _fitted_strings(expected), 'fitted': report.fitted})
    report.notes = _decomposition_note(spec)
    return _timed(report, started)


def _action_cases(spec: ProbeSpec, rng: random.Random) -> List[Tuple[str, JetFunction, Callable[[VectorField], JetFunction]]]:
    """S_n and R_n probes for n <= 3 with their literal transformation laws."""
    N = spec.N
    functions = spec.functions()
    time_only = [f for f in functions if f.is_time_only()]
    cases = []
    for n in range(4):
        for _ in range(spec.args):
            pool = time_only if n == 0 else functions
            indices = tuple(sorted(rng.randrange(N) for _ in range(n)))
            g = SymTensorArg(N, n, {indices: rng.choice(pool)})
            cases.append((f"S{n}{list(indices)}", sym_to_jet(n, g),
                          lambda xi, n=n, g=g: sym_transform(xi, n, g)))
            rho = rng.randrange(1, N)
            h = MixedTensorArg(N, n, {(rho, indices): rng.choice(functions)})
            cases.append((f"R{n}[{rho}|{list(indices)}]", mixed_to_jet(n, h),
                          lambda xi, n=n, h=h: mixed_transform(xi, n, h)))
    return cases


def _gauge_fields(spec: ProbeSpec) -> List[Tuple[SpacetimeFunction, ...]]:
    dim = spec.params.gauge.dim
    zero = SpacetimeFunction.zero(spec.N)
    return [tuple(f if b == a else zero for b in range(dim))
            for a in range(dim) for f in spec.functions()]


def _realization_pair(task: Tuple[ProbeSpec, int]) -> Dict:
    """Action brackets [L, S_n], [L, R_n], [L, J] and the abelian brackets for one probe."""
    spec, i = task
    xi = spec.probes()[i]
    module = spec.induced()
    states = spec.states()
    theorem = spec.extension()
    rng = random.Random(spec.seed * 7919 + i)
    counts: Dict[str, int] = {}
    L = LieOperator(xi, module)
    cases = _action_cases(spec, rng)
    for label, jet, literal in cases:
        counts['action'] = counts.get('action', 0) + 1
        found = _compare_commutator(spec, L, JetOperator(jet), JetOperator(literal(xi)), states)
        if found:
            return {'probe': i, 'counts': counts, 'failure': {'case': label, 'probe': i, **found}}
    zero_op = JetOperator(JetFunction.zero(spec.N), descriptor='0')
    first, second = JetOperator(cases[0][1]), JetOperator(cases[-1][1])
    counts['abelian'] = counts.get('abelian', 0) + 1
    found = _compare_commutator(spec, first, second, zero_op, states)
    if found:
        return {'probe': i, 'counts': counts, 'failure': {'case': 'abelian', 'probe': i, **found}}
    if spec.params.gauge.dim and spec.module == 'verma':
        fields = _gauge_fields(spec)
        X = fields[i % len(fields)]
        moved, jet = lie_on_gauge(xi, X, theorem)
        counts['gauge-action'] = counts.get('gauge-action', 0) + 1
        found = _compare_commutator(spec, L, GaugeOperator(X, module),
                                    _Sum(GaugeOperator(moved, module), JetOperator(jet)), states)
        if found:
            return {'probe': i, 'counts': counts, 'failure': {'case': 'gauge-action', 'probe': i, **found}}
        for Y in fields[:len(fields) // 2 + 1]:
            bracket, jet = gauge_bracket(X, Y, theorem)
            counts['gauge-gauge'] = counts.get('gauge-gauge', 0) + 1
            found = _compare_commutator(spec, GaugeOperator(X, module), GaugeOperator(Y, module),
                                        _Sum(GaugeOperator(bracket, module), JetOperator(jet)), states)
            if found:
                return {'probe': i, 'counts': counts, 'failure': {'case': 'gauge-gauge', 'probe': i, **found}}
        counts['gauge-abelian'] = counts.get('gauge-abelian', 0) + 1
        found = _compare_commutator(spec, GaugeOperator(X, module), first, zero_op, states)
        if found:
            return {'probe': i, 'counts': counts, 'failure': {'case': 'gauge-abelian', 'probe': i, **found}}
    return {'probe': i, 'counts': counts, 'failure': None}


def check_realization(spec: ProbeSpec, workers: int = 1) -> Report:
    """
    Realized brackets against the abstract ones with the realized parameters:
    [L, L] on every probe pair, [L, S_n], [L, R_n] and the gauge brackets on
    every probe, and the abelian ideal.
    """
    started = time.perf_counter()
    report = Report('realization', params=spec.describe())
    pairs = spec.pairs()
    results = _parallel_map(_pair_equations, [(spec, i, j) for i, j in pairs], workers)
    equations = {}
    for result in results:
        report.count('pairs')
        report.count('pair-states', result['states'])
        if result['mismatch']:
            logger.error(f"[L, L] mismatch on probes {result['pair']}")
            report.fail(result['mismatch'])
        for eq in result['equations']:
            equations[eq] = None
    for result in _parallel_map(_realization_pair, [(spec, i) for i in range(len(spec.probes()))], workers):
        for key, value in result['counts'].items():
            report.count(key, value)
        if result['failure']:
            logger.error(f"action bracket mismatch on probe {result['probe']}")
            report.fail(result['failure'])
    try:
        report.fitted = _fitted_strings(_solve_cocycle(equations))
        report.notes = _decomposition_note(spec)
    except RankDeficiencyError as e:
        _rank_deficient(report, spec, e)
    except ResidualError as e:
        report.fail({'error': str(e)})
    return _timed(report, started)


def temporal_central_value(spec: ProbeSpec, m: int, key: BasisKey = ((), ())) -> Tuple[GaussianRational, StateDict]:
    """
    [L_{xi_m}, L_{xi_-m}] - L_{[xi_m, xi_-m]} on one basis state; the first
    value is the coefficient of the state itself, the second what is left.
    """
    module = spec.induced()
    xi, eta = temporal_probe(spec.N, m), temporal_probe(spec.N, -m)
    A, B = LieOperator(xi, module), LieOperator(eta, module)
    C = LieOperator(lie_bracket(xi, eta), module)
    v = {key: ONE}
    cap = _ops_cap(spec, A, B) + tensor_degree(key)
    delta = _difference(commutator_apply(A, B, v, cap), op_apply(C, v, cap))
    value = delta.pop(key, ZERO)
    return value, delta


def check_temporal_virasoro(spec: ProbeSpec) -> Report:
    """
    Central value z(m) = A m^3 + B m of the temporal subalgebra: A from the
    realized commutators must be c1+c2+c3+c4 and 12 A the expected central
    charge c + 2(N-1) + 12(k0+k1+k2).
    """
    started = time.perf_counter()
    report = Report('virasoro', params={**spec.describe(), 'window': str(spec.window)})
    theorem = spec.extension()
    expected_cubic = theorem.c1 + theorem.c2 + theorem.c3 + theorem.c4
    params = spec.params if spec.module == 'verma' else CurrentParams(spec.N)
    expected_charge = params.c + 2 * (spec.N - 1) + 12 * (params.k0 + params.k1 + params.k2)
    values = {}
    for m in range(1, max(spec.window, 2) + 1):
        for key in spec.states():
            value, rest = temporal_central_value(spec, m, key)
            report.count('states')
            if rest:
                report.fail({'m': m, 'state': format_basis(key), 'non_central': _format_state(rest)})
            if m in values and values[m] != value:
                report.fail({'m': m, 'state': format_basis(key), 'value': format_scalar(value),
                             'vacuum_value': format_scalar(values[m])})
            values.setdefault(m, value)
        abstract = abstract_bracket(Lsym(temporal_probe(spec.N, m)), Lsym(temporal_probe(spec.N, -m)), theorem)
        scalar_value = abstract.scalar_value()
        report.count('abstract')
        if scalar_value != values[m]:
            report.fail({'m': m, 'abstract': format_scalar(scalar_value), 'realized': format_scalar(values[m])})
    # z(m) = A m^3 + B m from m = 1, 2
    cubic = (values[2] - 2 * values[1]) / 6
    linear = values[1] - cubic
    for m, value in values.items():
        if cubic * m ** 3 + linear * m != value:
            report.fail({'m': m, 'value': format_scalar(value), 'fit': f"{format_scalar(cubic)} m^3 + {format_scalar(linear)} m"})
    report.fitted = {'cubic': format_scalar(cubic), 'linear': format_scalar(linear),
                     'central_charge': format_scalar(12 * cubic)}
    if cubic != expected_cubic or 12 * cubic != expected_charge:
        report.fail({'expected_cubic': format_scalar(expected_cubic),
                     'expected_central_charge': format_scalar(expected_charge), **report.fitted})
    return _timed(report, started)


def check_q_transform(spec: ProbeSpec) -> Report:
    """
    [L_xi, qhat^i(n)] = component -n of xi~^i, mode by mode on basis states,
    with modes in the e^{-int} expansion of fock.py.
    """
    started = time.perf_counter()
    report = Report('qtransform', params=spec.describe())
    module = spec.induced()
    states = spec.states()
    reach = spec.D + spec.freq
    for p_index, xi in enumerate(spec.probes()):
        L = LieOperator(xi, module)
        for i in range(1, spec.N):
            shift = transverse_component(xi, i)
            for n in range(-reach, reach + 1):
                report.count('modes')
                found = _compare_commutator(spec, L, FockModeOperator(Mode('Q', i, n)),
                                            LoopComponentOperator(shift, -n), states)
                if found:
                    report.fail({'probe': p_index, 'xi': format_field(xi), 'mode': f"q{i}({n})", **found})
                    return _timed(report, started)
    return _timed(report, started)


def check_energy(spec: ProbeSpec) -> Report:
    """L_{-i d_0} is diagonal with eigenvalue deg_F + deg_M + h, bounded below by h."""
    started = time.perf_counter()
    report = Report('energy', params=spec.describe())
    module = spec.induced()
    H = build_hamiltonian(module)
    h = module.weight.h if not module.trivial else ZERO
    for key in spec.states():
        report.count('states')
        image = op_apply(H, {key: ONE})
        expected = {key: gq(tensor_degree(key)) + h} if gq(tensor_degree(key)) + h else {}
        if image != expected:
            report.fail({'state': format_basis(key), 'image': _format_state(image),
                         'expected': _format_state(expected)})
    return _timed(report, started)


# ---------------------------------------------------------------------------
# abstract algebra

def _random_params(rng: random.Random, spec: ProbeSpec) -> ExtensionParams:
    gauge = spec.params.gauge

    def draw():
        return gq(rng.randint(-3, 3)) / rng.randint(1, 3) + I * (gq(rng.randint(-2, 2)) / rng.randint(1, 2))

    charges = (lambda: tuple(draw() for _ in range(gauge.dim))) if not gauge.structure else \
        (lambda: (ZERO,) * gauge.dim)
    return ExtensionParams(*(draw() for _ in COCYCLE_NAMES), k=draw(), g=charges(), gprime=charges(), gauge=gauge)


def _abstract_elements(spec: ProbeSpec, rng: random.Random) -> List[Tuple[str, AbstractElement]]:
    dim = spec.params.gauge.dim
    elements = [(f"L#{k}", Lsym(xi, dim)) for k, xi in enumerate(spec.probes())]
    for label, jet, _ in _action_cases(spec, rng)[:2 * spec.args]:
        elements.append((label, Isym(jet, dim)))
    if dim:
        fields = _gauge_fields(spec)
        for X in rng.sample(fields, min(len(fields), spec.args + 1)):
            elements.append(('J[' + ' ; '.join(map(str, X)) + ']', Jsym(X)))
    functions = spec.functions()
    chain = {(0, 1): rng.choice(functions)}
    elements.append((f"C01[{chain[(0, 1)]}]", Csym(spec.N, chain, dim)))
    return elements


def _jacobi_chunk(task: Tuple[ProbeSpec, ExtensionParams, List[Tuple[int, int, int]]]) -> Dict:
    spec, p, triples = task
    elements = _abstract_elements(spec, random.Random(spec.seed))
    checked = 0
    for a, b, c in triples:
        checked += 1
        defect = jacobi_defect(elements[a][1], elements[b][1], elements[c][1], p)
        if not defect.is_zero():
            return {'checked': checked, 'failure': {'triple': [elements[a][0], elements[b][0], elements[c][0]],
                                                    'defect': str(defect)}}
    return {'checked': checked, 'failure': None}


def check_jacobi(spec: ProbeSpec, workers: int = 1) -> Report:
    """jacobi_defect over all element triples for several random parameter draws."""
    started = time.perf_counter()
    report = Report('jacobi', params={**spec.describe(), 'draws': str(spec.draws)})
    rng = random.Random(spec.seed)
    elements = _abstract_elements(spec, random.Random(spec.seed))
    triples = list(itertools.combinations(range(len(elements)), 3))
    if spec.max_pairs and len(triples) > spec.max_pairs:
        triples = sorted(rng.sample(triples, spec.max_pairs))
    size = max(1, len(triples) // max(1, 4 * workers))
    for draw in range(spec.draws):
        p = _random_params(rng, spec)
        chunks = [(spec, p, triples[k:k + size]) for k in range(0, len(triples), size)]
        for result in _parallel_map(_jacobi_chunk, chunks, workers):
            report.count('triples', result['checked'])
            if result['failure']:
                report.fail({'draw': draw, 'params': p.describe(), **result['failure']})
    return _timed(report, started)


def check_coboundary(spec: ProbeSpec) -> Report:
    """The redefinition by trivial_shift removes a1, a2, a3 and leaves c1..c4."""
    started = time.perf_counter()
    theorem = spec.extension()
    report = Report('coboundary', params={**spec.describe(), **theorem.describe()})
    outcome = eliminate_trivial(theorem, spec.probes())
    report.count('pairs', outcome['pairs'])
    if not outcome['pass']:
        report.fail(outcome)
    # temporal pair: the m^3 coefficient is invariant
    reduced = theorem.without_trivial()
    for m in (1, 2):
        xi, eta = temporal_probe(spec.N, m), temporal_probe(spec.N, -m)
        before = abstract_bracket(Lsym(xi), Lsym(eta), theorem).scalar_value()
        after = abstract_bracket(Lsym(xi), Lsym(eta), reduced).scalar_value()
        report.count('temporal')
        difference = before - after
        if difference != -theorem.a2 * m:
            report.fail({'m': m, 'before': format_scalar(before), 'after': format_scalar(after)})
    return _timed(report, started)


def check_chain(spec: ProbeSpec) -> Report:
    started = time.perf_counter()
    report = Report('chain', params=spec.describe())
    outcome = exact_chain_check(spec.probes(), spec.functions())
    report.count('cases', outcome['checked'])
    if not outcome['pass']:
        report.fail(outcome)
    return _timed(report, started)


def check_antisymmetry(spec: ProbeSpec) -> Report:
    """ext(eta, xi) = -ext(xi, eta) modulo total derivatives, and [x, x] = 0."""
    started = time.perf_counter()
    theorem = spec.extension()
    report = Report('antisymmetry', params=spec.describe())
    probes = spec.probes()
    for i, j in spec.pairs():
        report.count('pairs')
        total = canonical_jet(ext(probes[i], probes[j], theorem) + ext(probes[j], probes[i], theorem))
        if total:
            report.fail({'probes': [i, j], 'sum': str(total)})
            break
    for k, xi in enumerate(probes):
        report.count('self')
        if not abstract_bracket(Lsym(xi), Lsym(xi), theorem).is_zero():
            report.fail({'probe': k, 'xi': format_field(xi)})
            break
    return _timed(report, started)


def check_transforms(spec: ProbeSpec) -> Report:
    """The literal action laws on S_n and R_n agree with the jet variation."""
    started = time.perf_counter()
    report = Report('transforms', params=spec.describe())
    rng = random.Random(spec.seed)
    cases = _action_cases(spec, rng)
    for p_index, xi in enumerate(spec.probes()):
        for label, jet, literal in cases:
            report.count('cases')
            difference = canonical_jet(literal(xi) - vary(xi, jet))
            if difference:
                report.fail({'probe': p_index, 'xi': format_field(xi), 'case': label, 'difference': str(difference)})
                return _timed(report, started)
    return _timed(report, started)


def check_current(spec: ProbeSpec) -> Report:
    started = time.perf_counter()
    return _timed(verify_current_jacobi(spec.params, spec.window), started)


def run_checks(names: Sequence[str], spec: ProbeSpec, workers: int = 1) -> List[Report]:
    """Run the named checks in the order given; 'all' expands to every check."""
    selected: List[str] = []
    for name in names:
        for item in (CHECKS if name == 'all' else (name,)):
            if item not in CHECKS:
                raise ValueError(f"unknown check {item!r}")
            if item not in selected:
                selected.append(item)
    reports: List[Report] = []
    for name in selected:
        logger.info(f"running check {name}")
        if name == 'delta':
            reports.extend(check_delta_lemma(identity, spec.kmax) for identity in DELTA_IDENTITIES)
        elif name == 'jet':
            reports.append(check_jet_lemma(spec.K, spec.trials, spec.seed, spec.N, spec.deg, spec.freq))
        elif name == 'realization':
            reports.append(check_realization(spec, workers))
        elif name == 'fit':
            reports.append(check_fit(spec, workers))
        elif name == 'virasoro':
            reports.append(check_temporal_virasoro(spec))
        elif name == 'qtransform':
            reports.append(check_q_transform(spec))
        elif name == 'energy':
            reports.append(check_energy(spec))
        elif name == 'jacobi':
            reports.append(check_jacobi(spec, workers))
        elif name == 'coboundary':
            reports.append(check_coboundary(spec))
        elif name == 'chain':
            reports.append(check_chain(spec))
        elif name == 'antisymmetry':
            reports.append(check_antisymmetry(spec))
        elif name == 'transforms':
            reports.append(check_transforms(spec))
        elif name == 'current':
            reports.append(check_current(spec))
        status = 'pass' if reports[-1].passed else 'FAIL'
        logger.info(f"check {name}: {status}")
    return reports
