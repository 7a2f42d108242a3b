import pytest

from current import CurrentParams, HighestWeight, gauge_algebra
from errors import RankDeficiencyError
from jets import JetFunction
from scalar import I, format_scalar, gq
from verify import (ProbeSpec, TruncatedLoops, check_antisymmetry, check_chain, check_coboundary, check_current,
                    check_delta_lemma, check_energy, check_fit, check_jacobi, check_jet_lemma, check_q_transform,
                    check_realization, check_temporal_virasoro, check_transforms, delta_closed_form,
                    delta_lhs_coefficient, delta_rhs_coefficient, fit_cocycle_coefficients, run_checks,
                    temporal_central_value)


@pytest.mark.parametrize('identity,expected', [('i', 3), ('ii', -3), ('iii', -4)])
def test_delta_coefficients_at_three(identity, expected):
    assert delta_lhs_coefficient(identity, 3) == gq(expected)
    assert delta_rhs_coefficient(identity, 3) == gq(expected)
    assert delta_closed_form(identity, 3) == gq(expected)


def test_delta_coefficients_for_negative_modes():
    assert delta_lhs_coefficient('i', -3) == gq(-3)
    assert delta_lhs_coefficient('ii', -3) == gq(-6)
    assert delta_rhs_coefficient('ii', -3) == gq(-6)


@pytest.mark.parametrize('identity', ['i', 'ii', 'iii'])
def test_delta_lemma(identity):
    report = check_delta_lemma(identity, 50)
    assert report.passed
    assert report.check == f"delta-{identity}"
    assert report.counts == {'coefficients': 100}


def test_delta_lemma_rejects_bad_arguments():
    with pytest.raises(ValueError):
        check_delta_lemma('iv', 5)
    with pytest.raises(ValueError):
        check_delta_lemma('i', 0)


def test_truncated_loops_evaluate_modes():
    loops = TruncatedLoops(2, 2)
    assert sorted(loops.evaluate(JetFunction.variable(2, 0, 1))) == [-2, -1, 0, 1, 2]
    assert sorted(loops.evaluate(JetFunction.variable(2, 1, 1))) == [-2, -1, 1, 2]
    assert loops.evaluate(JetFunction.zero(2)) == {}


def test_jet_lemma():
    report = check_jet_lemma(K=2, trials=3, seed=1)
    assert report.passed
    assert report.counts['product-jets'] == 3
    assert check_jet_lemma(K=1, trials=2, seed=4, N=3, deg=1, freq=1).passed


def test_probe_spec_validation():
    with pytest.raises(ValueError):
        ProbeSpec(deg=-1)
    with pytest.raises(ValueError):
        ProbeSpec(N=1)
    with pytest.raises(ValueError):
        ProbeSpec(N=2, params=CurrentParams(3))
    with pytest.raises(ValueError):
        ProbeSpec(module='fock')


def test_probe_spec_states_start_at_the_vacuum():
    spec = ProbeSpec(N=2, deg=0, freq=1, D=1, W=1)
    assert spec.states()[0] == ((), ())
    assert len(spec.probes()) == 6
    assert len(spec.pairs()) == 15
    assert len(ProbeSpec(N=2, deg=0, freq=1, max_pairs=4).pairs()) == 4


def test_temporal_virasoro_on_the_trivial_module():
    spec = ProbeSpec(N=2, deg=0, freq=1, D=2, W=2, window=2)
    report = check_temporal_virasoro(spec)
    assert report.passed
    assert report.fitted == {'cubic': '1/6', 'linear': '-1/6', 'central_charge': '2'}


def test_temporal_central_charge_grows_with_dimension():
    spec = ProbeSpec(N=4, deg=0, freq=1, D=1, W=1, window=2)
    report = check_temporal_virasoro(spec)
    assert report.passed
    assert report.fitted['central_charge'] == '6'


def test_temporal_virasoro_on_a_verma_module():
    params = CurrentParams(2, c=gq('1/2'))
    spec = ProbeSpec(N=2, deg=0, freq=1, D=1, W=1, window=2, params=params,
                     weight=HighestWeight(gq('1/3')), module='verma')
    report = check_temporal_virasoro(spec)
    assert report.passed
    assert report.fitted['central_charge'] == '5/2'
    value, rest = temporal_central_value(spec, 2)
    assert rest == {}
    assert value == 8 * gq('5/24') - 2 * gq('5/24')


def test_q_transform_and_energy():
    spec = ProbeSpec(N=2, deg=1, freq=1, D=1, W=1)
    assert check_q_transform(spec).passed
    assert check_energy(spec).passed
    verma = ProbeSpec(N=2, deg=0, freq=1, D=1, W=1, params=CurrentParams(2, c=gq(1)),
                      weight=HighestWeight(gq('1/2')), module='verma')
    report = check_energy(verma)
    assert report.passed
    assert report.counts['states'] == len(verma.states())


def _brackets_matched(report, spec):
    """Every bracket agreed; only the cocycle fit lacked rank, and what it fixed is right."""
    assert report.counterexample is not None and 'unidentified' in report.counterexample, report.counterexample
    expected = spec.extension().cocycles()
    for name, value in (report.fitted or {}).items():
        assert value == format_scalar(expected[name])


def test_realization_on_a_small_window():
    spec = ProbeSpec(N=2, deg=1, freq=1, D=2, W=2, args=1, max_pairs=4)
    report = check_realization(spec)
    _brackets_matched(report, spec)
    assert report.counts['pairs'] == 4
    assert report.counts['action'] == 12 * 8


@pytest.mark.parametrize('level', [3, 5])
def test_realization_with_abelian_currents(level):
    params = CurrentParams(2, c=gq(1), k0=gq(2), k=gq(level), gauge=gauge_algebra('u1:1'),
                           g=(gq(1),), gprime=(gq(-1),))
    spec = ProbeSpec(N=2, deg=0, freq=1, D=1, W=1, args=1, max_pairs=3, params=params,
                     weight=HighestWeight(gq('1/2'), mu=(gq(2),)), module='verma')
    report = check_realization(spec)
    _brackets_matched(report, spec)
    assert report.counts['gauge-action'] == len(spec.probes())
    assert report.counts['gauge-gauge'] > 0


def test_temporal_pairs_do_not_separate_the_cocycles():
    spec = ProbeSpec(N=2, deg=0, freq=2, D=2, W=2)
    temporal = [0, 2, 4, 6, 8]
    pairs = [(a, b) for a in temporal for b in temporal if a < b]
    with pytest.raises(RankDeficiencyError):
        fit_cocycle_coefficients(spec, pairs=pairs)


def test_fit_fails_when_the_window_cannot_separate_the_cocycles():
    report = check_fit(ProbeSpec(N=2, deg=0, freq=1, D=2, W=2))
    assert not report.passed
    assert report.counterexample['unidentified']
    assert 'freq >= 2' in report.counterexample['hint']


@pytest.mark.slow
def test_fit_recovers_the_realized_cocycles():
    report = check_fit(ProbeSpec())
    assert report.passed, report.counterexample
    assert report.fitted == {'c1': '1', 'c2': '0', 'c3': '-11/6', 'c4': '1',
                             'a1': '-1', 'a2': '1/6', 'a3': '1/2*i'}


@pytest.mark.slow
def test_fit_on_a_verma_module_controls_every_cocycle():
    # c3 = -2 + (c + 2N - 2)/12 = -2 + 5/24
    params = CurrentParams(2, c=gq('1/2'), k0=gq(2), k1=gq(3), k2=gq(-1))
    report = check_fit(ProbeSpec(params=params, module='verma'))
    assert report.passed, report.counterexample
    assert report.fitted == {'c1': '4', 'c2': '-1', 'c3': '-43/24', 'c4': '3',
                             'a1': '-1', 'a2': '5/24', 'a3': '1/2*i'}


@pytest.mark.slow
def test_fit_in_three_dimensions():
    report = check_fit(ProbeSpec(N=3, W=3))
    assert report.passed, report.counterexample
    assert report.fitted == {'c1': '1', 'c2': '0', 'c3': '-5/3', 'c4': '1',
                             'a1': '-1', 'a2': '1/3', 'a3': '1/2*i'}


def test_abstract_checks_on_a_small_window():
    spec = ProbeSpec(N=2, deg=0, freq=1, args=1, draws=1, max_pairs=20)
    assert check_jacobi(spec).passed
    assert check_coboundary(spec).passed
    assert check_chain(spec).passed
    assert check_antisymmetry(spec).passed
    assert check_transforms(ProbeSpec(N=2, deg=1, freq=1, args=1)).passed


def test_jacobi_in_three_dimensions_on_sampled_triples():
    report = check_jacobi(ProbeSpec(N=3, deg=0, freq=1, args=1, draws=2, max_pairs=25))
    assert report.passed, report.counterexample
    assert report.counts['triples'] == 50


@pytest.mark.slow
@pytest.mark.parametrize('N', [2, 3])
def test_jacobi_on_the_full_probe_cube(N):
    report = check_jacobi(ProbeSpec(N=N, deg=1, freq=1, args=1, draws=5))
    assert report.passed, report.counterexample


@pytest.mark.slow
@pytest.mark.parametrize('N', [2, 3])
def test_jet_lemma_over_many_draws(N):
    report = check_jet_lemma(K=2, trials=20, seed=7, N=N, deg=2, freq=2)
    assert report.passed, report.counterexample
    assert report.counts['divergence-jets'] == 20
    assert report.counts['product-jets'] == 20


def test_jacobi_with_sl2_currents():
    params = CurrentParams(2, c=gq(1), k=gq(2), gauge=gauge_algebra('sl2'))
    spec = ProbeSpec(N=2, deg=0, freq=1, args=1, draws=1, max_pairs=30, params=params)
    report = check_jacobi(spec)
    assert report.passed, report.counterexample
    assert report.counts['triples'] == 30


def test_current_jacobi_check():
    params = CurrentParams(2, c=gq(2), k0=gq(1), k1=I, k2=gq(3))
    assert check_current(ProbeSpec(N=2, params=params, window=1)).passed


def test_run_checks_expands_and_deduplicates():
    spec = ProbeSpec(kmax=5)
    reports = run_checks(['delta', 'delta'], spec)
    assert [r.check for r in reports] == ['delta-i', 'delta-ii', 'delta-iii']
    assert run_checks([], spec) == []
    with pytest.raises(ValueError):
        run_checks(['nope'], spec)
