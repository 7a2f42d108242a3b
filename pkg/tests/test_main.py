import json

import pytest

import main
from config import Config, apply_overrides, load_file, workers_from_env
from errors import ConfigError
from report import Report


def read(path):
    return json.loads(path.read_text())


def test_delta_campaign(tmp_path):
    out = tmp_path / 'report.json'
    assert main.run(['verify', 'delta', '--kmax', '5', '--out', str(out)]) == 0
    data = read(out)
    assert [entry['check'] for entry in data] == ['delta-i', 'delta-ii', 'delta-iii']
    assert all(entry['pass'] for entry in data)
    assert data[0]['counts'] == {'coefficients': 10}
    assert 'millis' not in data[0]


def test_timings_flag(tmp_path):
    out = tmp_path / 'report.json'
    assert main.run(['verify', '--check', 'delta', '--kmax', '2', '--timings', '--out', str(out)]) == 0
    assert 'millis' in read(out)[0]


def test_empty_selection_writes_an_empty_list(tmp_path):
    out = tmp_path / 'report.json'
    assert main.run(['verify', '--out', str(out)]) == 0
    assert out.read_text() == '[]\n'
    assert (tmp_path / 'report.txt').read_text() == '0 checks, 0 failed\n'


@pytest.mark.parametrize('argv', [
    ['verify', 'bogus'],
    ['verify', 'delta', '--c', 'abc'],
    ['verify', 'delta', '--gauge', 'so5'],
    ['verify', 'delta', '--N', '1'],
    ['verify', 'delta', '--config', '/nonexistent/diffext.ini'],
])
def test_configuration_errors_exit_with_two(argv, tmp_path):
    assert main.run(argv + ['--out', str(tmp_path / 'r.json')]) == 2
    assert not (tmp_path / 'r.json').exists()


def test_config_file_and_overrides(tmp_path):
    out = tmp_path / 'report.json'
    ini = tmp_path / 'campaign.ini'
    ini.write_text(f"[probe]\nkmax = 3\n\n[checks]\nrun = delta\n\n[output]\nout = {out}\n")
    assert main.run(['verify', '--config', str(ini)]) == 0
    assert read(out)[0]['counts'] == {'coefficients': 6}
    assert main.run(['verify', '--config', str(ini), '--kmax', '4']) == 0
    assert read(out)[0]['counts'] == {'coefficients': 8}


def test_unknown_config_key(tmp_path):
    ini = tmp_path / 'campaign.ini'
    ini.write_text("[probe]\nfoo = 1\n")
    assert main.run(['verify', '--config', str(ini), '--out', str(tmp_path / 'r.json')]) == 2
    with pytest.raises(ConfigError):
        load_file(str(ini))
    ini.write_text("[plots]\nkind = bar\n")
    with pytest.raises(ConfigError):
        load_file(str(ini))


def test_failed_check_exits_with_one(tmp_path, monkeypatch):
    failed = Report('energy')
    failed.fail({'state': '1 (x) v'})
    monkeypatch.setattr(main, 'run_checks', lambda names, spec, workers: [failed])
    out = tmp_path / 'report.json'
    assert main.run(['verify', 'energy', '--out', str(out)]) == 1
    assert read(out)[0]['pass'] is False


def test_workers_from_env(monkeypatch):
    monkeypatch.delenv('DIFFEXT_WORKERS', raising=False)
    monkeypatch.setattr('os.cpu_count', lambda: 6)
    assert workers_from_env() == 6
    monkeypatch.setattr('os.cpu_count', lambda: None)
    assert workers_from_env() == 1
    monkeypatch.setenv('DIFFEXT_WORKERS', '3')
    assert workers_from_env() == 3
    monkeypatch.setenv('DIFFEXT_WORKERS', 'many')
    with pytest.raises(ConfigError):
        workers_from_env()
    assert main.run(['verify', 'delta']) == 2


def test_config_builds_a_verma_probe_spec():
    config = apply_overrides(Config(), {'module': 'verma', 'c': '1/2', 'h': '1/3', 'gauge': 'u1:2',
                                        'g': '1,0', 'mu': '0,1/2', 'N': 3, 'timings': None})
    config.validate()
    spec = config.probe_spec()
    assert spec.module == 'verma'
    assert spec.params.gauge.dim == 2
    assert spec.params.N == 3
    assert spec.weight.mu[1] == spec.params.c
    with pytest.raises(ConfigError):
        apply_overrides(Config(), {'colour': 'red'})
    with pytest.raises(ConfigError):
        apply_overrides(Config(), {'module': 'fock'}).validate()


def test_module_data_selects_the_verma_module():
    assert Config().probe_spec().module == 'trivial'
    assert apply_overrides(Config(), {'c': '1/2', 'k0': '2'}).probe_spec().module == 'verma'
    assert apply_overrides(Config(), {'gauge': 'u1:1'}).probe_spec().module == 'verma'
    assert apply_overrides(Config(), {'module': 'trivial', 'c': '1/2'}).probe_spec().module == 'trivial'


@pytest.mark.slow
def test_realization_campaign_on_a_verma_module(tmp_path):
    out = tmp_path / 'report.json'
    argv = ['verify', 'realization', '--N', '2', '--c', '1/2', '--k0', '2', '--k1', '3', '--k2', '-1',
            '--out', str(out)]
    assert main.run(argv) == 0
    [entry] = read(out)
    assert entry['pass'] is True
    assert entry['params']['module'] == 'verma'
    fitted = entry['fitted_coefficients']
    assert [fitted[name] for name in ('c1', 'c2', 'c3', 'c4')] == ['4', '-1', '-43/24', '3']


def test_unusable_out_path_exits_before_running(tmp_path, monkeypatch):
    blocker = tmp_path / 'blocker'
    blocker.write_text('')
    monkeypatch.setattr(main, 'run_checks', lambda names, spec, workers: pytest.fail('checks should not run'))
    assert main.run(['verify', 'delta', '--out', str(blocker / 'sub' / 'r.json')]) == 2
