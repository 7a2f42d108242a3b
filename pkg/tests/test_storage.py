import json
import logging
import os

import pytest

from errors import ConfigError
from report import Report
from storage import Storage
from storage_json import JSONReportStorage


def test_storage_defaults_to_report_dir(tmp_path, monkeypatch):
    monkeypatch.setenv('DIFFEXT_REPORT_DIR', str(tmp_path / 'out'))
    storage = Storage()
    assert storage.out_path == os.path.join(str(tmp_path / 'out'), 'report.json')
    assert (tmp_path / 'out').is_dir()


def test_explicit_path_wins(tmp_path, monkeypatch):
    monkeypatch.setenv('DIFFEXT_REPORT_DIR', str(tmp_path / 'ignored'))
    storage = Storage(str(tmp_path / 'nested' / 'run.json'))
    assert storage.out_path == str(tmp_path / 'nested' / 'run.json')
    assert storage.summary_path == str(tmp_path / 'nested' / 'run.txt')
    assert not (tmp_path / 'ignored').exists()


def test_save_and_load_reports(tmp_path):
    storage = JSONReportStorage(str(tmp_path / 'report.json'))
    ok = Report('delta-i', params={'kmax': '2'}, counts={'coefficients': 4}, millis=12)
    bad = Report('fit')
    bad.fail({'error': 'cocycle system is inconsistent'})
    bad.fail({'error': 'second failure is dropped'})
    assert storage.save_reports([ok, bad])

    data = storage.load_reports()
    assert [entry['check'] for entry in data] == ['delta-i', 'fit']
    assert list(data[0]) == ['check', 'params', 'counts', 'pass']
    assert data[1]['counterexample'] == {'error': 'cocycle system is inconsistent'}

    summary = (tmp_path / 'report.txt').read_text()
    assert 'delta-i: pass (coefficients=4)' in summary
    assert 'fit: FAIL' in summary
    assert summary.endswith('2 checks, 1 failed\n')


def test_timings_are_opt_in(tmp_path):
    storage = JSONReportStorage(str(tmp_path / 'report.json'))
    report = Report('energy', millis=7)
    assert 'millis' not in json.loads(storage.serialize([report]))[0]
    assert json.loads(storage.serialize([report], timings=True))[0]['millis'] == 7


def test_missing_or_corrupt_files_read_as_empty(tmp_path):
    storage = JSONReportStorage(str(tmp_path / 'absent.json'))
    assert storage.load_reports() == []
    (tmp_path / 'broken.json').write_text('{not json')
    assert JSONReportStorage(str(tmp_path / 'broken.json')).load_reports() == []


def test_unusable_explicit_path_is_a_config_error(tmp_path):
    blocker = tmp_path / 'blocker'
    blocker.write_text('')
    with pytest.raises(ConfigError):
        Storage(str(blocker / 'sub' / 'run.json'))


def test_unusable_report_dir_falls_back_with_a_warning(tmp_path, monkeypatch, caplog):
    blocker = tmp_path / 'blocker'
    blocker.write_text('')
    monkeypatch.setenv('DIFFEXT_REPORT_DIR', str(blocker / 'sub'))
    with caplog.at_level(logging.WARNING):
        storage = Storage()
    assert storage.out_path == 'report.json'
    assert 'Falling back' in caplog.text
