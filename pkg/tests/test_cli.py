#!/usr/bin/env python3
"""
CLI tests: every subcommand through main(argv), JSON reports and exit codes
"""

import json
import os

import pytest

from legendrian_kit import EXIT_CONTRADICTION, EXIT_INVALID, EXIT_OK, main
from verdict import CITATIONS

FRONTS = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), 'fronts')


def front(name):
    return os.path.join(FRONTS, name)


@pytest.fixture
def run_json(tmp_path, capsys):
    """Run a command with default settings and return (code, parsed stdout)"""
    def run(*argv):
        code = main(['--config', str(tmp_path / 'absent.json'), '--json', *argv])
        out = capsys.readouterr().out
        return code, (json.loads(out) if code != EXIT_INVALID else None)
    return run


def test_invariants(run_json):
    code, report = run_json('invariants', front('unknot.front'))
    assert code == EXIT_OK
    assert report['components'][0]['tb'] == -1
    assert report['components'][0]['rot'] == 0
    code, report = run_json('invariants', front('twist_4_1.front'))
    assert (report['components'][0]['tb'], report['components'][0]['rot']) == (1, 0)


def test_detect(run_json):
    code, report = run_json('detect', front('stabilized_unknot.front'))
    assert code == EXIT_OK
    assert [z['event_indices'] for z in report['zigzags']] == [[1, 2], [1, 3]]
    stabilized = report['stabilized_components']
    assert [s['component'] for s in stabilized] == [0]
    assert stabilized[0]['citation']['rule_id'] == 'stabilized-knot'
    assert stabilized[0]['citation']['anchor'] == CITATIONS['stabilized-knot'].anchor
    _, report = run_json('detect', front('left_trefoil.front'))
    assert report['clasp_configurations']
    assert report['clasp_configurations'][0]['citation']['rule_id'] == 'clasp-configuration'
    _, report = run_json('detect', front('right_trefoil.front'))
    assert report['clasp_configurations'] == []
    assert report['zigzags'] == []


def test_surgery(run_json):
    code, report = run_json('surgery', front('twist_4_1.front'))
    assert code == EXIT_OK
    assert report['h1'] == 'Z'
    assert report['hopf_invariant'] == '-1/2'
    assert report['expected_chat_degree'] == '1/2'
    _, report = run_json('surgery', front('unknot.front'))
    assert report['hopf_invariant'] == '1/2'


def test_seifert(run_json):
    code, report = run_json('seifert', '--twist', '3')
    assert code == EXIT_OK
    assert report['alexander'] == '3t^-1 - 5 + 3t'
    assert report['signature'] == -2
    assert report['eigenvalues'] == ['-11', '-1']
    assert report['determinant'] == 11
    assert report['zero_surgery_hf'] == {
        'n': 6,
        'first': 'T(-3/2) + T(-1/2) + Z^2(-3/2)',
        'second': 'T(1/2) + T(3/2) + Z^2(1/2)',
    }


def test_hf_commands(run_json):
    _, report = run_json('hf', 'dual', 'T(-2) + Z^2(-2)')
    assert report['dual'] == 'T(2) + Z^2(1)'
    _, report = run_json('hf', 'triangle', '1', '4', '3')
    assert report['images'] == [1, 3, 0]
    assert report['injective'][0] is True
    _, report = run_json('hf', 'vrank', '3')
    assert report['rank'] == 8
    _, report = run_json('hf', 'twist-zero', '4')
    assert report['second'] == 'T(1/2) + T(3/2) + Z(1/2)'


def test_verdicts(run_json):
    code, report = run_json('verdict', front('stabilized_unknot.front'))
    assert code == EXIT_OK
    assert report['verdict'] == 'Overtwisted'
    assert report['reasons'][0]['rule_id'] == 'stabilized-knot'
    assert report['reasons'][0]['anchor'] == CITATIONS['stabilized-knot'].anchor

    _, report = run_json('verdict', front('left_trefoil.front'))
    assert report['verdict'] == 'Overtwisted'
    assert 'negative-torus-knot' in [r['rule_id'] for r in report['reasons']]

    _, report = run_json('verdict', front('right_trefoil.front'))
    assert report['verdict'] == 'Tight'

    _, report = run_json('verdict', front('twist_4_1.front'))
    assert report['verdict'] == 'Tight'
    assert report['reasons'][0]['rule_id'] == 'stein-fillable'


def test_contradiction_exit_code(run_json):
    code, report = run_json('verdict', front('right_trefoil.front'),
                            '--facts', front('right_trefoil.facts'))
    assert code == EXIT_CONTRADICTION
    assert report['contradiction'] is True
    assert report['verdict'] == 'ChatVanishes'
    assert report['facts']['0']['alt_representative'] == [2, 0]


def test_validation_errors_exit_with_two(tmp_path, capsys, run_json):
    bad = tmp_path / 'bad.front'
    bad.write_text("front bad\nL1 X2 R1\nend\n")
    code = main(['--config', str(tmp_path / 'absent.json'), '--json', 'invariants', str(bad)])
    captured = capsys.readouterr()
    assert code == EXIT_INVALID
    assert '❌' in captured.err
    assert captured.out == ''

    for argv in [('invariants', str(tmp_path / 'missing.front')),
                 ('hf', 'triangle', '1', '1', '1'),
                 ('hf', 'dual', 'Q(3)'),
                 ('seifert', '--twist', '0'),
                 ('hf', 'vrank', '-1'),
                 ('surgery', front('unknot.front').replace('unknot', 'nothing'))]:
        code, _ = run_json(*argv)
        assert code == EXIT_INVALID

    no_surgery = tmp_path / 'plain.front'
    no_surgery.write_text("front plain\nL1 R1\nend\n")
    code, _ = run_json('verdict', str(no_surgery))
    assert code == EXIT_INVALID


def test_bad_config_exits_with_two(tmp_path, capsys):
    config = tmp_path / 'kit_config.json'
    config.write_text('{"log_level": "LOUD"}')
    assert main(['--config', str(config), 'hf', 'vrank', '1']) == EXIT_INVALID
    assert 'log_level' in capsys.readouterr().err


def test_config_can_switch_on_json(tmp_path, capsys):
    config = tmp_path / 'kit_config.json'
    config.write_text('{"json_output": true}')
    assert main(['--config', str(config), 'hf', 'vrank', '2']) == EXIT_OK
    assert json.loads(capsys.readouterr().out)['rank'] == 6


def test_text_output(tmp_path, capsys):
    absent = str(tmp_path / 'absent.json')
    assert main(['--config', absent, 'verdict', front('stabilized_unknot.front')]) == EXIT_OK
    assert 'Verdict: Overtwisted' in capsys.readouterr().out
    assert main(['--config', absent, 'seifert', '--twist', '2']) == EXIT_OK
    out = capsys.readouterr().out
    assert 'SEIFERT ALGEBRA' in out
    assert 'alexander: 2t^-1 - 3 + 2t' in out
    assert 'zero_surgery_hf' in out
    assert main(['--config', absent, 'invariants', front('unknot.front')]) == EXIT_OK
    assert 'K0: tb=-1 rot=0' in capsys.readouterr().out
    assert main(['--config', absent, 'detect', front('stabilized_unknot.front')]) == EXIT_OK
    out = capsys.readouterr().out
    assert '[stabilized-knot] zig-zag overtwisted disk' in out
