#!/usr/bin/env python3
"""
Batch verdict script tests
"""

import json
import os

from kit_config import KitConfig
from scripts.batch_verdicts import BatchVerdicts, collect_paths, main

FRONTS = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), 'fronts')


def test_batch_over_sample_fronts(tmp_path):
    config = KitConfig(batch_workers=3, reports_dir=str(tmp_path / 'reports'))
    batch = BatchVerdicts(config)
    paths = collect_paths([FRONTS])
    assert len(paths) == 5
    results = batch.run(paths)
    verdicts = {os.path.basename(p): r['verdict'] for p, r in results.items()}
    assert verdicts == {
        'left_trefoil.front': 'Overtwisted',
        'right_trefoil.front': 'ChatVanishes',
        'stabilized_unknot.front': 'Overtwisted',
        'twist_4_1.front': 'Tight',
        'unknot.front': 'Unknown',
    }
    summary = batch.summary()
    assert summary['verdict_counts']['Overtwisted'] == 2
    assert [os.path.basename(p) for p in summary['contradictions']] == ['right_trefoil.front']

    with open(batch.save_report(), encoding='utf-8') as f:
        report = json.load(f)
    assert len(report['results']) == 5
    assert report['failures'] == {}


def test_invalid_files_are_failures(tmp_path):
    bad = tmp_path / 'bad.front'
    bad.write_text("front bad\nL1 R1\nend\n")
    batch = BatchVerdicts(KitConfig(reports_dir=str(tmp_path)))
    assert batch.run([str(bad)]) == {}
    assert 'surgery' in batch.failures[str(bad)]


def test_main_exit_codes(tmp_path, capsys):
    config = tmp_path / 'kit_config.json'
    config.write_text(json.dumps({'reports_dir': str(tmp_path / 'out')}))
    assert main([os.path.join(FRONTS, 'twist_4_1.front'), '--config', str(config)]) == 0
    assert main([FRONTS, '--config', str(config), '--workers', '2']) == 3
    assert 'BATCH VERDICTS' in capsys.readouterr().out
    assert len(os.listdir(tmp_path / 'out')) >= 1
    (tmp_path / 'empty').mkdir()
    assert main([str(tmp_path / 'empty'), '--config', str(config)]) == 2
