#!/usr/bin/env python3
"""
Batch Verdicts - evaluate every surgery diagram in a directory
Runs the verdict engine over many front files in parallel and writes a timestamped JSON report
"""

import argparse
import glob
import json
import logging
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor, as_completed
from datetime import datetime

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from detect import load_fig1_template  # noqa: E402
from front_core import load_front_file  # noqa: E402
from kit_config import DEFAULT_CONFIG_FILE, ConfigError, load_config, setup_logging  # noqa: E402
from surgery import diagram_from_record  # noqa: E402
from verdict import evaluate, facts_from_record, load_facts  # noqa: E402

logger = logging.getLogger(__name__)


class BatchVerdicts:
    def __init__(self, config, template=None):
        self.config = config
        self.template = template or load_fig1_template(config.fig1_template)
        self.results = {}
        self.failures = {}

    def evaluate_file(self, path):
        """Verdict for one diagram file; facts come from the file and an optional sibling .facts file"""
        record = load_front_file(path)
        facts = facts_from_record(record)
        sidecar = os.path.splitext(path)[0] + '.facts'
        if os.path.exists(sidecar):
            facts = facts.merged(load_facts(sidecar))
        report = evaluate(diagram_from_record(record), facts, self.template)
        return {'name': record.name, **report.to_dict()}

    def run(self, paths):
        """Evaluate all files; unreadable or invalid diagrams are recorded as failures"""
        workers = min(self.config.batch_workers, max(1, len(paths)))
        logger.info(f"Evaluating {len(paths)} diagrams with {workers} workers")

        with ThreadPoolExecutor(max_workers=workers) as executor:
            future_to_path = {executor.submit(self.evaluate_file, path): path for path in paths}
            for future in as_completed(future_to_path):
                path = future_to_path[future]
                try:
                    self.results[path] = future.result()
                    logger.info(f"✅ {path}: {self.results[path]['verdict']}")
                except (ValueError, OSError) as e:
                    self.failures[path] = str(e)
                    logger.warning(f"❌ {path}: {e}")

        return self.results

    def summary(self):
        counts = {}
        for result in self.results.values():
            counts[result['verdict']] = counts.get(result['verdict'], 0) + 1
        contradictions = sorted(p for p, r in self.results.items() if r['contradiction'])
        return {'verdict_counts': dict(sorted(counts.items())), 'contradictions': contradictions}

    def save_report(self):
        """Write reports/verdicts_<timestamp>.json"""
        os.makedirs(self.config.reports_dir, exist_ok=True)
        timestamp = datetime.now().strftime('%Y%m%d_%H%M%S')
        path = os.path.join(self.config.reports_dir, f"verdicts_{timestamp}.json")
        report = {
            'generated': datetime.now().isoformat(),
            'summary': self.summary(),
            'results': {p: self.results[p] for p in sorted(self.results)},
            'failures': {p: self.failures[p] for p in sorted(self.failures)},
        }
        with open(path, 'w', encoding='utf-8') as f:
            json.dump(report, f, indent=2, ensure_ascii=False)
        return path


def collect_paths(targets):
    paths = []
    for target in targets:
        if os.path.isdir(target):
            paths += glob.glob(os.path.join(target, '*.front'))
        else:
            paths.append(target)
    return sorted(set(paths))


def main(argv=None):
    parser = argparse.ArgumentParser(description="Evaluate many surgery diagrams in parallel")
    parser.add_argument('targets', nargs='+', help='Diagram files or directories of .front files')
    parser.add_argument('--config', default=DEFAULT_CONFIG_FILE,
                        help=f'Config file (default: {DEFAULT_CONFIG_FILE})')
    parser.add_argument('--workers', type=int, help='Override batch_workers from the config')
    args = parser.parse_args(argv)

    try:
        config = load_config(args.config)
    except ConfigError as e:
        print(f"❌ {e}", file=sys.stderr)
        return 2
    if args.workers:
        config.batch_workers = args.workers
    setup_logging(config.log_level, config.log_file)

    paths = collect_paths(args.targets)
    if not paths:
        print("❌ No diagram files found!")
        return 2

    print("🚀 BATCH VERDICTS")
    print("=" * 50)
    start = time.time()
    batch = BatchVerdicts(config)
    batch.run(paths)
    report_path = batch.save_report()
    summary = batch.summary()

    print(f"📊 Diagrams evaluated: {len(batch.results)}")
    for verdict, count in summary['verdict_counts'].items():
        print(f"   {verdict}: {count}")
    if batch.failures:
        print(f"❌ Invalid diagrams: {len(batch.failures)}")
    if summary['contradictions']:
        print(f"⚠️  Contradictions: {', '.join(summary['contradictions'])}")
    print(f"⏱️  Total time: {time.time() - start:.1f} seconds")
    print(f"📁 Report: {report_path}")
    return 3 if summary['contradictions'] else 0


if __name__ == "__main__":
    sys.exit(main())
