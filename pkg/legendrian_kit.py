#!/usr/bin/env python3
"""
legendrian-kit command line
Classical invariants, pattern detection, surgery data, Seifert algebra, Floer bookkeeping and verdicts
"""

import argparse
import json
import logging
import sys

from rich.console import Console
from rich.table import Table

from detect import (
    find_zigzags, has_fig1_config, load_fig1_template, stabilized_component_witnesses,
)
from front_core import (
    cusp_counts, linking_number, load_front_file, orient_record, rot, tb, writhe,
)
from hfmod import TriangleRanks, dual, image_ranks, parse_module, v_module, v_rank
from kit_config import DEFAULT_CONFIG_FILE, LOG_LEVELS, ConfigError, load_config, setup_logging
from seifert import (
    alexander, knot_determinant, signature, symmetrized_eigenvalues,
    twist_knot_seifert, twist_zero_surgery_hf,
)
from surgery import diagram_from_record, surgery_summary
from verdict import citation_for, evaluate, facts_from_record, load_facts

try:
    from banner import print_mini_banner, print_section, print_verdict_line
except ImportError:
    def print_mini_banner(): pass
    def print_section(title): print(f"\n{title}\n" + "=" * 50)
    def print_verdict_line(verdict, contradiction=False): print(f"Verdict: {verdict}")

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_CONTRADICTION = 3


def invariants_report(path):
    record = load_front_file(path)
    f = orient_record(record)
    count = f.components.count
    components = []
    for c in range(count):
        up, down = cusp_counts(f, c)
        components.append({
            'component': c,
            'tb': tb(f, c),
            'rot': rot(f, c),
            'writhe': writhe(f, (c, c)),
            'cusps': {'up': up, 'down': down},
        })
    linking = [[0 if a == b else linking_number(f, a, b) for b in range(count)]
               for a in range(count)]
    return {'name': record.name, 'events': len(record.word), 'components': components,
            'linking_numbers': linking}


def detect_report(path, template_path=None):
    record = load_front_file(path)
    f = orient_record(record)
    template = load_fig1_template(template_path)
    zigzag_rule = 'stabilized-knot' if f.components.count == 1 else 'stabilized-link-component'
    clasps = []
    for c in range(f.components.count):
        witness = has_fig1_config(f, c, template)
        if witness is not None:
            clasps.append({**witness.to_dict(), 'citation': citation_for('clasp-configuration')})
    return {
        'name': record.name,
        'template': template.name,
        'zigzags': [w.to_dict() for w in find_zigzags(record.word)],
        'stabilized_components': [{**w.to_dict(), 'citation': citation_for(zigzag_rule)}
                                  for w in stabilized_component_witnesses(record.word)],
        'clasp_configurations': clasps,
    }


def surgery_report(path):
    record = load_front_file(path)
    summary = surgery_summary(diagram_from_record(record))
    return {'name': record.name, **summary}


def seifert_report(k):
    V = twist_knot_seifert(k)
    zero_surgery = twist_zero_surgery_hf(2 * k)
    return {
        'k': k,
        'seifert_matrix': [list(row) for row in V.rows],
        'alexander': str(alexander(V)),
        'signature': signature(V),
        'eigenvalues': [str(v) for v in symmetrized_eigenvalues(V)],
        'determinant': int(knot_determinant(V)),
        'zero_surgery_hf': {'n': 2 * k, 'first': str(zero_surgery.first),
                            'second': str(zero_surgery.second)},
    }


def hf_report(args):
    if args.hf_command == 'dual':
        module = parse_module(args.module)
        return {'module': str(module), 'dual': str(dual(module))}
    if args.hf_command == 'triangle':
        images = image_ranks(TriangleRanks(args.a, args.b, args.c))
        return {
            'ranks': [args.a, args.b, args.c],
            'images': list(images.as_tuple()),
            'zero': [images.first_zero, images.second_zero, images.third_zero],
            'injective': [images.first_injective, images.second_injective, images.third_injective],
        }
    if args.hf_command == 'vrank':
        return {'k': args.k, 'rank': v_rank(args.k), 'module': str(v_module(args.k))}
    pair = twist_zero_surgery_hf(args.n)
    return {'n': args.n, 'first': str(pair.first), 'second': str(pair.second)}


def verdict_report(path, facts_path=None, template_path=None):
    record = load_front_file(path)
    d = diagram_from_record(record)
    facts = facts_from_record(record)
    if facts_path:
        facts = facts.merged(load_facts(facts_path))
    template = load_fig1_template(template_path)
    report = evaluate(d, facts, template)
    return {'name': record.name, **report.to_dict(), 'facts': facts.to_dict()}


def _print_mapping(data):
    for key, value in data.items():
        if isinstance(value, (list, dict)):
            value = json.dumps(value)
        print(f"  {key}: {value}")


def _print_citation(citation):
    print(f"     [{citation['rule_id']}] {citation['anchor']}: {citation['statement']}")


def _print_verdict(report):
    print_verdict_line(report['verdict'], report['contradiction'])
    if not report['reasons']:
        print("  No rule applies to this diagram")
        return
    table = Table(title=f"Reasons for {report['name']}")
    table.add_column("Rule", style="cyan")
    table.add_column("Verdict")
    table.add_column("Component")
    table.add_column("Anchor", style="magenta")
    table.add_column("Citation", style="dim")
    for reason in report['reasons']:
        component = '-' if reason['component'] is None else str(reason['component'])
        table.add_row(reason['rule_id'], reason['verdict'], component,
                      reason['anchor'], reason['citation'])
    Console().print(table)


def print_text(command, report):
    titles = {
        'invariants': 'CLASSICAL INVARIANTS',
        'detect': 'FRONT PATTERNS',
        'surgery': 'SURGERY DATA',
        'seifert': 'SEIFERT ALGEBRA',
        'hf': 'FLOER BOOKKEEPING',
        'verdict': 'VERDICT',
    }
    print_mini_banner()
    print_section(titles[command])
    if command == 'invariants':
        print(f"  front: {report['name']} ({report['events']} events)")
        for entry in report['components']:
            print(f"  K{entry['component']}: tb={entry['tb']} rot={entry['rot']} "
                  f"writhe={entry['writhe']} cusps={entry['cusps']['up'] + entry['cusps']['down']}")
        if len(report['components']) > 1:
            print(f"  linking numbers: {report['linking_numbers']}")
    elif command == 'detect':
        print(f"  zig-zags: {len(report['zigzags'])}")
        for witness in report['stabilized_components']:
            print(f"  ✅ K{witness['component']} is stabilized (events {witness['event_indices']})")
            _print_citation(witness['citation'])
        for witness in report['clasp_configurations']:
            print(f"  ✅ K{witness['component']} contains {report['template']} "
                  f"({witness['parity_data']} cusps between U and U')")
            _print_citation(witness['citation'])
        if not report['zigzags'] and not report['clasp_configurations']:
            print("  ❌ no pattern found")
    elif command == 'verdict':
        _print_verdict(report)
    else:
        _print_mapping(report)


def build_parser():
    parser = argparse.ArgumentParser(
        prog='legendrian-kit',
        description="Legendrian fronts, contact (+/-1)-surgery and Floer bookkeeping",
    )
    parser.add_argument('--config', default=DEFAULT_CONFIG_FILE,
                        help=f'Config file (default: {DEFAULT_CONFIG_FILE})')
    parser.add_argument('--json', action='store_true', default=None,
                        help='Machine-readable JSON output')
    parser.add_argument('--log-level', choices=LOG_LEVELS, help='Override the configured log level')
    parser.add_argument('--template', help='Clasp template JSON (default: from config)')

    commands = parser.add_subparsers(dest='command', required=True)
    p = commands.add_parser('invariants', help='tb, rot and linking numbers of a front')
    p.add_argument('front')
    p = commands.add_parser('detect', help='Zig-zags and clasp configurations')
    p.add_argument('front')
    p = commands.add_parser('surgery', help='Linking matrix, H1, Hopf invariant and c1 class')
    p.add_argument('diagram')
    p = commands.add_parser('seifert', help='Twist-knot Seifert algebra')
    p.add_argument('--twist', type=int, required=True, metavar='K')

    hf = commands.add_parser('hf', help='Floer module bookkeeping')
    hf_commands = hf.add_subparsers(dest='hf_command', required=True)
    p = hf_commands.add_parser('dual', help="Orientation-reversal dual of a module, e.g. 'T(-2) + Z(-2)'")
    p.add_argument('module')
    p = hf_commands.add_parser('triangle', help='Image ranks in an exact triangle')
    for name in ('a', 'b', 'c'):
        p.add_argument(name, type=int)
    p = hf_commands.add_parser('vrank', help='Rank of V(k) by triangle induction')
    p.add_argument('k', type=int)
    p = hf_commands.add_parser('twist-zero', help='0-surgery modules of the twist knot and its mirror')
    p.add_argument('n', type=int)

    p = commands.add_parser('verdict', help='Overtwisted / vanishing / tight verdict')
    p.add_argument('diagram')
    p.add_argument('--facts', help="File of 'fact <component> <key> <value>' lines")
    return parser


def run(args, config):
    template = args.template or config.fig1_template
    if args.command == 'invariants':
        return invariants_report(args.front)
    if args.command == 'detect':
        return detect_report(args.front, template)
    if args.command == 'surgery':
        return surgery_report(args.diagram)
    if args.command == 'seifert':
        return seifert_report(args.twist)
    if args.command == 'hf':
        return hf_report(args)
    return verdict_report(args.diagram, args.facts, template)


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        config = load_config(args.config)
    except ConfigError as e:
        print(f"❌ {e}", file=sys.stderr)
        return EXIT_INVALID
    setup_logging(args.log_level or config.log_level, config.log_file)
    as_json = config.json_output if args.json is None else args.json

    try:
        report = run(args, config)
    except (ValueError, OSError) as e:
        # every kit error is a ValueError subclass
        logger.debug("Validation failure in %s: %r", args.command, e)
        print(f"❌ {e}", file=sys.stderr)
        return EXIT_INVALID

    if as_json:
        print(json.dumps(report, indent=2, ensure_ascii=False))
    else:
        print_text(args.command, report)
    return EXIT_CONTRADICTION if report.get('contradiction') else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
