#!/usr/bin/env python3
"""
Console Banner Module for legendrian-kit
Headers and status lines for the plain-text CLI output
"""

import sys

COLORS = {
    'red': '\033[91m',
    'green': '\033[92m',
    'yellow': '\033[93m',
    'blue': '\033[94m',
    'cyan': '\033[96m',
    'reset': '\033[0m',
    'bold': '\033[1m',
}

VERDICT_MARKS = {
    'Overtwisted': '🌀',
    'TbBoundViolated': '⚠️',
    'ChatVanishes': '∅',
    'CplusVanishes': '∅',
    'Tight': '✅',
    'Unknown': '❔',
}


def _paint(text, *names):
    if not sys.stdout.isatty():
        return text
    return ''.join(COLORS[n] for n in names) + text + COLORS['reset']


def print_mini_banner():
    """Print the short tool header"""
    rule = '━' * 48
    print(_paint(rule, 'cyan', 'bold'))
    print(_paint('    legendrian-kit', 'yellow', 'bold') + '  fronts · surgery · Floer bookkeeping')
    print(_paint(rule, 'cyan', 'bold'))


def print_section(title):
    """Header for one block of results"""
    print()
    print(_paint(f"📊 {title}", 'blue', 'bold'))
    print("=" * 50)


def print_verdict_line(verdict, contradiction=False):
    mark = VERDICT_MARKS.get(verdict, '❔')
    color = 'green' if verdict == 'Tight' else 'red' if verdict == 'Overtwisted' else 'yellow'
    print(_paint(f"{mark} Verdict: {verdict}", color, 'bold'))
    if contradiction:
        print(_paint("⚠️  Contradiction: tightness and vanishing rules both fired", 'red', 'bold'))


if __name__ == "__main__":
    print_mini_banner()
