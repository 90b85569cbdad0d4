#!/usr/bin/env python3
"""
Verdict Engine
Applies the overtwistedness, vanishing and tightness rules to a surgery diagram plus declared facts
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, NamedTuple, Optional, Tuple

from detect import default_fig1_template, find_zigzags, has_fig1_config
from hfmod import image_ranks, TriangleRanks
from surgery import surgery_summary

logger = logging.getLogger(__name__)

FACT_KEYS = ('smooth_type', 'slice_genus', 'l_space_slope', 'alt_representative')
NEGATIVE_TORUS_TAG = 'negative torus knot'


class FactError(ValueError):
    pass


class Verdict(str, Enum):
    OVERTWISTED = 'Overtwisted'
    TB_BOUND_VIOLATED = 'TbBoundViolated'
    CHAT_VANISHES = 'ChatVanishes'
    CPLUS_VANISHES = 'CplusVanishes'
    TIGHT = 'Tight'
    UNKNOWN = 'Unknown'


# highest first
PRECEDENCE = (
    Verdict.OVERTWISTED,
    Verdict.TB_BOUND_VIOLATED,
    Verdict.CHAT_VANISHES,
    Verdict.CPLUS_VANISHES,
    Verdict.TIGHT,
)


class Citation(NamedTuple):
    verdict: Verdict
    anchor: str
    statement: str


# rule id -> verdict supported, anchor of the result applied, its statement
CITATIONS = {
    'clasp-configuration': Citation(
        Verdict.OVERTWISTED,
        "clasp criterion for (+1)-surgery",
        "Contact (+1)-surgery on a Legendrian knot whose front, for some orientation, "
        "contains the clasp configuration with an odd number of cusps between U and U' "
        "is overtwisted.",
    ),
    'stabilized-knot': Citation(
        Verdict.OVERTWISTED,
        "zig-zag overtwisted disk",
        "Contact (+1)-surgery on a Legendrian knot that is a stabilization is overtwisted.",
    ),
    'stabilized-link-component': Citation(
        Verdict.OVERTWISTED,
        "stabilized link component criterion",
        "A contact (+/-1)-surgery on a Legendrian link is overtwisted when the coefficient "
        "on one of its stabilized components is +1.",
    ),
    'negative-torus-knot': Citation(
        Verdict.OVERTWISTED,
        "negative torus knots under (+1)-surgery",
        "Contact (+1)-surgery on a Legendrian knot smoothly isotopic to a negative torus "
        "knot is overtwisted.",
    ),
    'lens-space-tb-bound': Citation(
        Verdict.TB_BOUND_VIOLATED,
        "tb bound from lens space surgeries",
        "If n-surgery on a knot K is a lens space for some n > 0, every Legendrian knot "
        "smoothly isotopic to K has Thurston-Bennequin invariant not greater than n.",
    ),
    'higher-tb-representative': Citation(
        Verdict.CHAT_VANISHES,
        "vanishing below a higher-tb representative",
        "If L1 and L2 are smoothly isotopic Legendrian knots with tb(L1) < tb(L2), contact "
        "(+1)-surgery along L1 has vanishing contact invariant.",
    ),
    'tb-at-most-minus-two': Citation(
        Verdict.CPLUS_VANISHES,
        "c+ vanishing for tb <= -2",
        "If tb(L) <= -2 then the contact invariant c+ of contact (+1)-surgery along L vanishes.",
    ),
    'stein-fillable': Citation(
        Verdict.TIGHT,
        "Legendrian surgery is Stein fillable",
        "Contact (-1)-surgery on a Legendrian link produces a Stein fillable, hence tight, "
        "contact structure; Stein fillable structures have nonvanishing contact invariant.",
    ),
    'slice-genus-maximal-tb': Citation(
        Verdict.TIGHT,
        "tightness at tb = 2g_s - 1",
        "Contact (+1)-surgery on a Legendrian knot with tb = 2g_s - 1 is tight.",
    ),
}


def citation_for(rule_id):
    """Citation record for a rule id, as printed by the CLI"""
    if rule_id not in CITATIONS:
        raise KeyError(f"unknown rule id {rule_id!r}")
    cited = CITATIONS[rule_id]
    return {'rule_id': rule_id, 'verdict': cited.verdict.value,
            'anchor': cited.anchor, 'statement': cited.statement}


def _parse_int(component, key, text):
    try:
        return int(text)
    except ValueError as e:
        raise FactError(f"component {component}: {key} must be an integer, got {text!r}") from e


@dataclass(frozen=True)
class ComponentFacts:
    """Smooth-type knowledge declared for one component"""
    smooth_type: Optional[str] = None
    slice_genus: Optional[int] = None
    l_space_slope: Optional[int] = None
    alt_representative: Optional[Tuple[int, int]] = None

    def __post_init__(self):
        if self.slice_genus is not None and self.slice_genus < 0:
            raise FactError(f"slice genus must be nonnegative, got {self.slice_genus}")
        if self.l_space_slope is not None and self.l_space_slope <= 0:
            raise FactError(f"lens space slope must be positive, got {self.l_space_slope}")

    def is_negative_torus_knot(self):
        if not self.smooth_type:
            return False
        tag = ' '.join(self.smooth_type.lower().replace('-', ' ').replace('_', ' ').split())
        return tag.startswith(NEGATIVE_TORUS_TAG)

    def to_dict(self):
        return {
            'smooth_type': self.smooth_type,
            'slice_genus': self.slice_genus,
            'l_space_slope': self.l_space_slope,
            'alt_representative': list(self.alt_representative) if self.alt_representative else None,
        }


def _fact_value(component, key, words):
    text = ' '.join(words)
    if key == 'smooth_type':
        return text
    if key in ('slice_genus', 'l_space_slope'):
        if len(words) != 1:
            raise FactError(f"component {component}: {key} takes one value")
        return _parse_int(component, key, text)
    pieces = [p.strip() for p in text.split(',')]
    if len(pieces) != 2:
        raise FactError(f"component {component}: alt_representative must be '<tb>,<rot>'")
    return tuple(_parse_int(component, key, p) for p in pieces)


@dataclass(frozen=True)
class FactStore:
    entries: Tuple[Tuple[int, ComponentFacts], ...] = ()

    @classmethod
    def from_directives(cls, directives):
        """Build from ('fact', component, key, value...) token tuples"""
        collected: Dict[int, Dict[str, object]] = {}
        for directive in directives:
            if len(directive) < 4 or directive[0] != 'fact':
                raise FactError(f"expected 'fact <component> <key> <value>', got {' '.join(directive)!r}")
            _, component, key, *words = directive
            if not component.isdigit():
                raise FactError(f"bad component index {component!r}")
            component = int(component)
            if key not in FACT_KEYS:
                raise FactError(f"unknown fact key {key!r}; expected one of {', '.join(FACT_KEYS)}")
            value = _fact_value(component, key, words)
            known = collected.setdefault(component, {})
            if key in known and known[key] != value:
                raise FactError(f"component {component}: conflicting values for {key}")
            known[key] = value
        return cls(tuple((c, ComponentFacts(**values)) for c, values in sorted(collected.items())))

    def get(self, component):
        return dict(self.entries).get(component, ComponentFacts())

    def components(self):
        return [c for c, _ in self.entries]

    def merged(self, other):
        combined = dict(self.entries)
        for component, facts in other.entries:
            mine = combined.get(component, ComponentFacts())
            values = {}
            for key in FACT_KEYS:
                a, b = getattr(mine, key), getattr(facts, key)
                if a is not None and b is not None and a != b:
                    raise FactError(f"component {component}: conflicting values for {key}")
                values[key] = a if a is not None else b
            combined[component] = ComponentFacts(**values)
        return FactStore(tuple(sorted(combined.items())))

    def to_dict(self):
        return {str(c): facts.to_dict() for c, facts in self.entries}


def parse_facts(text):
    """Read a facts file: 'fact <component> <key> <value>' lines, '#' comments"""
    directives = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split('#', 1)[0].strip()
        if not line:
            continue
        words = tuple(line.split())
        if words[0] != 'fact':
            raise FactError(f"line {number}: expected a 'fact' line")
        directives.append(words)
    return FactStore.from_directives(directives)


def facts_from_record(record):
    return FactStore.from_directives(record.directive_lines('fact'))


def load_facts(path):
    with open(path, 'r', encoding='utf-8') as f:
        return parse_facts(f.read())


@dataclass(frozen=True)
class Reason:
    rule_id: str
    component: Optional[int] = None
    witness: Dict = field(default_factory=dict)

    @property
    def verdict(self):
        return CITATIONS[self.rule_id].verdict

    @property
    def anchor(self):
        return CITATIONS[self.rule_id].anchor

    @property
    def citation(self):
        return CITATIONS[self.rule_id].statement

    def to_dict(self):
        return {
            'rule_id': self.rule_id,
            'verdict': self.verdict.value,
            'anchor': self.anchor,
            'citation': self.citation,
            'component': self.component,
            'witness': self.witness,
        }


@dataclass(frozen=True)
class TbBoundCheck:
    holds: bool
    slope: int
    tb_observed: int
    trace: Optional[Dict] = None

    def to_dict(self):
        return {'holds': self.holds, 'slope': self.slope,
                'tb_observed': self.tb_observed, 'trace': self.trace}


@dataclass(frozen=True)
class VerdictReport:
    verdict: Verdict
    reasons: Tuple[Reason, ...] = ()
    contradiction: bool = False
    diagram: Dict = field(default_factory=dict)

    def fired(self, verdict):
        return [r for r in self.reasons if r.verdict == verdict]

    def rule_ids(self):
        return [r.rule_id for r in self.reasons]

    def to_dict(self):
        return {
            'verdict': self.verdict.value,
            'contradiction': self.contradiction,
            'reasons': [r.to_dict() for r in self.reasons],
            'diagram': self.diagram,
        }


def check_tb_bound(facts, tb_observed, component=0):
    """tb against the lens space slope; a violation carries the exact-triangle rank trace"""
    if isinstance(facts, FactStore):
        facts = facts.get(component)
    n = facts.l_space_slope
    if n is None:
        raise FactError(f"component {component} has no declared lens space slope")
    if tb_observed <= n:
        return TbBoundCheck(True, n, tb_observed)

    # HF-hat(S^3) -> HF-hat(S^3_{n+1}) -> HF-hat(S^3_n): L-space ranks are |H1|
    triangle = TriangleRanks(1, n + 1, n)
    images = image_ranks(triangle)
    trace = {
        'h1_orders': [n, n + 1],
        'triangle': [triangle.a, triangle.b, triangle.c],
        'images': list(images.as_tuple()),
        'first_map_injective': images.first_injective,
        'third_map_zero': images.third_zero,
    }
    logger.debug("tb %d exceeds lens space slope %d: images %s", tb_observed, n, images.as_tuple())
    return TbBoundCheck(False, n, tb_observed, trace)


def _diagram_echo(d, summary):
    return {
        'labels': list(d.labels),
        'contact_coefficients': list(d.coefficients),
        'tb': summary['tb'],
        'rot': summary['rot'],
        'h1': summary['h1'],
        'hopf_invariant': summary['hopf_invariant'],
    }


def _overtwisted_reasons(d, facts, single_plus_knot, template):
    reasons = []
    zigzags = find_zigzags(d.front.word)
    for c in range(d.count):
        if d.coefficients[c] != 1:
            continue
        clasp = has_fig1_config(d.front, c, template)
        if clasp is not None:
            reasons.append(Reason('clasp-configuration', c, clasp.to_dict()))
        mine = [z for z in zigzags if z.component == c]
        if mine:
            rule = 'stabilized-knot' if d.count == 1 else 'stabilized-link-component'
            reasons.append(Reason(rule, c, mine[0].to_dict()))
    if single_plus_knot and facts.get(0).is_negative_torus_knot():
        reasons.append(Reason('negative-torus-knot', 0, {'smooth_type': facts.get(0).smooth_type}))
    return reasons


def evaluate(d, facts=None, template=None):
    """Fire every applicable rule; the verdict is the highest-precedence one that fired"""
    facts = facts or FactStore()
    template = template or default_fig1_template()
    for component in facts.components():
        if component >= d.count:
            raise FactError(f"fact for component {component}, diagram has {d.count}")

    summary = surgery_summary(d)
    tbs = d.tb_vector()
    single_plus_knot = d.count == 1 and d.coefficients[0] == 1
    reasons = _overtwisted_reasons(d, facts, single_plus_knot, template)

    for c in range(d.count):
        if facts.get(c).l_space_slope is None:
            continue
        check = check_tb_bound(facts, tbs[c], c)
        if not check.holds:
            reasons.append(Reason('lens-space-tb-bound', c, check.to_dict()))

    if single_plus_knot:
        known = facts.get(0)
        tb = tbs[0]
        if known.alt_representative is not None and known.alt_representative[0] > tb:
            alt_tb, alt_rot = known.alt_representative
            reasons.append(Reason('higher-tb-representative', 0,
                                  {'tb': tb, 'alt_tb': alt_tb, 'alt_rot': alt_rot}))
        if tb <= -2:
            reasons.append(Reason('tb-at-most-minus-two', 0, {'tb': tb}))
        if known.slice_genus is not None and tb == 2 * known.slice_genus - 1:
            reasons.append(Reason('slice-genus-maximal-tb', 0,
                                  {'tb': tb, 'slice_genus': known.slice_genus}))

    if all(value == -1 for value in d.coefficients):
        reasons.append(Reason('stein-fillable', None, {'components': d.count}))

    reasons.sort(key=lambda r: (PRECEDENCE.index(r.verdict), r.rule_id,
                                -1 if r.component is None else r.component))
    verdict = reasons[0].verdict if reasons else Verdict.UNKNOWN
    tight = any(r.verdict == Verdict.TIGHT for r in reasons)
    contradiction = tight and any(r.verdict != Verdict.TIGHT for r in reasons)
    if contradiction:
        logger.warning("Contradictory rules fired: %s", ', '.join(r.rule_id for r in reasons))

    return VerdictReport(verdict, tuple(reasons), contradiction, _diagram_echo(d, summary))
