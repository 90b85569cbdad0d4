#!/usr/bin/env python3
"""
Front Pattern Detectors
Syntactic zig-zag and clasp-configuration searches on a single front word
"""

import json
import logging
import os
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import List, Optional, Tuple

from front_core import RIGHT, EVENT_KINDS, validate

logger = logging.getLogger(__name__)

DEFAULT_TEMPLATE_PATH = os.path.join(os.path.dirname(os.path.abspath(__file__)),
                                     'config', 'fig1_template.json')


class TemplateError(ValueError):
    pass


class PatternKind(str, Enum):
    ZIGZAG = 'ZigZag'
    FIG1_CONFIG = 'Fig1Config'
    STABILIZED_COMPONENT = 'StabilizedComponent'


@dataclass(frozen=True)
class PatternWitness:
    kind: PatternKind
    event_indices: Tuple[int, ...]
    component: int
    parity_data: Optional[int] = None
    strands: Tuple[int, ...] = ()

    def to_dict(self):
        return {
            'kind': self.kind.value,
            'event_indices': list(self.event_indices),
            'component': self.component,
            'parity_data': self.parity_data,
            'strands': list(self.strands),
        }


@dataclass(frozen=True)
class TemplateEvent:
    kind: str
    offset: int


@dataclass(frozen=True)
class Fig1Template:
    """Event-subword pattern with two marked strand slots"""
    name: str
    events: Tuple[TemplateEvent, ...]
    marked_u: Tuple[int, str]
    marked_u_prime: Tuple[int, str]
    description: str = ''


def _marked_slot(data, key, event_count):
    slot = data.get(key)
    if not isinstance(slot, dict):
        raise TemplateError(f"template needs a '{key}' slot")
    event, strand = slot.get('event'), slot.get('strand')
    if not isinstance(event, int) or not 0 <= event < event_count:
        raise TemplateError(f"slot {key} points at a missing template event")
    if strand not in ('upper', 'lower'):
        raise TemplateError(f"slot {key} strand must be 'upper' or 'lower'")
    return event, strand


def template_from_dict(data):
    raw_events = data.get('events')
    if not raw_events:
        raise TemplateError("template has no events")
    events = []
    for entry in raw_events:
        kind, offset = entry.get('kind'), entry.get('offset', 0)
        if kind not in EVENT_KINDS or not isinstance(offset, int):
            raise TemplateError(f"bad template event {entry!r}")
        events.append(TemplateEvent(kind, offset))
    if events[0].offset != 0:
        raise TemplateError("the first template event must have offset 0")
    marked = data.get('marked', {})
    return Fig1Template(
        name=data.get('name', 'fig1'),
        events=tuple(events),
        marked_u=_marked_slot(marked, 'U', len(events)),
        marked_u_prime=_marked_slot(marked, 'U_prime', len(events)),
        description=data.get('description', ''),
    )


def load_fig1_template(path=None):
    """Load the clasp template from JSON"""
    path = path or DEFAULT_TEMPLATE_PATH
    try:
        with open(path, 'r', encoding='utf-8') as f:
            data = json.load(f)
    except (OSError, json.JSONDecodeError) as e:
        raise TemplateError(f"cannot read template {path}: {e}") from e
    return template_from_dict(data)


@lru_cache(maxsize=1)
def default_fig1_template():
    """The bundled clasp template, read once per process"""
    return load_fig1_template(DEFAULT_TEMPLATE_PATH)


def _crossings_on(components, w, strand, start, end):
    return [k for k in range(start + 1, end)
            if w.events[k].kind == 'X' and strand in components.event_strands[k]]


def find_zigzags(w):
    """Every Lcusp/Rcusp pair bounding a zig-zag.

    The middle strand is the lower strand of the Lcusp and the upper of the
    Rcusp (or the reverse) and no crossing between the two cusps involves it.
    """
    components = validate(w)
    lefts = [i for i, e in enumerate(w.events) if e.kind == 'L']
    rights = [j for j, e in enumerate(w.events) if e.kind == 'R']
    witnesses: List[PatternWitness] = []

    for i in lefts:
        u, l = components.event_strands[i]
        for j in rights:
            if j <= i:
                continue
            top, bottom = components.event_strands[j]
            if l == top:
                middle, outer = l, (u, bottom)
            elif u == bottom:
                middle, outer = u, (l, top)
            else:
                continue
            if _crossings_on(components, w, middle, i, j):
                continue
            witnesses.append(PatternWitness(
                kind=PatternKind.ZIGZAG,
                event_indices=(i, j),
                component=components.strand_component[middle],
                strands=(middle,) + outer,
            ))

    logger.debug("Found %d zig-zags in a %d-event word", len(witnesses), len(w))
    return witnesses


def stabilized_components(w):
    return {witness.component for witness in find_zigzags(w)}


def stabilized_component_witnesses(w):
    """One summary witness per stabilized component"""
    grouped = {}
    for witness in find_zigzags(w):
        grouped.setdefault(witness.component, []).extend(witness.event_indices)
    return [PatternWitness(PatternKind.STABILIZED_COMPONENT, tuple(sorted(set(indices))), c)
            for c, indices in sorted(grouped.items())]


def arc_cusp_events(f, start, end):
    """Cusp events met while travelling from strand ``start`` to ``end``"""
    components = f.components
    if components.strand_component[start] != components.strand_component[end]:
        raise ValueError("strands lie on different components")
    passed = []
    strand = start
    for _ in range(len(components.strand_component) + 1):
        if strand == end:
            return passed
        if f.directions[strand] == RIGHT:
            passed.append(components.strand_death[strand])
            strand = components.r_partner[strand]
        else:
            passed.append(components.strand_birth[strand])
            strand = components.l_partner[strand]
    raise RuntimeError("arc walk did not close")


def _strand_in_slot(components, matched, slot):
    event, role = slot
    upper, lower = components.event_strands[matched[event]]
    return upper if role == 'upper' else lower


def _matches(w, start, template):
    if start + len(template.events) > len(w.events):
        return False
    base = w.events[start].position
    for offset, expected in enumerate(template.events):
        event = w.events[start + offset]
        if event.kind != expected.kind or event.position - base != expected.offset:
            return False
    return True


def has_fig1_config(f, component, template=None):
    """First clasp-template match on the component with an odd cusp count between U and U'"""
    template = template or default_fig1_template()
    components = f.components
    components.check(component)
    events = f.word.events

    for start in range(len(events)):
        if not _matches(f.word, start, template):
            continue
        matched = tuple(range(start, start + len(template.events)))
        u = _strand_in_slot(components, matched, template.marked_u)
        u_prime = _strand_in_slot(components, matched, template.marked_u_prime)
        if u == u_prime:
            continue
        if {components.strand_component[u], components.strand_component[u_prime]} != {component}:
            continue
        cusps = len(arc_cusp_events(f, u, u_prime))
        if cusps % 2 == 1:
            logger.debug("Template %s matched at event %d with %d cusps", template.name, start, cusps)
            return PatternWitness(
                kind=PatternKind.FIG1_CONFIG,
                event_indices=matched,
                component=component,
                parity_data=cusps,
                strands=(u, u_prime),
            )
    return None
