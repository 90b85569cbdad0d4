#!/usr/bin/env python3
"""
Legendrian Front Core
Event-word fronts: parsing, strand tracing, orientation and classical invariants
"""

import logging
from collections.abc import Mapping
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

logger = logging.getLogger(__name__)

RIGHT = 1
LEFT = -1
DIRECTION_NAMES = {'right': RIGHT, 'left': LEFT}
EVENT_KINDS = ('L', 'R', 'X')
TOKENS_PER_LINE = 16
DIRECTIVES = ('surgery', 'fact')


class FrontError(ValueError):
    """Base class for every malformed-front failure"""


class FrontSyntaxError(FrontError):
    def __init__(self, message, line):
        super().__init__(f"line {line}: {message}")
        self.line = line


class UnderflowAtEvent(FrontError):
    def __init__(self, index, event, strand_count):
        super().__init__(
            f"event {index} ({event.token}) is out of range with {strand_count} strands"
        )
        self.index = index


class OpenStrands(FrontError):
    def __init__(self, count):
        super().__init__(f"{count} strands are still open at the end of the word")
        self.count = count


class OrientationError(FrontError):
    pass


class UnknownComponent(FrontError):
    def __init__(self, component, count):
        super().__init__(f"component {component} does not exist (front has {count})")
        self.component = component


@dataclass(frozen=True)
class Event:
    kind: str
    position: int

    def __post_init__(self):
        if self.kind not in EVENT_KINDS:
            raise FrontError(f"unknown event kind {self.kind!r}")
        if self.position < 1:
            raise FrontError(f"event positions start at 1, got {self.position}")

    @property
    def token(self):
        return f"{self.kind}{self.position}"

    @classmethod
    def from_token(cls, token):
        kind, digits = token[:1], token[1:]
        if kind not in EVENT_KINDS or not (digits.isascii() and digits.isdigit()):
            raise FrontError(f"bad event token {token!r}")
        return cls(kind, int(digits))


@dataclass(frozen=True)
class FrontWord:
    """Left-to-right column scan of a front"""
    events: Tuple[Event, ...] = ()
    name: str = ''

    @classmethod
    def from_tokens(cls, tokens, name=''):
        if isinstance(tokens, str):
            tokens = tokens.split()
        return cls(tuple(Event.from_token(token) for token in tokens), name)

    def tokens(self):
        return [event.token for event in self.events]

    def with_events(self, events):
        return FrontWord(tuple(events), self.name)

    def __len__(self):
        return len(self.events)

    def __str__(self):
        return ' '.join(self.tokens())


@dataclass(frozen=True)
class ComponentMap:
    """Result of strand tracing.

    Strands are numbered in birth order. ``event_strands[i]`` is the
    (upper, lower) pair event i acts on: the new pair for an Lcusp, the
    pair before the event for a crossing or an Rcusp.
    """
    count: int
    strand_component: Tuple[int, ...]
    component_events: Tuple[Tuple[int, ...], ...]
    event_strands: Tuple[Tuple[int, int], ...]
    strand_birth: Tuple[int, ...]
    strand_death: Tuple[int, ...]
    l_partner: Tuple[int, ...]
    r_partner: Tuple[int, ...]
    first_strands: Tuple[int, ...]

    def first_strand(self, component):
        """Upper strand of the component's earliest Lcusp"""
        return self.first_strands[component]

    def strands_of(self, component):
        return [s for s, c in enumerate(self.strand_component) if c == component]

    def check(self, component):
        if not isinstance(component, int) or not 0 <= component < self.count:
            raise UnknownComponent(component, self.count)


@dataclass(frozen=True)
class OrientedFront:
    word: FrontWord
    components: ComponentMap
    directions: Tuple[int, ...]

    def seeds(self):
        return {c: self.directions[self.components.first_strand(c)]
                for c in range(self.components.count)}


@dataclass(frozen=True)
class FrontRecord:
    """Parsed front file: the word plus every directive line"""
    name: str
    word: FrontWord
    seeds: Tuple[Tuple[int, int], ...] = ()
    directives: Tuple[Tuple[str, ...], ...] = field(default_factory=tuple)

    def directive_lines(self, keyword):
        return [d for d in self.directives if d[0] == keyword]


def _find(parent, x):
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def validate(w):
    """Trace strands through the word and partition them into components"""
    column: List[int] = []
    event_strands = []
    births: List[int] = []
    deaths: Dict[int, int] = {}
    l_partner: List[int] = []
    r_partner: Dict[int, int] = {}

    for index, event in enumerate(w.events):
        p = event.position
        width = len(column)
        if event.kind == 'L':
            if not 1 <= p <= width + 1:
                raise UnderflowAtEvent(index, event, width)
            upper, lower = len(births), len(births) + 1
            births += [index, index]
            l_partner += [lower, upper]
            column[p - 1:p - 1] = [upper, lower]
        else:
            if not 1 <= p <= width - 1:
                raise UnderflowAtEvent(index, event, width)
            upper, lower = column[p - 1], column[p]
            if event.kind == 'R':
                del column[p - 1:p + 1]
                deaths[upper] = deaths[lower] = index
                r_partner[upper], r_partner[lower] = lower, upper
            else:
                column[p - 1], column[p] = lower, upper
        event_strands.append((upper, lower))

    if column:
        raise OpenStrands(len(column))

    strand_total = len(births)
    parent = list(range(strand_total))
    for s in range(strand_total):
        for partner in (l_partner[s], r_partner[s]):
            a, b = _find(parent, s), _find(parent, partner)
            if a != b:
                parent[a] = b

    root_to_component: Dict[int, int] = {}
    first_strands = []
    for index, event in enumerate(w.events):
        if event.kind == 'L':
            upper = event_strands[index][0]
            root = _find(parent, upper)
            if root not in root_to_component:
                root_to_component[root] = len(first_strands)
                first_strands.append(upper)

    strand_component = tuple(root_to_component[_find(parent, s)] for s in range(strand_total))
    per_component: List[List[int]] = [[] for _ in first_strands]
    for index, (upper, lower) in enumerate(event_strands):
        touched = {strand_component[upper], strand_component[lower]}
        for component in sorted(touched):
            per_component[component].append(index)

    logger.debug("Traced %d strands into %d components", strand_total, len(first_strands))
    return ComponentMap(
        count=len(first_strands),
        strand_component=strand_component,
        component_events=tuple(tuple(events) for events in per_component),
        event_strands=tuple(event_strands),
        strand_birth=tuple(births),
        strand_death=tuple(deaths[s] for s in range(strand_total)),
        l_partner=tuple(l_partner),
        r_partner=tuple(r_partner[s] for s in range(strand_total)),
        first_strands=tuple(first_strands),
    )


def _direction_value(direction):
    if isinstance(direction, str):
        direction = DIRECTION_NAMES.get(direction.lower(), direction)
    if direction not in (RIGHT, LEFT):
        raise OrientationError(f"direction must be 'left' or 'right', got {direction!r}")
    return direction


def _normalize_seeds(seeds, components):
    chosen: Dict[int, int] = {}
    if seeds is None:
        return chosen
    pairs = seeds.items() if isinstance(seeds, Mapping) else seeds
    for component, direction in pairs:
        components.check(component)
        if component in chosen:
            raise OrientationError(f"two seeds given for component {component}")
        chosen[component] = _direction_value(direction)
    return chosen


def orient(w, seeds=None):
    """Propagate one direction per component along its strands.

    ``seeds`` maps component ids to 'right'/'left' (or +1/-1) and applies to
    the component's first-born strand; a list of pairs is also accepted.
    Unseeded components point right on that strand.
    """
    components = validate(w)
    chosen = _normalize_seeds(seeds, components)
    directions: List[Optional[int]] = [None] * len(components.strand_component)

    for component in range(components.count):
        start = components.first_strand(component)
        directions[start] = chosen.get(component, RIGHT)
        stack = [start]
        while stack:
            strand = stack.pop()
            for partner in (components.l_partner[strand], components.r_partner[strand]):
                if directions[partner] is None:
                    directions[partner] = -directions[strand]
                    stack.append(partner)

    return OrientedFront(w, components, tuple(directions))


def reverse(f, component):
    """Same front with one component's orientation flipped"""
    f.components.check(component)
    flipped = tuple(
        -d if f.components.strand_component[s] == component else d
        for s, d in enumerate(f.directions)
    )
    return OrientedFront(f.word, f.components, flipped)


def crossing_sign(f, index):
    # Same horizontal direction is a positive crossing in a front.
    upper, lower = f.components.event_strands[index]
    return 1 if f.directions[upper] == f.directions[lower] else -1


def writhe(f, restrict=None):
    """Signed crossing count, optionally only between two named components"""
    wanted = None
    if restrict is not None:
        a, b = restrict
        f.components.check(a)
        f.components.check(b)
        wanted = tuple(sorted((a, b)))

    total = 0
    for index, event in enumerate(f.word.events):
        if event.kind != 'X':
            continue
        if wanted is not None:
            upper, lower = f.components.event_strands[index]
            pair = tuple(sorted((f.components.strand_component[upper],
                                 f.components.strand_component[lower])))
            if pair != wanted:
                continue
        total += crossing_sign(f, index)
    return total


def linking_number(f, a, b):
    if a == b:
        raise FrontError("linking number needs two distinct components")
    return writhe(f, (a, b)) // 2


def cusp_counts(f, component):
    """(up, down) cusps met when travelling along the component"""
    f.components.check(component)
    up = down = 0
    for index in f.components.component_events[component]:
        kind = f.word.events[index].kind
        if kind == 'X':
            continue
        upper, lower = f.components.event_strands[index]
        if kind == 'R':
            descending = f.directions[upper] == RIGHT
        else:
            descending = f.directions[lower] != LEFT
        if descending:
            down += 1
        else:
            up += 1
    return up, down


def tb(f, component):
    up, down = cusp_counts(f, component)
    return writhe(f, (component, component)) - (up + down) // 2


def rot(f, component):
    up, down = cusp_counts(f, component)
    return (down - up) // 2


def _sign_value(sign):
    if sign in ('+', '+1'):
        return 1
    if sign in ('-', '-1'):
        return -1
    if sign in (1, -1):
        return sign
    raise FrontError(f"stabilization sign must be +1 or -1, got {sign!r}")


def stabilize(w, component, sign, seeds=None):
    """Insert a zig-zag right after the component's first Lcusp.

    tb drops by one and rot moves by ``sign`` measured in the orientation
    given by ``seeds``.
    """
    sign = _sign_value(sign)
    f = orient(w, seeds)
    f.components.check(component)
    strand = f.components.first_strand(component)
    index = f.components.strand_birth[strand]
    p = w.events[index].position

    if (sign > 0) == (f.directions[strand] == RIGHT):
        inserted = (Event('L', p + 1), Event('R', p))
    else:
        inserted = (Event('L', p), Event('R', p + 1))

    logger.debug("Stabilizing component %d at event %d with sign %+d", component, index, sign)
    return w.with_events(w.events[:index + 1] + inserted + w.events[index + 1:])


def pushoff(w, component):
    """Add a parallel copy of a component just above it.

    The copy becomes component ``component + 1``.
    """
    components = validate(w)
    components.check(component)

    def on(strand):
        return components.strand_component[strand] == component

    column: List[int] = []
    out: List[Event] = []
    for index, event in enumerate(w.events):
        p = event.position
        upper, lower = components.event_strands[index]
        q = 1 + sum(2 if on(s) else 1 for s in column[:p - 1])
        if event.kind == 'L':
            if on(upper):
                out += [Event('L', q), Event('L', q), Event('X', q + 1)]
            else:
                out.append(Event('L', q))
            column[p - 1:p - 1] = [upper, lower]
        elif event.kind == 'R':
            if on(upper):
                out += [Event('X', q + 1), Event('R', q), Event('R', q)]
            else:
                out.append(Event('R', q))
            del column[p - 1:p + 1]
        else:
            top, bottom = on(upper), on(lower)
            if top and bottom:
                out += [Event('X', q + 1), Event('X', q), Event('X', q + 2), Event('X', q + 1)]
            elif bottom:
                out += [Event('X', q), Event('X', q + 1)]
            elif top:
                out += [Event('X', q + 1), Event('X', q)]
            else:
                out.append(Event('X', q))
            column[p - 1], column[p] = lower, upper

    return w.with_events(out)


def delete_component(w, component):
    """Remove every event of one component and renumber positions"""
    components = validate(w)
    components.check(component)

    def on(strand):
        return components.strand_component[strand] == component

    column: List[int] = []
    out: List[Event] = []
    for index, event in enumerate(w.events):
        p = event.position
        upper, lower = components.event_strands[index]
        if not (on(upper) or on(lower)):
            q = 1 + sum(1 for s in column[:p - 1] if not on(s))
            out.append(Event(event.kind, q))
        if event.kind == 'L':
            column[p - 1:p - 1] = [upper, lower]
        elif event.kind == 'R':
            del column[p - 1:p + 1]
        else:
            column[p - 1], column[p] = lower, upper
    return w.with_events(out)


def disjoint_union(first, second):
    """Second front placed to the right of the first"""
    name = '+'.join(n for n in (first.name, second.name) if n)
    return FrontWord(first.events + second.events, name)


# Built-in fronts

def standard_unknot():
    return FrontWord.from_tokens('L1 R1', 'unknot')


def right_trefoil():
    """Max-tb right-handed trefoil: tb 1, rot 0"""
    return FrontWord.from_tokens('L1 L3 X2 X2 X2 R3 R1', 'right-trefoil')


def left_trefoil():
    """Max-tb left-handed trefoil, the negative torus knot T(2,-3): tb -6"""
    return FrontWord.from_tokens('L1 L1 X2 L1 X2 R3 X2 R1 R1', 'left-trefoil')


def twist_box(m, p=2):
    """m crossings twisting the strands at p, p+1, separated by cusp pairs"""
    if m < 1:
        raise FrontError("a twist box needs at least one crossing")
    births = [Event('L', p + 2 * j + 1) for j in range(m - 1)]
    crossings = [Event('X', p + 2 * j) for j in range(m)]
    deaths = [Event('R', p + 1)] * (m - 1)
    return births + crossings + deaths


def twist_knot_front(n, i):
    """Twist knot front with i and n-i twists around one clasp crossing.

    n must be even; i odd in 1..n-1 (even i closes a box into a separate loop).
    """
    if n < 2 or n % 2:
        raise FrontError(f"twist fronts need an even n >= 2, got {n}")
    if not 1 <= i <= n - 1 or i % 2 == 0:
        raise FrontError(f"twist split i must be odd and between 1 and {n - 1}, got {i}")
    events = ([Event('L', 1), Event('L', 3)] + twist_box(i) + [Event('X', 2)]
              + twist_box(n - i) + [Event('R', 3), Event('R', 1)])
    w = FrontWord(tuple(events), f"twist-{n}-{i}")
    if validate(w).count != 1:
        raise FrontError(f"twist front ({n}, {i}) is not a knot")
    return w


# File format

def _strip_comment(line):
    return line.split('#', 1)[0].strip()


def parse_front_file(text):
    """Parse the line-oriented front format into a FrontRecord"""
    name = None
    tokens: List[str] = []
    seeds: List[Tuple[int, int]] = []
    directives: List[Tuple[str, ...]] = []
    ended = False
    last_line = 0

    for number, raw in enumerate(text.splitlines(), start=1):
        last_line = number
        line = _strip_comment(raw)
        if not line:
            continue
        if ended:
            raise FrontSyntaxError("content after 'end'", number)
        words = line.split()
        keyword = words[0]

        if name is None:
            if keyword != 'front' or len(words) < 2:
                raise FrontSyntaxError("expected 'front <name>' header", number)
            name = ' '.join(words[1:])
        elif keyword == 'front':
            raise FrontSyntaxError("duplicate 'front' header", number)
        elif keyword == 'end':
            if len(words) != 1:
                raise FrontSyntaxError("'end' takes no arguments", number)
            ended = True
        elif keyword == 'orient':
            if len(words) != 3 or not words[1].isdigit() or words[2] not in DIRECTION_NAMES:
                raise FrontSyntaxError("expected 'orient <component> <left|right>'", number)
            seeds.append((int(words[1]), DIRECTION_NAMES[words[2]]))
        elif keyword in DIRECTIVES:
            if len(words) < 3:
                raise FrontSyntaxError(f"'{keyword}' needs a component and a value", number)
            directives.append(tuple(words))
        else:
            for token in words:
                try:
                    Event.from_token(token)
                except FrontError as e:
                    raise FrontSyntaxError(str(e), number) from e
            tokens += words

    if name is None:
        raise FrontSyntaxError("missing 'front <name>' header", last_line + 1)
    if not ended:
        raise FrontSyntaxError("missing 'end'", last_line + 1)

    word = FrontWord.from_tokens(tokens, name)
    validate(word)
    return FrontRecord(name, word, tuple(seeds), tuple(directives))


def parse_front(text):
    return parse_front_file(text).word


def print_front_file(record):
    """Normalized text: header, event lines, orient lines, directives, end"""
    lines = [f"front {record.name}"]
    tokens = record.word.tokens()
    for start in range(0, len(tokens), TOKENS_PER_LINE):
        lines.append(' '.join(tokens[start:start + TOKENS_PER_LINE]))
    for component, direction in record.seeds:
        lines.append(f"orient {component} {'right' if direction == RIGHT else 'left'}")
    for directive in record.directives:
        lines.append(' '.join(directive))
    lines.append('end')
    return '\n'.join(lines) + '\n'


def load_front_file(path):
    with open(path, 'r', encoding='utf-8') as f:
        return parse_front_file(f.read())


def orient_record(record):
    return orient(record.word, record.seeds)
