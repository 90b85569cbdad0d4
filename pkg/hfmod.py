#!/usr/bin/env python3
"""
Floer Module Bookkeeping
Towers, graded groups, duality, exact-triangle rank arithmetic and L-space logic
"""

import logging
import math
import re
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional, Tuple

logger = logging.getLogger(__name__)

# rank of the hat group of 0-surgery on the trefoil
ZERO_SURGERY_TREFOIL_RANK = 2
# rank of the hat group of S^1 x S^2
S1_TIMES_S2_RANK = 2

_SUMMAND = re.compile(
    r'^(?:T\((?P<tower>[^()]*)\)'
    r'|Z(?:\^(?P<rank>\d+))?\((?P<free>[^()]*)\)'
    r'|Z/(?P<modulus>\d+)\((?P<torsion>[^()]*)\))$'
)
_PLUS_OUTSIDE_PARENS = re.compile(r'\+(?![^(]*\))')


class ModuleNotationError(ValueError):
    pass


class InconsistentTriangle(ValueError):
    pass


class Shape(str, Enum):
    ONE_TOWER = 'one tower'
    TWO_TOWERS = 'two towers'
    INDETERMINATE = 'tower(s) + nontrivial finite part possible'


@dataclass(frozen=True)
class FiniteGroup:
    rank: int = 0
    torsion: Tuple[int, ...] = ()

    def __post_init__(self):
        if self.rank < 0 or any(m < 2 for m in self.torsion):
            raise ModuleNotationError(f"bad group data rank={self.rank} torsion={self.torsion}")

    def is_zero(self):
        return self.rank == 0 and not self.torsion

    def __add__(self, other):
        return FiniteGroup(self.rank + other.rank, tuple(sorted(self.torsion + other.torsion)))


def _degree(value):
    return None if value is None else Fraction(value)


@dataclass(frozen=True)
class GradedModule:
    """Towers by bottom degree (None is an unknown degree) plus a finite graded group"""
    towers: Tuple[Optional[Fraction], ...] = ()
    finite_part: Tuple[Tuple[Fraction, FiniteGroup], ...] = ()

    def __post_init__(self):
        towers = [_degree(a) for a in self.towers]
        known = sorted(a for a in towers if a is not None)
        merged = {}
        for degree, group in self.finite_part:
            degree = _degree(degree)
            merged[degree] = merged.get(degree, FiniteGroup()) + group
        object.__setattr__(self, 'towers', tuple(known) + (None,) * (len(towers) - len(known)))
        object.__setattr__(self, 'finite_part', tuple(
            (d, g) for d, g in sorted(merged.items()) if not g.is_zero()
        ))

    @classmethod
    def build(cls, towers=(), finite=()):
        return cls(tuple(towers), tuple(finite))

    def finite_at(self, degree):
        return dict(self.finite_part).get(Fraction(degree), FiniteGroup())

    def __str__(self):
        return format_module(self)


@dataclass(frozen=True)
class TriangleRanks:
    a: int
    b: int
    c: int


@dataclass(frozen=True)
class TriangleImages:
    """Image ranks of A->B, B->C, C->A"""
    x: int
    y: int
    z: int
    first_zero: bool
    second_zero: bool
    third_zero: bool
    first_injective: bool
    second_injective: bool
    third_injective: bool

    def as_tuple(self):
        return self.x, self.y, self.z


def dual(m):
    """Orientation reversal: towers a -> -a, finite degree d -> -d-1"""
    return GradedModule(
        tuple(None if a is None else -a for a in m.towers),
        tuple((-d - 1, g) for d, g in m.finite_part),
    )


def _format_degree(degree):
    return '?' if degree is None else str(degree)


def format_module(m):
    parts = [f"T({_format_degree(a)})" for a in m.towers]
    for degree, group in m.finite_part:
        if group.rank == 1:
            parts.append(f"Z({degree})")
        elif group.rank > 1:
            parts.append(f"Z^{group.rank}({degree})")
        parts += [f"Z/{modulus}({degree})" for modulus in group.torsion]
    return ' + '.join(parts) if parts else '0'


def _parse_degree(text, allow_unknown=False):
    text = text.strip()
    if allow_unknown and text == '?':
        return None
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as e:
        raise ModuleNotationError(f"bad degree {text!r}") from e


def parse_module(text):
    """Read 'T(a) + Z^r(d) + Z/m(d)' notation; '0' is the zero module"""
    text = text.strip()
    if text == '0':
        return GradedModule()
    if not text:
        raise ModuleNotationError("empty module text")
    towers, finite = [], []
    for piece in _PLUS_OUTSIDE_PARENS.split(text):
        piece = piece.strip()
        match = _SUMMAND.match(piece.replace(' ', ''))
        if not match:
            raise ModuleNotationError(f"cannot read summand {piece!r}")
        if match.group('tower') is not None:
            towers.append(_parse_degree(match.group('tower'), allow_unknown=True))
        elif match.group('free') is not None:
            rank = int(match.group('rank') or 1)
            finite.append((_parse_degree(match.group('free')), FiniteGroup(rank)))
        else:
            modulus = int(match.group('modulus'))
            if modulus < 2:
                raise ModuleNotationError(f"torsion summand Z/{modulus} is trivial")
            finite.append((_parse_degree(match.group('torsion')), FiniteGroup(0, (modulus,))))
    return GradedModule.build(towers, finite)


def tower_rank_in_degree(m, degree):
    """Number of towers with a generator in this degree"""
    degree = Fraction(degree)
    count = 0
    for bottom in m.towers:
        if bottom is None:
            logger.debug("Unknown tower skipped in degree count")
            continue
        gap = degree - bottom
        if gap >= 0 and gap.denominator == 1 and gap.numerator % 2 == 0:
            count += 1
    return count


def rank_in_degree(m, degree):
    return tower_rank_in_degree(m, degree) + m.finite_at(degree).rank


def image_ranks(t):
    """Image ranks forced by exactness of A -> B -> C -> A"""
    a, b, c = t.a, t.b, t.c
    if min(a, b, c) < 0:
        raise InconsistentTriangle(f"negative rank in {t}")
    if (a + b + c) % 2:
        raise InconsistentTriangle(f"rank sum of {t} is odd")
    x, y, z = (a + b - c) // 2, (b + c - a) // 2, (c + a - b) // 2
    if min(x, y, z) < 0:
        raise InconsistentTriangle(f"{t} violates the triangle inequalities")
    return TriangleImages(
        x, y, z,
        first_zero=x == 0, second_zero=y == 0, third_zero=z == 0,
        first_injective=x == a, second_injective=y == b, third_injective=z == c,
    )


def complete_triangle(a=None, b=None, c=None, zero='first'):
    """Fill in the one unknown corner given which map vanishes"""
    known = {'a': a, 'b': b, 'c': c}
    missing = [k for k, v in known.items() if v is None]
    if len(missing) != 1:
        raise InconsistentTriangle("exactly one corner must be unknown")
    # first: a + b = c, second: b + c = a, third: c + a = b
    total_corner = {'first': 'c', 'second': 'a', 'third': 'b'}.get(zero)
    if total_corner is None:
        raise InconsistentTriangle(f"unknown map {zero!r}")
    unknown = missing[0]
    if unknown == total_corner:
        value = sum(v for k, v in known.items() if k != unknown)
    else:
        other = next(k for k in known if k not in (unknown, total_corner))
        value = known[total_corner] - known[other]
    known[unknown] = value
    t = TriangleRanks(known['a'], known['b'], known['c'])
    images = image_ranks(t)
    if not getattr(images, f"{zero}_zero"):
        raise InconsistentTriangle(f"{t} does not make the {zero} map vanish")
    return t


def adjunction_vanishes(genus, self_intersection):
    """A cobordism containing this surface induces the zero map"""
    if genus < 0:
        raise ValueError("genus must be nonnegative")
    return self_intersection > 2 * genus - 2


def is_l_space(hf_rank, h1_order):
    if h1_order is None or h1_order == math.inf:
        return False
    return hf_rank == h1_order


def bgr_shape(hf_rank_per_spinc, b1):
    if b1 not in (0, 1):
        raise ValueError("b1 must be 0 or 1")
    if b1 == 0 and hf_rank_per_spinc == 1:
        return Shape.ONE_TOWER
    if b1 == 1 and hf_rank_per_spinc == 2:
        return Shape.TWO_TOWERS
    return Shape.INDETERMINATE


def v_rank(k):
    """Hat rank of V(k) by induction through the surgery triangle"""
    if k < 0:
        raise ValueError("k must be nonnegative")
    rank = S1_TIMES_S2_RANK
    for step in range(k):
        if not adjunction_vanishes(1, step + 1):
            raise InconsistentTriangle(f"no vanishing map at step {step}")
        t = complete_triangle(a=ZERO_SURGERY_TREFOIL_RANK, b=rank, zero='first')
        logger.debug("V(%d) -> V(%d): triangle %s images %s", step, step + 1, t,
                     image_ranks(t).as_tuple())
        rank = t.c
    return rank


def v_torsion_spinc_ranks(k, torsion_count=None):
    """Split of the V(k) rank over its torsion spin^c structures"""
    count = torsion_count or k + 1
    total = v_rank(k)
    if total % count:
        raise InconsistentTriangle(f"rank {total} does not split over {count} structures")
    return (total // count,) * count


def v_module(k):
    """HF+ of V(k): two towers of unknown degree per torsion spin^c structure"""
    ranks = v_torsion_spinc_ranks(k)
    towers = []
    for rank in ranks:
        if bgr_shape(rank, 1) != Shape.TWO_TOWERS:
            raise InconsistentTriangle("V(k) summand is not two towers")
        towers += [None, None]
    return GradedModule.build(towers)


def sigma_2_3_module(n):
    """HF+ of -Sigma(2,3,6n-1)"""
    if n < 1:
        raise ValueError("n must be positive")
    return GradedModule.build([Fraction(-2)], [(Fraction(-2), FiniteGroup(n - 1))])
