#!/usr/bin/env python3
"""
Contact Surgery Diagrams
Linking matrix, surgered homology, Hopf invariant and c1 classes for (+/-1)-surgeries
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple

from exact_linalg import (
    smith_decomposition, solve_rational, symmetric_inertia, to_fraction, to_matrix,
)
from front_core import (
    FrontWord, OrientedFront, delete_component, linking_number, orient, orient_record,
    parse_front_file, pushoff, rot, stabilize, standard_unknot, tb, twist_knot_front,
)

logger = logging.getLogger(__name__)

CONTACT_COEFFICIENTS = {'+1': 1, '1': 1, '-1': -1}


class SurgeryError(ValueError):
    pass


class NonTorsion:
    """Marker for a diagram whose plane field has non-torsion Euler class"""
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __neg__(self):
        return self

    def __repr__(self):
        return 'NonTorsion'

    def __str__(self):
        return 'non-torsion'


NON_TORSION = NonTorsion()


@dataclass(frozen=True)
class IntMatrix:
    rows: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        if any(len(row) != len(self.rows) for row in self.rows):
            raise SurgeryError("matrix must be square")

    @classmethod
    def of(cls, rows):
        return cls(tuple(tuple(int(v) for v in row) for row in rows))

    @classmethod
    def diagonal(cls, values):
        values = list(values)
        return cls.of([[values[i] if i == j else 0 for j in range(len(values))]
                       for i in range(len(values))])

    @property
    def dimension(self):
        return len(self.rows)

    def is_symmetric(self):
        return all(self.rows[i][j] == self.rows[j][i]
                   for i in range(self.dimension) for j in range(i))

    def to_sympy(self):
        return to_matrix(self.rows)

    def determinant(self):
        if not self.rows:
            return 1
        return int(self.to_sympy().det())

    def permuted(self, order):
        return IntMatrix.of([[self.rows[i][j] for j in order] for i in order])

    def __str__(self):
        if not self.rows:
            return '[]'
        width = max(len(str(v)) for row in self.rows for v in row)
        return '\n'.join('[' + ' '.join(str(v).rjust(width) for v in row) + ']'
                         for row in self.rows)


@dataclass(frozen=True)
class AbelianGroup:
    free_rank: int
    torsion: Tuple[int, ...] = ()

    def __post_init__(self):
        if self.free_rank < 0 or any(d < 2 for d in self.torsion):
            raise SurgeryError("torsion factors must be at least 2")
        if any(b % a for a, b in zip(self.torsion, self.torsion[1:])):
            raise SurgeryError(f"torsion {self.torsion} breaks the divisibility chain")

    @property
    def order(self):
        if self.free_rank:
            return math.inf
        return math.prod(self.torsion)

    def is_finite(self):
        return self.free_rank == 0

    def __str__(self):
        parts = (['Z'] * self.free_rank) + [f"Z/{d}" for d in self.torsion]
        return ' ⊕ '.join(parts) if parts else '0'


@dataclass(frozen=True)
class CohomologyClass:
    """Coordinates in the Smith basis; modulus 0 marks a free coordinate"""
    coordinates: Tuple[int, ...]
    moduli: Tuple[int, ...]

    def is_zero(self):
        return not any(self.coordinates)

    def negated(self):
        return CohomologyClass(
            tuple((-c) % m if m else -c for c, m in zip(self.coordinates, self.moduli)),
            self.moduli,
        )

    def __str__(self):
        if not self.coordinates:
            return '0'
        return '(' + ', '.join(f"{c} mod {m}" if m else str(c)
                               for c, m in zip(self.coordinates, self.moduli)) + ')'


@dataclass(frozen=True)
class HopfData:
    c_squared: Fraction
    signature: int
    euler: int
    q: int
    h: Fraction


@dataclass(frozen=True)
class ContactSurgeryDiagram:
    front: OrientedFront
    coefficients: Tuple[int, ...]
    labels: Tuple[str, ...] = ()

    def __post_init__(self):
        count = self.front.components.count
        if len(self.coefficients) != count:
            raise SurgeryError(f"need {count} contact coefficients, got {len(self.coefficients)}")
        for value in self.coefficients:
            if value not in (1, -1):
                raise SurgeryError(f"only contact coefficients +1 and -1 are supported, got {value}")
        if not self.labels:
            object.__setattr__(self, 'labels', tuple(f"K{i}" for i in range(count)))
        elif len(self.labels) != count:
            raise SurgeryError("one label per component is required")

    @property
    def count(self):
        return len(self.coefficients)

    @property
    def q(self):
        return sum(1 for value in self.coefficients if value == 1)

    def smooth_coefficient(self, component):
        return tb(self.front, component) + self.coefficients[component]

    def rotation_vector(self):
        return tuple(rot(self.front, c) for c in range(self.count))

    def tb_vector(self):
        return tuple(tb(self.front, c) for c in range(self.count))


def diagram_from_word(w, coefficients, seeds=None, labels=()):
    return ContactSurgeryDiagram(orient(w, seeds), tuple(coefficients), tuple(labels))


def _coefficient_value(text):
    if text not in CONTACT_COEFFICIENTS:
        raise SurgeryError(f"only contact coefficients +1 and -1 are supported, got {text!r}")
    return CONTACT_COEFFICIENTS[text]


def diagram_from_record(record):
    """Diagram from a parsed front file carrying 'surgery' lines"""
    f = orient_record(record)
    chosen = {}
    for _, component, value, *rest in record.directive_lines('surgery'):
        if rest or not component.isdigit():
            raise SurgeryError(f"expected 'surgery <component> <+1|-1>', got {component} {value}")
        index = int(component)
        f.components.check(index)
        if index in chosen:
            raise SurgeryError(f"component {index} has two surgery coefficients")
        chosen[index] = _coefficient_value(value)
    missing = [c for c in range(f.components.count) if c not in chosen]
    if missing:
        raise SurgeryError(f"components without a surgery coefficient: {missing}")
    return ContactSurgeryDiagram(f, tuple(chosen[c] for c in range(f.components.count)))


def parse_diagram(text):
    return diagram_from_record(parse_front_file(text))


def linking_matrix(d):
    """Smooth framings on the diagonal, linking numbers off it"""
    m = d.count
    rows = [[0] * m for _ in range(m)]
    for i in range(m):
        rows[i][i] = d.smooth_coefficient(i)
        for j in range(i):
            rows[i][j] = rows[j][i] = linking_number(d.front, i, j)
    return IntMatrix.of(rows)


def homology(M):
    """Cokernel of M from its Smith normal form"""
    if not isinstance(M, IntMatrix):
        M = IntMatrix.of(M)
    diagonal, _, _ = smith_decomposition(M.rows)
    free_rank = sum(1 for d in diagonal if d == 0)
    torsion = tuple(abs(d) for d in diagonal if abs(d) > 1)
    return AbelianGroup(free_rank, torsion)


def characteristic_square(M, r, free_value=0):
    """x^T M x for a rational solution of M x = r, or NON_TORSION"""
    if not M.rows:
        return Fraction(0)
    x = solve_rational(M.rows, r, free_value)
    if x is None:
        return NON_TORSION
    return sum((to_fraction(x[i]) * r[i] for i in range(len(r))), Fraction(0))


def hopf_from_data(M, r, q, free_value=0):
    c_squared = characteristic_square(M, r, free_value)
    if c_squared is NON_TORSION:
        return NON_TORSION
    positive, negative, _ = symmetric_inertia(M.rows)
    signature = positive - negative
    euler = 1 + M.dimension
    h = Fraction(c_squared - 3 * signature - 2 * euler + 2) / 4 + q
    return HopfData(c_squared, signature, euler, q, h)


def hopf_data(d):
    return hopf_from_data(linking_matrix(d), d.rotation_vector(), d.q)


def hopf_invariant(d):
    data = hopf_data(d)
    if data is NON_TORSION:
        logger.debug("Diagram %s has non-torsion Euler class", d.labels)
        return NON_TORSION
    return data.h


def expected_chat_degree(d):
    h = hopf_invariant(d)
    return NON_TORSION if h is NON_TORSION else -h


def _reduced_class(d, scale):
    M = linking_matrix(d)
    if not M.rows:
        return CohomologyClass((), ())
    diagonal, s, _ = smith_decomposition(M.rows)
    image = s * to_matrix([[v] for v in d.rotation_vector()])
    coordinates, moduli = [], []
    for i, factor in enumerate(diagonal):
        factor = abs(factor) * scale
        value = int(image[i, 0])
        if factor == 0:
            coordinates.append(value)
            moduli.append(0)
        elif factor > 1:
            coordinates.append(value % factor)
            moduli.append(factor)
    return CohomologyClass(tuple(coordinates), tuple(moduli))


def c1_class(d):
    """Rotation vector modulo the column space of the linking matrix"""
    return _reduced_class(d, 1)


def spinc_class(d):
    """Rotation vector modulo twice the column space; separates spin^c structures"""
    return _reduced_class(d, 2)


def cancel_with_pushoff(d, component):
    """Add a push-off of one component carrying the opposite coefficient"""
    d.front.components.check(component)
    seeds = d.front.seeds()
    shifted = {(c + 1 if c > component else c): v for c, v in seeds.items()}
    shifted[component + 1] = seeds[component]
    coefficients = list(d.coefficients)
    coefficients.insert(component + 1, -coefficients[component])
    labels = list(d.labels)
    labels.insert(component + 1, labels[component] + "'")
    return diagram_from_word(pushoff(d.front.word, component), coefficients, shifted, labels)


def delete_knot(d, component):
    d.front.components.check(component)
    seeds = {(c - 1 if c > component else c): v
             for c, v in d.front.seeds().items() if c != component}
    keep = [c for c in range(d.count) if c != component]
    return diagram_from_word(
        delete_component(d.front.word, component),
        [d.coefficients[c] for c in keep], seeds, [d.labels[c] for c in keep],
    )


def lens_space_diagram(n, rotation):
    """Legendrian surgery on an unknot with tb 1-n and the given rotation: L(n,1)"""
    if n < 2:
        raise SurgeryError("lens space diagrams need n >= 2")
    if abs(rotation) > n - 2 or (n - rotation) % 2:
        raise SurgeryError(f"rotation {rotation} is not realized by an unknot with tb {1 - n}")
    w = standard_unknot()
    for _ in range((n - 2 + rotation) // 2):
        w = stabilize(w, 0, 1)
    for _ in range((n - 2 - rotation) // 2):
        w = stabilize(w, 0, -1)
    return diagram_from_word(FrontWord(w.events, f"lens-{n}-{rotation}"), [-1])


def twist_diagram(n, i):
    """Legendrian surgery on the twist front; smoothly 0-surgery on the twist knot"""
    return diagram_from_word(twist_knot_front(n, i), [-1])


def surgery_summary(d):
    """Everything the CLI prints for a diagram"""
    M = linking_matrix(d)
    data = hopf_from_data(M, d.rotation_vector(), d.q)
    torsion = data is not NON_TORSION
    positive, negative, _ = symmetric_inertia(M.rows)
    return {
        'labels': list(d.labels),
        'contact_coefficients': list(d.coefficients),
        'tb': list(d.tb_vector()),
        'rot': list(d.rotation_vector()),
        'smooth_coefficients': [d.smooth_coefficient(c) for c in range(d.count)],
        'linking_matrix': [list(row) for row in M.rows],
        'h1': str(homology(M)),
        'sigma': positive - negative,
        'chi': 1 + M.dimension,
        'q': d.q,
        'c_squared': str(data.c_squared) if torsion else None,
        'hopf_invariant': str(data.h) if torsion else str(NON_TORSION),
        'expected_chat_degree': str(-data.h) if torsion else str(NON_TORSION),
        'c1_class': str(c1_class(d)),
        'spinc_class': str(spinc_class(d)),
    }
