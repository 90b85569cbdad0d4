#!/usr/bin/env python3
"""
Seifert Matrix Algebra
Alexander polynomial, signature and eigenvalue data for the twist-knot family
"""

import logging
from collections import namedtuple
from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple

from sympy import Poly, Symbol

from exact_linalg import symmetric_inertia, to_matrix
from hfmod import FiniteGroup, GradedModule

logger = logging.getLogger(__name__)

_T = Symbol('t')

ZeroSurgeryPair = namedtuple('ZeroSurgeryPair', ['first', 'second'])


class SeifertError(ValueError):
    pass


@dataclass(frozen=True)
class SeifertMatrix:
    rows: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        size = len(self.rows)
        if any(len(row) != size for row in self.rows):
            raise SeifertError("Seifert matrix must be square")
        if size % 2:
            raise SeifertError(f"Seifert matrix size must be even, got {size}")
        if size and abs(self.antisymmetric().det()) != 1:
            raise SeifertError("V - V^T is not unimodular")

    @classmethod
    def of(cls, rows):
        return cls(tuple(tuple(int(v) for v in row) for row in rows))

    @property
    def genus(self):
        return len(self.rows) // 2

    def matrix(self):
        return to_matrix(self.rows)

    def antisymmetric(self):
        m = self.matrix()
        return m - m.T

    def symmetrized(self):
        m = self.matrix()
        return m + m.T

    def mirror(self):
        return SeifertMatrix.of([[-self.rows[j][i] for j in range(len(self.rows))]
                                 for i in range(len(self.rows))])

    def __str__(self):
        return '[' + ', '.join('[' + ', '.join(str(v) for v in row) + ']' for row in self.rows) + ']'


@dataclass(frozen=True)
class LaurentPoly:
    """Finite-support degree -> coefficient map in one variable t"""
    terms: Tuple[Tuple[int, int], ...]

    @classmethod
    def from_dict(cls, coefficients):
        return cls(tuple(sorted((d, c) for d, c in coefficients.items() if c)))

    def coefficient(self, degree):
        return dict(self.terms).get(degree, 0)

    def is_symmetric(self):
        return all(self.coefficient(-d) == c for d, c in self.terms)

    def __call__(self, t):
        t = Fraction(t)
        return sum((c * t ** d for d, c in self.terms), Fraction(0))

    def __neg__(self):
        return LaurentPoly(tuple((d, -c) for d, c in self.terms))

    def __str__(self):
        if not self.terms:
            return '0'
        pieces = []
        for degree, coefficient in self.terms:
            magnitude = abs(coefficient)
            if degree == 0:
                body = str(magnitude)
            else:
                power = 't' if degree == 1 else f"t^{degree}"
                body = power if magnitude == 1 else f"{magnitude}{power}"
            sign = '-' if coefficient < 0 else '+'
            if not pieces:
                pieces.append(body if sign == '+' else f"-{body}")
            else:
                pieces.append(f"{sign} {body}")
        return ' '.join(pieces)


def twist_knot_seifert(k):
    """Seifert matrix of the genus-one twist knot with parameter k"""
    if k < 1:
        raise SeifertError(f"k must be at least 1, got {k}")
    return SeifertMatrix.of([[-k, k - 1], [k, -k]])


def alexander(V):
    """det(V - t V^T), centered so that it is symmetric and takes the value 1 at t = 1"""
    if not V.rows:
        return LaurentPoly.from_dict({0: 1})
    m = V.matrix()
    determinant = (m - _T * m.T).det()
    poly = Poly(determinant, _T)
    shift = V.genus
    coefficients = {}
    for (power,), value in poly.terms():
        coefficients[power - shift] = int(value)
    delta = LaurentPoly.from_dict(coefficients)
    if not delta.is_symmetric():
        raise SeifertError(f"Alexander polynomial {delta} is not symmetric")
    value_at_one = delta(1)
    if value_at_one not in (1, -1):
        raise SeifertError(f"Alexander polynomial takes {value_at_one} at t = 1")
    return delta if value_at_one == 1 else -delta


def inertia(V):
    """(positive, negative, zero) eigenvalue counts of V + V^T"""
    return symmetric_inertia(V.symmetrized())


def signature(V):
    positive, negative, zero = inertia(V)
    if zero:
        logger.warning("V + V^T is degenerate (%d zero eigenvalues)", zero)
    return positive - negative


def symmetrized_eigenvalues(V):
    """Eigenvalues of V + V^T with multiplicity, smallest first"""
    if not V.rows:
        return []
    values = []
    for value, multiplicity in V.symmetrized().eigenvals().items():
        values += [value] * multiplicity
    return sorted(values, key=lambda v: float(v))


def knot_determinant(V):
    return abs(alexander(V)(-1))


def twist_zero_surgery_hf(n):
    """HF+ of 0-surgery on the twist knot and on its mirror, torsion spin^c"""
    if n < 2 or n % 2:
        raise SeifertError(f"n must be an even integer >= 2, got {n}")
    extra = FiniteGroup(n // 2 - 1)
    first = GradedModule.build(
        [Fraction(-1, 2), Fraction(-3, 2)], [(Fraction(-3, 2), extra)]
    )
    second = GradedModule.build(
        [Fraction(1, 2), Fraction(3, 2)], [(Fraction(1, 2), extra)]
    )
    return ZeroSurgeryPair(first, second)
