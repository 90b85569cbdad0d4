#!/usr/bin/env python3
"""
Exact Linear Algebra Helpers
Smith decomposition, symmetric inertia and rational solving on sympy matrices
"""

from fractions import Fraction

from sympy import Matrix, Symbol, ZZ
from sympy.matrices.normalforms import smith_normal_decomp

_LAMBDA = Symbol('lambda')


def to_matrix(rows):
    """Integer rows (or an existing Matrix) as a sympy Matrix; [] is 0x0"""
    if isinstance(rows, Matrix):
        return rows
    rows = [list(row) for row in rows]
    if not rows:
        return Matrix(0, 0, [])
    return Matrix(rows)


def to_fraction(value):
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    return Fraction(int(value.p), int(value.q))


def smith_decomposition(m):
    """(diagonal, S, T) with diag(diagonal) == S * m * T"""
    m = to_matrix(m)
    if m.rows == 0 or m.cols == 0:
        return [], Matrix.eye(m.rows), Matrix.eye(m.cols)
    smf, s, t = smith_normal_decomp(m, domain=ZZ)
    diagonal = [int(smf[i, i]) for i in range(min(m.rows, m.cols))]
    return diagonal, s, t


def _sign_changes(coefficients):
    signs = [c > 0 for c in coefficients if c != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def symmetric_inertia(m):
    """(positive, negative, zero) eigenvalue counts of a symmetric matrix.

    Descartes' rule of signs is exact here since every root of the
    characteristic polynomial is real.
    """
    m = to_matrix(m)
    if m.rows == 0:
        return 0, 0, 0
    if m != m.T:
        raise ValueError("inertia needs a symmetric matrix")
    coefficients = [int(c) for c in m.charpoly(_LAMBDA).all_coeffs()]
    zero = 0
    while coefficients and coefficients[-1] == 0:
        coefficients.pop()
        zero += 1
    degree = len(coefficients) - 1
    positive = _sign_changes(coefficients)
    negative = _sign_changes([c * (-1) ** (degree - k) for k, c in enumerate(coefficients)])
    return positive, negative, zero


def solve_rational(m, r, free_value=0):
    """A rational solution of m x = r, or None when there is none.

    Free parameters are set to ``free_value``.
    """
    m = to_matrix(m)
    r = r if isinstance(r, Matrix) else Matrix(list(r))
    try:
        solution, params = m.gauss_jordan_solve(r)
    except ValueError:
        return None
    return solution.subs({p: free_value for p in params})
