#!/usr/bin/env python3
"""
Seifert algebra tests: twist-knot matrices, Alexander polynomial, signature
"""

import random

import pytest

from hfmod import dual
from seifert import (
    LaurentPoly, SeifertError, SeifertMatrix, alexander, inertia, knot_determinant, signature,
    symmetrized_eigenvalues, twist_knot_seifert, twist_zero_surgery_hf,
)


def random_genus_one(rng, bound=6):
    a, b, d = (rng.randint(-bound, bound) for _ in range(3))
    return SeifertMatrix.of([[a, b], [b + rng.choice([1, -1]), d]])


def test_twist_knot_matrices():
    assert twist_knot_seifert(1).rows == ((-1, 0), (1, -1))
    assert twist_knot_seifert(2).rows == ((-2, 1), (2, -2))
    for k in range(1, 11):
        assert twist_knot_seifert(k).antisymmetric().tolist() == [[0, -1], [1, 0]]
    with pytest.raises(SeifertError):
        twist_knot_seifert(0)


@pytest.mark.parametrize("k", range(1, 11))
def test_twist_knot_algebra(k):
    V = twist_knot_seifert(k)
    delta = alexander(V)
    assert delta == LaurentPoly.from_dict({-1: k, 0: -(2 * k - 1), 1: k})
    assert signature(V) == -2
    assert symmetrized_eigenvalues(V) == [1 - 4 * k, -1]
    assert knot_determinant(V) == 4 * k - 1
    assert knot_determinant(V) == abs((-1) * (1 - 4 * k))


def test_trefoil_polynomial_text():
    assert str(alexander(twist_knot_seifert(1))) == 't^-1 - 1 + t'
    assert str(alexander(twist_knot_seifert(3))) == '3t^-1 - 5 + 3t'


def test_unknot_surface():
    empty = SeifertMatrix.of([])
    assert alexander(empty) == LaurentPoly.from_dict({0: 1})
    assert signature(empty) == 0
    assert symmetrized_eigenvalues(empty) == []


def test_random_genus_one_matrices():
    rng = random.Random(500)
    for _ in range(500):
        V = random_genus_one(rng)
        delta = alexander(V)
        assert delta(1) == 1
        assert delta.is_symmetric()


def test_mirror_negates_signature():
    rng = random.Random(7)
    for _ in range(100):
        V = random_genus_one(rng)
        assert signature(V.mirror()) == -signature(V)


def test_symmetrized_form_is_never_degenerate():
    rng = random.Random(12)
    for _ in range(100):
        V = random_genus_one(rng)
        positive, negative, zero = inertia(V)
        assert zero == 0
        assert (positive + negative) % 2 == 0
        assert signature(V) % 2 == 0
        assert knot_determinant(V) % 2 == 1
    assert inertia(SeifertMatrix.of([[0, 0], [1, 0]])) == (1, 1, 0)


def test_invalid_seifert_matrices():
    with pytest.raises(SeifertError):
        SeifertMatrix.of([[1, 2], [2, 1]])
    with pytest.raises(SeifertError):
        SeifertMatrix.of([[1]])


def test_zero_surgery_modules():
    pair = twist_zero_surgery_hf(2)
    assert str(pair.first) == 'T(-3/2) + T(-1/2)'
    assert pair.first.finite_part == ()
    pair = twist_zero_surgery_hf(4)
    assert str(pair.first) == 'T(-3/2) + T(-1/2) + Z(-3/2)'
    assert str(pair.second) == 'T(1/2) + T(3/2) + Z(1/2)'
    with pytest.raises(SeifertError):
        twist_zero_surgery_hf(5)


def test_zero_surgery_modules_are_dual():
    for n in range(2, 21, 2):
        pair = twist_zero_surgery_hf(n)
        assert dual(pair.first) == pair.second
        assert dual(pair.second) == pair.first
