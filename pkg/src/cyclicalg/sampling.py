"""Seeded random samples for property suites."""

from __future__ import annotations

import random
from fractions import Fraction

from .cycalg import AlgElem, CyclicAlgebra
from .numfield import FieldElem, NumberField


def random_rational(rng: random.Random, height: int = 5, max_den: int = 3) -> Fraction:
    return Fraction(rng.randint(-height, height), rng.randint(1, max_den))


def random_nonzero_rational(rng: random.Random, height: int = 5, max_den: int = 3) -> Fraction:
    while True:
        q = random_rational(rng, height, max_den)
        if q:
            return q


def random_field_elem(rng: random.Random, L: NumberField, height: int = 5) -> FieldElem:
    return L.element([random_rational(rng, height) for _ in range(L.degree)])


def random_element(rng: random.Random, D: CyclicAlgebra, height: int = 5) -> AlgElem:
    return D.element([random_field_elem(rng, D.L, height) for _ in range(D.n)])


def random_nonzero_element(rng: random.Random, D: CyclicAlgebra, height: int = 5) -> AlgElem:
    while True:
        u = random_element(rng, D, height)
        if not u.is_zero():
            return u


def random_invertible(rng: random.Random, D: CyclicAlgebra, height: int = 5) -> AlgElem:
    from .cycalg import reduced_norm

    while True:
        u = random_element(rng, D, height)
        if reduced_norm(u) != 0:
            return u


def random_integer_pair(rng: random.Random, bound: int = 60) -> tuple[int, int]:
    def draw():
        while True:
            k = rng.randint(-bound, bound)
            if k:
                return k
    return draw(), draw()
