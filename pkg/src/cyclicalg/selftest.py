"""Randomized invariant suites behind ``cyclicalg selftest``."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction

from . import brauer, cycalg, sampling, subfields
from .errors import AlgebraError

DEFAULT_SEED = 20241015
GRID_VALUES = (1, -1, 2, -2, 3, -3, 5, -5, 6, -6, 7, -7, 10, -10)
GRID_PLACES = ("inf", 2, 3, 5, 7)


@dataclass
class SuiteResult:
    name: str
    count: int
    failure: str | None = None

    @property
    def ok(self) -> bool:
        return self.failure is None


def oracle_agreement(rng: random.Random, random_pairs: int = 200) -> SuiteResult:
    count = 0
    pairs = list(itertools.product(GRID_VALUES, repeat=2))
    pairs += [(sampling.random_nonzero_rational(rng, 40, 4), sampling.random_nonzero_rational(rng, 40, 4))
              for _ in range(random_pairs)]
    for a, b in pairs:
        for v in GRID_PLACES:
            s, o = brauer.hilbert_symbol(a, b, v), brauer.hilbert_oracle(a, b, v)
            count += 1
            if s != o:
                return SuiteResult("oracle agreement", count,
                                   f"a={Fraction(a)} b={Fraction(b)} place={v}: symbol {s}, oracle {o}")
    return SuiteResult("oracle agreement", count)


def product_formula(rng: random.Random, pairs: int = 100) -> SuiteResult:
    for k in range(pairs):
        a, b = sampling.random_integer_pair(rng, 2000)
        primes = set(brauer.factor(a * b)) | {2}
        prod = brauer.hilbert_symbol(a, b, "inf")
        for p in primes:
            prod *= brauer.hilbert_symbol(a, b, p)
        if prod != 1:
            return SuiteResult("product formula", k + 1, f"a={a} b={b}: product of symbols is {prod}")
    return SuiteResult("product formula", pairs)


def shipped_algebras() -> dict[str, cycalg.CyclicAlgebra]:
    return {"hamilton": cycalg.hamilton(), "cubic(a=2)": cycalg.cubic_algebra(2)}


def nrd_multiplicativity(rng: random.Random, pairs: int = 200) -> SuiteResult:
    count = 0
    for name, D in shipped_algebras().items():
        for _ in range(pairs):
            u, v = sampling.random_element(rng, D), sampling.random_element(rng, D)
            count += 1
            if cycalg.reduced_norm(u * v) != cycalg.reduced_norm(u) * cycalg.reduced_norm(v):
                return SuiteResult("Nrd multiplicativity", count, f"{name}: u={u} v={v}")
    return SuiteResult("Nrd multiplicativity", count)


def associativity(rng: random.Random, triples: int = 200) -> SuiteResult:
    count = 0
    for name, D in shipped_algebras().items():
        for _ in range(triples):
            u, v, w = (sampling.random_element(rng, D) for _ in range(3))
            count += 1
            if (u * v) * w != u * (v * w):
                return SuiteResult("associativity", count, f"{name}: u={u} v={v} w={w}")
    return SuiteResult("associativity", count)


def sn_round_trips(rng: random.Random, trials: int = 20) -> SuiteResult:
    D = cycalg.hamilton()
    L = subfields.l_image(D)
    for k in range(trials):
        h = sampling.random_invertible(rng, D, 4)
        K = subfields.conjugate_subspace(L, h)
        target = cycalg.invert_elem(h) * D.theta * h
        g = subfields.sn_conjugator(D, D.theta, target)
        if g is None or not subfields.conjugate_subspace(L, g).same_space(K):
            return SuiteResult("Skolem–Noether round trip", k + 1, f"h={h} g={g}")
    return SuiteResult("Skolem–Noether round trip", trials)


SUITES = (oracle_agreement, product_formula, nrd_multiplicativity, associativity, sn_round_trips)


def run_all(seed: int = DEFAULT_SEED) -> list[SuiteResult]:
    results = []
    for suite in SUITES:
        rng = random.Random(f"{seed}:{suite.__name__}")
        try:
            results.append(suite(rng))
        except AlgebraError as exc:
            results.append(SuiteResult(suite.__name__, 0, f"raised {type(exc).__name__}: {exc}"))
    return results
