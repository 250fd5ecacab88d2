"""Quaternion algebras over Q, local Hilbert symbols and Br(Q)[2].

A quaternion algebra (a, b)_Q is determined up to isomorphism by its
ramification set, the (even, finite) set of places where the Hilbert symbol
is −1. Classes in Br(Q)[2] add by symmetric difference of these sets.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import isqrt
from typing import Iterable

from .errors import ConsistencyError, DomainError, UsageError
from .exactlin import to_rational

DEFAULT_TRIAL_DIVISION_BOUND = 10 ** 6


@dataclass(frozen=True)
class Place:
    """A place of Q: a prime p, or the real place when ``prime`` is None."""

    prime: int | None = None

    def __post_init__(self):
        if self.prime is not None and not is_prime(self.prime):
            raise UsageError(f"{self.prime} is not prime")

    @property
    def is_infinite(self) -> bool:
        return self.prime is None

    def sort_key(self):
        return (self.prime is None, self.prime or 0)

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __str__(self):
        return "∞" if self.prime is None else str(self.prime)

    def __repr__(self):
        return f"Place({self})"

    def to_json(self):
        return "inf" if self.prime is None else self.prime


INF = Place(None)


def place(v) -> Place:
    """Coerce ``2``, ``"7"``, ``"inf"``/``"∞"`` or a Place to a Place."""
    if isinstance(v, Place):
        return v
    if isinstance(v, str) and v.strip().lower() in ("inf", "∞", "infinity", "oo"):
        return INF
    return Place(int(v))


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def factor(n: int, bound: int = DEFAULT_TRIAL_DIVISION_BOUND) -> dict[int, int]:
    """Prime factorization of |n| by trial division up to ``bound``."""
    n = abs(n)
    if n == 0:
        raise DomainError("cannot factor 0")
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        if d > bound:
            raise UsageError(f"cofactor {n} has no prime factor ≤ {bound}; raise the trial-division bound")
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def square_class_integer(q) -> int:
    """An integer in the same square class as the nonzero rational ``q`` (num·den)."""
    q = to_rational(q)
    if q == 0:
        raise DomainError("zero has no square class")
    return q.numerator * q.denominator


def squarefree_part(q, bound: int = DEFAULT_TRIAL_DIVISION_BOUND) -> int:
    m = square_class_integer(q)
    sign = -1 if m < 0 else 1
    out = 1
    for p, e in factor(m, bound).items():
        if e % 2:
            out *= p
    return sign * out


def is_rational_square(q) -> bool:
    q = to_rational(q)
    if q < 0:
        return False
    return isqrt(q.numerator) ** 2 == q.numerator and isqrt(q.denominator) ** 2 == q.denominator


def _split_valuation(m: int, p: int) -> tuple[int, int]:
    alpha = 0
    while m % p == 0:
        m //= p
        alpha += 1
    return alpha, m


def _legendre(u: int, p: int) -> int:
    r = pow(u % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def hilbert_symbol(a, b, v) -> int:
    """Local Hilbert symbol (a, b)_v ∈ {+1, −1} for nonzero rationals a, b."""
    a, b = to_rational(a), to_rational(b)
    if a == 0 or b == 0:
        raise DomainError("Hilbert symbol of zero")
    v = place(v)
    if v.is_infinite:
        return -1 if a < 0 and b < 0 else 1
    p = v.prime
    alpha, u = _split_valuation(square_class_integer(a), p)
    beta, w = _split_valuation(square_class_integer(b), p)
    if p == 2:
        eps = lambda t: ((t - 1) // 2) % 2
        omega = lambda t: ((t * t - 1) // 8) % 2
        e = eps(u) * eps(w) + alpha * omega(w) + beta * omega(u)
        return -1 if e % 2 else 1
    sign = -1 if (alpha * beta * (p - 1) // 2) % 2 else 1
    return sign * _legendre(u, p) ** beta * _legendre(w, p) ** alpha


@lru_cache(maxsize=None)
def _squares_mod(m: int) -> frozenset:
    return frozenset(z * z % m for z in range(m))


def hilbert_oracle(a, b, v) -> int:
    """Brute-force Hilbert symbol: search primitive solutions of z² = a x² + b y² mod p^k.

    a and b are first replaced by integers of the same square class with
    p-valuation 0 or 1. A primitive solution has x or y a unit (if both are
    divisible by p then z is too), so after scaling it suffices to test
    whether a + b y² or a x² + b is a square mod p^k for some residue.
    k = 2·max(v_p) + 3 for odd p and 2·max(v_2) + 5 at 2.
    """
    a, b = to_rational(a), to_rational(b)
    if a == 0 or b == 0:
        raise DomainError("Hilbert symbol of zero")
    v = place(v)
    if v.is_infinite:
        return 1 if a > 0 or b > 0 else -1
    p = v.prime
    alpha, u = _split_valuation(square_class_integer(a), p)
    beta, w = _split_valuation(square_class_integer(b), p)
    alpha, beta = alpha % 2, beta % 2
    A, B = p ** alpha * u, p ** beta * w
    k = 2 * max(alpha, beta) + (5 if p == 2 else 3)
    m = p ** k
    squares = _squares_mod(m)
    A, B = A % m, B % m
    for t in range(m):
        tt = t * t
        if (A + B * tt) % m in squares or (A * tt + B) % m in squares:
            return 1
    return -1


def candidate_places(a, b, bound: int = DEFAULT_TRIAL_DIVISION_BOUND) -> list[Place]:
    primes = {2}
    for q in (a, b):
        primes.update(p for p in factor(squarefree_part(q, bound), bound) if p != 1)
    primes.discard(1)
    return [Place(p) for p in sorted(primes)] + [INF]


@dataclass(frozen=True)
class BrauerClass2:
    """A class in Br(Q)[2], recorded by its ramification set."""

    ram: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "ram", frozenset(place(v) for v in self.ram))
        if len(self.ram) % 2:
            raise UsageError(f"ramification set {self} has odd cardinality")

    def __add__(self, other: BrauerClass2) -> BrauerClass2:
        return BrauerClass2(self.ram ^ other.ram)

    def is_zero(self) -> bool:
        return not self.ram

    def places(self) -> list[Place]:
        return sorted(self.ram)

    def __str__(self):
        return "{" + ", ".join(str(v) for v in self.places()) + "}"

    def to_json(self):
        return [v.to_json() for v in self.places()]


def class_add(c1: BrauerClass2, c2: BrauerClass2) -> BrauerClass2:
    return c1 + c2


def classes_independent(c1: BrauerClass2, c2: BrauerClass2) -> bool:
    """Linear independence over F₂: both nonzero and distinct."""
    return not c1.is_zero() and not c2.is_zero() and c1 != c2


@dataclass(frozen=True)
class QuaternionAlgebra:
    """(a, b)_Q = Q ⊕ Qi ⊕ Qj ⊕ Qk with i² = a, j² = b, k = ij = −ji."""

    a: Fraction
    b: Fraction

    def __post_init__(self):
        object.__setattr__(self, "a", to_rational(self.a))
        object.__setattr__(self, "b", to_rational(self.b))
        if self.a == 0 or self.b == 0:
            raise DomainError("quaternion algebra parameters must be nonzero")

    def symbols(self, bound: int = DEFAULT_TRIAL_DIVISION_BOUND) -> dict[Place, int]:
        return {v: hilbert_symbol(self.a, self.b, v) for v in candidate_places(self.a, self.b, bound)}

    def ramification(self, bound: int = DEFAULT_TRIAL_DIVISION_BOUND) -> BrauerClass2:
        return ramification_set(self, bound)

    def is_division(self, bound: int = DEFAULT_TRIAL_DIVISION_BOUND) -> bool:
        return quaternion_is_division(self, bound)

    def norm_form(self, t, u, v, w) -> Fraction:
        t, u, v, w = map(to_rational, (t, u, v, w))
        return t * t - self.a * u * u - self.b * v * v + self.a * self.b * w * w

    def __str__(self):
        return f"({self.a}, {self.b})_Q"


def ramification_set(Q: QuaternionAlgebra, bound: int = DEFAULT_TRIAL_DIVISION_BOUND) -> BrauerClass2:
    ram = [v for v, s in Q.symbols(bound).items() if s == -1]
    if len(ram) % 2:
        raise ConsistencyError(f"odd ramification {sorted(ram)} for {Q}: product formula violated")
    return BrauerClass2(frozenset(ram))


def quaternion_is_division(Q: QuaternionAlgebra, bound: int = DEFAULT_TRIAL_DIVISION_BOUND) -> bool:
    return not ramification_set(Q, bound).is_zero()


def albert_form(Q1: QuaternionAlgebra, Q2: QuaternionAlgebra) -> tuple[Fraction, ...]:
    """Diagonal coefficients ⟨a, b, −ab, −c, −d, cd⟩ of the Albert form of Q1 ⊗ Q2."""
    a, b, c, d = Q1.a, Q1.b, Q2.a, Q2.b
    return (a, b, -a * b, -c, -d, c * d)


def albert_form_isotropic(Q1: QuaternionAlgebra, Q2: QuaternionAlgebra) -> bool:
    # dimension 6 ≥ 5: isotropic at every prime, so only the real place matters
    signs = {c > 0 for c in albert_form(Q1, Q2)}
    return len(signs) == 2


def discrepancy_flag(independent: bool, isotropic: bool) -> bool:
    """True when the F₂-independence criterion and the Albert form disagree on divisionness."""
    return independent != (not isotropic)


@dataclass(frozen=True)
class BiquaternionVerdict:
    q1: QuaternionAlgebra
    q2: QuaternionAlgebra
    ram1: BrauerClass2
    ram2: BrauerClass2
    sum_class: BrauerClass2
    independent: bool
    albert_coefficients: tuple
    albert_isotropic: bool
    division: bool
    discrepancy: bool

    def to_json(self) -> dict:
        return {
            "q1": {"a": str(self.q1.a), "b": str(self.q1.b)},
            "q2": {"a": str(self.q2.a), "b": str(self.q2.b)},
            "ramification_q1": self.ram1.to_json(),
            "ramification_q2": self.ram2.to_json(),
            "class_sum": self.sum_class.to_json(),
            "classes_independent": self.independent,
            "albert_form": [str(c) for c in self.albert_coefficients],
            "albert_isotropic": self.albert_isotropic,
            "division": self.division,
            "discrepancy": "RAISED" if self.discrepancy else "none",
        }


def biquaternion_verdict(Q1: QuaternionAlgebra, Q2: QuaternionAlgebra,
                         bound: int = DEFAULT_TRIAL_DIVISION_BOUND) -> BiquaternionVerdict:
    """Report both the class-independence criterion and the Albert-form oracle.

    The verdict follows the oracle (division iff the Albert form is
    anisotropic); ``discrepancy`` records any disagreement between the two.
    """
    r1, r2 = ramification_set(Q1, bound), ramification_set(Q2, bound)
    independent = classes_independent(r1, r2)
    isotropic = albert_form_isotropic(Q1, Q2)
    return BiquaternionVerdict(
        q1=Q1, q2=Q2, ram1=r1, ram2=r2, sum_class=r1 + r2,
        independent=independent,
        albert_coefficients=albert_form(Q1, Q2),
        albert_isotropic=isotropic,
        division=not isotropic,
        discrepancy=discrepancy_flag(independent, isotropic),
    )


def discriminant_of_quadratic(minpoly) -> Fraction:
    """d with L = Q(√d) for L = Q[t]/(t² + p t + q): d = p² − 4q."""
    q, p, lead = (to_rational(c) for c in minpoly)
    if lead != 1:
        raise UsageError("expected a monic quadratic")
    return p * p - 4 * q


@dataclass(frozen=True)
class CyclicModel:
    """A quaternion algebra realised as a cyclic algebra, with the images of i, j, k."""

    quaternion: QuaternionAlgebra
    algebra: object
    i: object
    j: object
    k: object

    def image(self, t, u, v, w):
        """The element t + u·i + v·j + w·k."""
        return (self.algebra.scalar(t) + self.i * to_rational(u)
                + self.j * to_rational(v) + self.k * to_rational(w))


def quat_to_cyclic(Q: QuaternionAlgebra) -> CyclicModel:
    """(a, b)_Q ≅ (Q(√a)/Q, √a ↦ −√a, b) via i ↦ θ, j ↦ x, k ↦ θx."""
    from .cycalg import CyclicAlgebra
    from .numfield import quadratic_extension

    if is_rational_square(Q.a):
        raise DomainError(f"{Q.a} is a rational square: split coordinate; "
                          "choose the other slot or a split model")
    D = CyclicAlgebra(quadratic_extension(Q.a), Q.b)
    i, j = D.theta, D.x
    k = i * j
    if not (i * i == D.scalar(Q.a) and j * j == D.scalar(Q.b) and j * i == -k):
        raise ConsistencyError(f"quaternion relations fail in the cyclic model of {Q}")
    return CyclicModel(Q, D, i, j, k)
