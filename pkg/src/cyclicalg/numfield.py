"""Number fields Q[t]/(f) in the power basis, and cyclic extensions of Q.

A :class:`CyclicExtension` carries a generator of its Galois group, given by
the image of the field generator θ. Construction certifies the data: the image
is a root of f, the automorphism has order exactly n, and its fixed field is Q.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

from . import exactlin
from .errors import ConstructionError, DomainError, UsageError
from .exactlin import RatMatrix, to_rational


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small = [d for d in range(1, int(n ** 0.5) + 2) if d * d <= n and n % d == 0]
    return sorted(set(small + [n // d for d in small]))


def rational_roots(coeffs: Sequence[Fraction]) -> list[Fraction]:
    """Rational roots of the polynomial with the given coefficients (constant term first)."""
    coeffs = [to_rational(c) for c in coeffs]
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    if len(coeffs) <= 1:
        return []
    den = 1
    for c in coeffs:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in coeffs]
    roots = set()
    if ints[0] == 0:
        roots.add(Fraction(0))
        # strip the factor t
        k = 0
        while ints[k] == 0:
            k += 1
        ints = ints[k:]
        if len(ints) == 1:
            return sorted(roots)
    for p in _divisors(ints[0]):
        for q in _divisors(ints[-1]):
            for cand in (Fraction(p, q), Fraction(-p, q)):
                if _eval_poly(ints, cand) == 0:
                    roots.add(cand)
    return sorted(roots)


def _eval_poly(coeffs, x):
    acc = 0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def format_poly(coeffs: Sequence[Fraction], var: str = "t") -> str:
    terms = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if c == 0:
            continue
        mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        if mono and abs(c) == 1:
            body = mono
        else:
            body = f"{abs(c)}" + (f"*{mono}" if mono else "")
        sign = "-" if c < 0 else "+"
        terms.append((sign, body))
    if not terms:
        return "0"
    first_sign, first = terms[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


class NumberField:
    """L = Q[t]/(f) for a monic f of degree n ≥ 1.

    Irreducibility is checked for degree ≤ 3 by the rational root test. For
    higher degrees it is the caller's responsibility and
    ``irreducibility_asserted`` is set.
    """

    def __init__(self, minpoly: Sequence, name: str = "θ"):
        coeffs = tuple(to_rational(c) for c in minpoly)
        if len(coeffs) < 2:
            raise ConstructionError("minimal polynomial must have degree ≥ 1")
        if coeffs[-1] != 1:
            raise ConstructionError(f"minimal polynomial must be monic, leading coefficient is {coeffs[-1]}")
        self.minpoly = coeffs
        self.degree = len(coeffs) - 1
        self.name = name
        self.irreducibility_asserted = self.degree >= 4
        if 2 <= self.degree <= 3:
            roots = rational_roots(coeffs)
            if roots:
                raise ConstructionError(
                    f"{format_poly(coeffs)} is reducible over Q (rational root {roots[0]})"
                )

    def __eq__(self, other):
        if not isinstance(other, NumberField):
            return NotImplemented
        return self.minpoly == other.minpoly

    def __hash__(self):
        return hash(("NumberField", self.minpoly))

    def __repr__(self):
        return f"NumberField({format_poly(self.minpoly)})"

    # -- elements -----------------------------------------------------------

    def element(self, coeffs: Sequence) -> FieldElem:
        coeffs = [to_rational(c) for c in coeffs]
        if len(coeffs) > self.degree:
            return self.reduce(coeffs)
        return FieldElem(self, tuple(coeffs) + (Fraction(0),) * (self.degree - len(coeffs)))

    def rational(self, q) -> FieldElem:
        return self.element([to_rational(q)])

    @property
    def zero(self) -> FieldElem:
        return self.rational(0)

    @property
    def one(self) -> FieldElem:
        return self.rational(1)

    @property
    def gen(self) -> FieldElem:
        if self.degree == 1:
            return self.rational(-self.minpoly[0])
        return self.element([0, 1])

    def power_basis(self) -> list[FieldElem]:
        return [self.element([0] * k + [1]) for k in range(self.degree)]

    def reduce(self, coeffs: Sequence[Fraction]) -> FieldElem:
        """Reduce a polynomial in θ modulo the minimal polynomial."""
        c = list(coeffs)
        n = self.degree
        f = self.minpoly
        for k in range(len(c) - 1, n - 1, -1):
            lead = c[k]
            if lead:
                for j in range(n):
                    c[k - n + j] -= lead * f[j]
            c[k] = Fraction(0)
        c = c[:n] + [Fraction(0)] * (n - len(c))
        return FieldElem(self, tuple(c))

    def evaluate(self, coeffs: Sequence, at: FieldElem) -> FieldElem:
        """p(at) for the rational polynomial p given by ``coeffs`` (constant first)."""
        acc = self.zero
        for c in reversed(coeffs):
            acc = acc * at + self.rational(c)
        return acc


@dataclass(frozen=True, eq=False)
class FieldElem:
    """Element of a :class:`NumberField`, coordinates in the power basis."""

    owner: NumberField
    coeffs: tuple

    def __post_init__(self):
        if len(self.coeffs) != self.owner.degree:
            raise UsageError(f"expected {self.owner.degree} coordinates, got {len(self.coeffs)}")

    def _check(self, other) -> FieldElem:
        if isinstance(other, (int, Fraction)):
            return self.owner.rational(other)
        if not isinstance(other, FieldElem):
            return NotImplemented
        if other.owner != self.owner:
            raise UsageError("field elements from different fields")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return FieldElem(self.owner, tuple(x + y for x, y in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return FieldElem(self.owner, tuple(x - y for x, y in zip(self.coeffs, other.coeffs)))

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return FieldElem(self.owner, tuple(-x for x in self.coeffs))

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        n = self.owner.degree
        prod = [Fraction(0)] * (2 * n - 1)
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in enumerate(other.coeffs):
                    if y:
                        prod[i + j] += x * y
        return self.owner.reduce(prod)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        if other.is_zero():
            raise DomainError("division by zero in a number field")
        w = exactlin.solve(other.mult_matrix(), RatMatrix.column(self.coeffs))
        return FieldElem(self.owner, w.col(0))

    def __rtruediv__(self, other):
        return self._check(other) / self

    def inverse(self) -> FieldElem:
        return self.owner.one / self

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result, base = self.owner.one, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.owner.rational(other)
        if not isinstance(other, FieldElem):
            return NotImplemented
        return self.owner == other.owner and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise UsageError(f"{self} is not rational")
        return self.coeffs[0]

    def mult_matrix(self) -> RatMatrix:
        """Matrix of multiplication by this element in the power basis."""
        cols = [(self * b).coeffs for b in self.owner.power_basis()]
        return RatMatrix.from_columns(cols, rows=self.owner.degree)

    def __repr__(self):
        return f"FieldElem({format_poly(self.coeffs, self.owner.name)})"

    def __str__(self):
        return format_poly(self.coeffs, self.owner.name)


def mult_matrix(u: FieldElem) -> RatMatrix:
    return u.mult_matrix()


@dataclass(frozen=True)
class SigmaCertificate:
    root_to_root: bool
    order: int | None
    fixed_dimension: int | None
    degree: int

    @property
    def order_ok(self) -> bool:
        return self.order == self.degree

    @property
    def fixed_field_ok(self) -> bool:
        return self.fixed_dimension == 1

    @property
    def ok(self) -> bool:
        return self.root_to_root and self.order_ok and self.fixed_field_ok

    def failures(self) -> list[str]:
        out = []
        if not self.root_to_root:
            # σ is not a field map, so order and fixed field are meaningless
            return ["root-to-root: f(σ(θ)) ≠ 0"]
        if not self.order_ok:
            found = f"greater than {self.degree}" if self.order is None else str(self.order)
            out.append(f"order: σ has order {found}, expected {self.degree}")
        if not self.fixed_field_ok:
            out.append(f"fixed field: dim ker(σ − id) = {self.fixed_dimension}, expected 1")
        return out


def _generator_orbit(field_: NumberField, image: FieldElem) -> list[FieldElem]:
    """θ, σ(θ), σ²(θ), … σⁿ(θ) by iterated substitution."""
    orbit = [field_.gen]
    for _ in range(field_.degree):
        orbit.append(field_.evaluate(orbit[-1].coeffs, image))
    return orbit


def certify_sigma(field_: NumberField, image: FieldElem) -> SigmaCertificate:
    n = field_.degree
    root_ok = field_.evaluate(field_.minpoly, image).is_zero()
    orbit = _generator_orbit(field_, image)
    order = next((k for k in range(1, n + 1) if orbit[k] == orbit[0]), None)
    fixed_dim = None
    if root_ok:
        # σ is a ring endomorphism here, so its matrix has columns σ(θ)^j
        S = RatMatrix.from_columns([(image ** j).coeffs for j in range(n)], rows=n)
        fixed_dim = exactlin.kernel(S - RatMatrix.identity(n)).cols
    return SigmaCertificate(root_ok, order, fixed_dim, n)


class CyclicExtension:
    """A number field together with a generator σ of a cyclic Galois group of order n."""

    def __init__(self, field_: NumberField, sigma_gen_image):
        if not isinstance(sigma_gen_image, FieldElem):
            sigma_gen_image = field_.element(sigma_gen_image)
        if sigma_gen_image.owner != field_:
            raise UsageError("σ(θ) must lie in the given field")
        cert = certify_sigma(field_, sigma_gen_image)
        if not cert.ok:
            raise ConstructionError("σ rejected: " + "; ".join(cert.failures()))
        self.field = field_
        self.sigma_gen_image = sigma_gen_image
        self.certificate = cert
        # σ^k(θ) for k = 0..n-1, fixed at construction
        self._orbit = tuple(_generator_orbit(field_, sigma_gen_image)[:field_.degree])

    @property
    def degree(self) -> int:
        return self.field.degree

    def __eq__(self, other):
        if not isinstance(other, CyclicExtension):
            return NotImplemented
        return self.field == other.field and self.sigma_gen_image == other.sigma_gen_image

    def __hash__(self):
        return hash((self.field, self.sigma_gen_image.coeffs))

    def __repr__(self):
        return f"CyclicExtension({format_poly(self.field.minpoly)}, σ(θ) = {self.sigma_gen_image})"

    def sigma(self, u: FieldElem, power: int = 1) -> FieldElem:
        if u.owner != self.field:
            raise UsageError("element is not in this extension")
        k = power % self.degree
        if k == 0:
            return u
        return self.field.evaluate(u.coeffs, self._orbit[k])

    def norm(self, u: FieldElem) -> Fraction:
        prod = self.field.one
        for k in range(self.degree):
            prod = prod * self.sigma(u, k)
        return prod.rational_value()

    def certify(self) -> SigmaCertificate:
        return certify_sigma(self.field, self.sigma_gen_image)


def apply_sigma(ext: CyclicExtension, u: FieldElem, power: int = 1) -> FieldElem:
    return ext.sigma(u, power)


def sigma_certify(ext: CyclicExtension) -> SigmaCertificate:
    return ext.certify()


def field_norm(ext: CyclicExtension, u: FieldElem) -> Fraction:
    return ext.norm(u)


def fe_arith(u: FieldElem, v: FieldElem, kind: str) -> FieldElem:
    ops = {"add": u.__add__, "sub": u.__sub__, "mul": u.__mul__, "div": u.__truediv__}
    try:
        return ops[kind](v)
    except KeyError:
        raise UsageError(f"unknown operation {kind!r}") from None


def gaussian_extension() -> CyclicExtension:
    """Q(i) = Q[t]/(t² + 1) with complex conjugation."""
    L = NumberField([1, 0, 1], name="i")
    return CyclicExtension(L, [0, -1])


def cubic_extension() -> CyclicExtension:
    """Q[t]/(t³ − 3t − 1) with σ(θ) = 2 − θ², the cyclic cubic of conductor 9.

    The roots are 2cos(π/9), 2cos(7π/9), 2cos(13π/9); t ↦ 2 − t² permutes them
    cyclically. (t ↦ t² − 2 does not: it maps them to roots of t³ − 3t + 1.)
    """
    L = NumberField([-1, -3, 0, 1])
    return CyclicExtension(L, [2, 0, -1])


def quadratic_extension(d) -> CyclicExtension:
    """Q(√d) = Q[t]/(t² − d) with √d ↦ −√d. ``d`` must not be a rational square."""
    L = NumberField([-to_rational(d), 0, 1], name="√" + str(d) if d != -1 else "i")
    return CyclicExtension(L, [0, -1])
