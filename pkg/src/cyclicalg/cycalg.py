"""Cyclic algebras (L/Q, σ, a) = ⊕ L·xⁱ with xⁿ = a and x·b = σ(b)·x.

Elements are stored as n coefficients in L, the i-th being the coefficient of
xⁱ (coefficients on the left). The Q-coordinates of an element ("qvec") are
the concatenated power-basis coordinates, so index ``i*n + j`` holds the
coefficient of θʲ·xⁱ.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import factorial, gcd
from typing import Sequence

import numpy as np

from . import exactlin
from .errors import ConsistencyError, ConstructionError, DomainError, UsageError
from .exactlin import RatMatrix, to_rational
from .numfield import CyclicExtension, FieldElem, format_poly

PROVEN_DIVISION = "proven-division"
PROVEN_SPLIT = "proven-split"
UNKNOWN = "unknown"

#: default norm-search height used to classify algebras of degree ≥ 3
DEFAULT_STATUS_HEIGHT = 4


@dataclass(frozen=True)
class RelationReport:
    checks: tuple[tuple[str, bool], ...]

    @property
    def ok(self) -> bool:
        return all(passed for _, passed in self.checks)

    def failures(self) -> list[str]:
        return [name for name, passed in self.checks if not passed]


class CyclicAlgebra:
    """The cyclic algebra (L/Q, σ, a).

    Construction verifies the defining relations and that the centre is Q·1,
    then records a division status (``proven-division``, ``proven-split`` or
    ``unknown``). Split algebras are legal objects; ``is_split`` flags them.
    """

    def __init__(self, ext: CyclicExtension, a, *, check: bool = True,
                 status_height: int = DEFAULT_STATUS_HEIGHT):
        a = to_rational(a)
        if a == 0:
            raise DomainError("a must be nonzero")
        self.ext = ext
        self.a = a
        self.n = ext.degree
        self.L = ext.field
        self.split_witness: AlgElem | None = None
        self.split_note = ""
        self.status_evidence: dict = {}
        if check:
            report = verify_defining_relations(self)
            if not report.ok:
                raise ConstructionError("defining relation failed: " + "; ".join(report.failures()))
            if centre_dimension(self) != 1:
                raise ConstructionError("centre is not Q·1")
        self.division_status = self._classify(status_height)

    def __eq__(self, other):
        if not isinstance(other, CyclicAlgebra):
            return NotImplemented
        return self.ext == other.ext and self.a == other.a

    def __hash__(self):
        return hash((self.ext, self.a))

    def __repr__(self):
        return (f"CyclicAlgebra(L = Q[t]/({format_poly(self.L.minpoly)}), "
                f"σ(θ) = {self.ext.sigma_gen_image}, a = {self.a})")

    @property
    def dimension(self) -> int:
        return self.n * self.n

    @property
    def is_split(self) -> bool:
        return self.division_status == PROVEN_SPLIT

    # -- division status ----------------------------------------------------

    def _classify(self, height: int) -> str:
        if self.n == 1:
            return PROVEN_SPLIT
        if self.n == 2:
            from .brauer import QuaternionAlgebra, discriminant_of_quadratic, squarefree_part

            quat = QuaternionAlgebra(squarefree_part(discriminant_of_quadratic(self.L.minpoly)), self.a)
            ram = quat.ramification()
            self.status_evidence = {"quaternion": (quat.a, quat.b), "ramification": ram}
            if ram.is_zero():
                self._record_split(norm_representation_search(self.ext, self.a, max(height, 8)))
                return PROVEN_SPLIT
            return PROVEN_DIVISION
        u = norm_representation_search(self.ext, self.a, height)
        self.status_evidence = {"norm_search_height": height}
        if u is not None:
            self._record_split(u)
            return PROVEN_SPLIT
        return UNKNOWN

    def _record_split(self, u: FieldElem | None) -> None:
        if u is None:
            self.split_note = "split: trivial Brauer class"
            return
        # w = u⁻¹x has wⁿ = a / N(u) = 1, so (w - 1) is a zero divisor
        w = self.embed(u.inverse()) * self.x
        self.split_witness = w - self.one
        self.status_evidence["norm_witness"] = u
        if self.n == 2 and w == self.x:
            self.split_note = "split: x² = 1 admits zero divisors (x−1)(x+1) = 0"
        else:
            self.split_note = (f"split: a = N({u}), so w = ({u})⁻¹·x satisfies wⁿ = 1 "
                               f"and w − 1 is a zero divisor")

    # -- elements -----------------------------------------------------------

    def element(self, blocks: Sequence) -> AlgElem:
        """Build Σ bᵢ xⁱ from ``blocks[i]``, each a FieldElem or a coordinate list."""
        if len(blocks) > self.n:
            raise UsageError(f"at most {self.n} coefficients")
        coeffs = []
        for b in blocks:
            if isinstance(b, FieldElem):
                if b.owner != self.L:
                    raise UsageError("coefficient from a different field")
                coeffs.append(b)
            elif isinstance(b, (int, Fraction, str)):
                coeffs.append(self.L.rational(b))
            else:
                coeffs.append(self.L.element(b))
        coeffs += [self.L.zero] * (self.n - len(coeffs))
        return AlgElem(self, tuple(coeffs))

    def embed(self, b) -> AlgElem:
        """The image of b ∈ L (coefficient index 0)."""
        return self.element([b])

    def scalar(self, q) -> AlgElem:
        return self.embed(self.L.rational(q))

    @property
    def one(self) -> AlgElem:
        return self.scalar(1)

    @property
    def zero(self) -> AlgElem:
        return self.scalar(0)

    @property
    def x(self) -> AlgElem:
        if self.n == 1:
            return self.scalar(self.a)
        return self.element([self.L.zero, self.L.one])

    @property
    def theta(self) -> AlgElem:
        return self.embed(self.L.gen)

    def q_basis(self) -> list[AlgElem]:
        return [self.from_qvec([int(k == m) for k in range(self.dimension)])
                for m in range(self.dimension)]

    def from_qvec(self, vec: Sequence) -> AlgElem:
        vec = [to_rational(v) for v in vec]
        if len(vec) != self.dimension:
            raise UsageError(f"expected {self.dimension} coordinates, got {len(vec)}")
        n = self.n
        return AlgElem(self, tuple(self.L.element(vec[i * n:(i + 1) * n]) for i in range(n)))

    def left_matrix(self, u: AlgElem) -> RatMatrix:
        """Matrix over Q of d ↦ u·d in the qvec coordinates."""
        return RatMatrix.from_columns([(u * e).qvec() for e in self.q_basis()], rows=self.dimension)

    def right_matrix(self, u: AlgElem) -> RatMatrix:
        """Matrix over Q of d ↦ d·u."""
        return RatMatrix.from_columns([(e * u).qvec() for e in self.q_basis()], rows=self.dimension)


@dataclass(frozen=True, eq=False)
class AlgElem:
    owner: CyclicAlgebra
    coeffs: tuple

    def __post_init__(self):
        if len(self.coeffs) != self.owner.n:
            raise UsageError(f"expected {self.owner.n} coefficients")

    def _coerce(self, other) -> AlgElem:
        if isinstance(other, (int, Fraction)):
            return self.owner.scalar(other)
        if isinstance(other, FieldElem):
            return self.owner.embed(other)
        if not isinstance(other, AlgElem):
            return NotImplemented
        if other.owner is not self.owner and other.owner != self.owner:
            raise UsageError("elements of different algebras")
        return other

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return AlgElem(self.owner, tuple(p + q for p, q in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return AlgElem(self.owner, tuple(p - q for p, q in zip(self.coeffs, other.coeffs)))

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return AlgElem(self.owner, tuple(-p for p in self.coeffs))

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return alg_mul(self, other)

    def __rmul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return alg_mul(other, self)

    def __pow__(self, k: int):
        if k < 0:
            inv = invert_elem(self)
            if inv is None:
                raise DomainError("negative power of a non-invertible element")
            return inv ** (-k)
        result, base = self.owner.one, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, FieldElem)):
            other = self._coerce(other)
        if not isinstance(other, AlgElem):
            return NotImplemented
        return self.owner == other.owner and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(c.coeffs for c in self.coeffs))

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def qvec(self) -> tuple:
        return tuple(q for c in self.coeffs for q in c.coeffs)

    def __repr__(self):
        return f"AlgElem({self})"

    def __str__(self):
        parts = []
        for i, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            coef = str(c)
            if not mono:
                parts.append(coef)
            elif coef == "1":
                parts.append(mono)
            else:
                parts.append(f"({coef})*{mono}")
        return " + ".join(parts) if parts else "0"


def make_algebra(ext: CyclicExtension, a, **kwargs) -> CyclicAlgebra:
    return CyclicAlgebra(ext, a, **kwargs)


def alg_mul(u: AlgElem, v: AlgElem) -> AlgElem:
    """(b xⁱ)(c xʲ) = b σⁱ(c) x^{i+j}, with x^{i+j} = a·x^{i+j−n} once i + j ≥ n."""
    D = u.owner
    if v.owner is not D and v.owner != D:
        raise UsageError("elements of different algebras")
    n, ext = D.n, D.ext
    out = [D.L.zero] * n
    for i, b in enumerate(u.coeffs):
        if b.is_zero():
            continue
        for j, c in enumerate(v.coeffs):
            if c.is_zero():
                continue
            term = b * ext.sigma(c, i)
            k = i + j
            if k >= n:
                term = term * D.a
                k -= n
            out[k] = out[k] + term
    return AlgElem(D, tuple(out))


def verify_defining_relations(D: CyclicAlgebra) -> RelationReport:
    """Check xⁿ = a and x·θᵏ = σ(θᵏ)·x for k = 0..n−1.

    The left sides go through the multiplication rule; σ(θᵏ) on the right is
    computed afresh as σ(θ)ᵏ from the stored generator image.
    """
    checks = []
    x = D.x
    checks.append((f"x^{D.n} = a", x ** D.n == D.scalar(D.a)))
    image = D.ext.sigma_gen_image
    for k in range(D.n):
        lhs = x * D.embed(D.L.gen ** k)
        rhs = D.embed(image ** k) * x
        checks.append((f"x·θ^{k} = σ(θ^{k})·x", lhs == rhs))
    return RelationReport(tuple(checks))


def centre_dimension(D: CyclicAlgebra) -> int:
    gens = [D.theta, D.x]
    stacked = RatMatrix.zeros(0, D.dimension).vstack(
        *[D.left_matrix(g) - D.right_matrix(g) for g in gens])
    return exactlin.kernel(stacked).cols


# -- splitting representation and reduced norm/trace --------------------------


def splitting_rep(u: AlgElem) -> list[list[FieldElem]]:
    """Matrix of d ↦ u·d on D as a right L-space with basis 1, x, …, x^{n−1}.

    u·xᵏ = Σᵢ bᵢ x^{i+k} = Σᵢ x^m σ^{−m}(bᵢ) (times a if i + k ≥ n), m = (i+k) mod n.
    """
    D = u.owner
    n, ext = D.n, D.ext
    M = [[D.L.zero for _ in range(n)] for _ in range(n)]
    for k in range(n):
        for i, b in enumerate(u.coeffs):
            if b.is_zero():
                continue
            m = i + k
            entry = ext.sigma(b, -(m % n))
            if m >= n:
                entry = entry * D.a
            M[m % n][k] = M[m % n][k] + entry
    return M


def field_matrix_mul(A, B):
    n, m, p = len(A), len(B), len(B[0])
    zero = A[0][0] - A[0][0]
    return [[sum((A[i][k] * B[k][j] for k in range(m)), zero) for j in range(p)] for i in range(n)]


def field_det(M) -> FieldElem:
    """Determinant of a square matrix with number-field entries, by elimination."""
    A = [list(r) for r in M]
    n = len(A)
    field_ = A[0][0].owner
    result = field_.one
    for c in range(n):
        piv = next((i for i in range(c, n) if not A[i][c].is_zero()), None)
        if piv is None:
            return field_.zero
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            result = -result
        p = A[c][c]
        result = result * p
        inv = p.inverse()
        for i in range(c + 1, n):
            if not A[i][c].is_zero():
                f = A[i][c] * inv
                A[i] = [x - f * y for x, y in zip(A[i], A[c])]
    return result


def reduced_norm(u: AlgElem) -> Fraction:
    value = field_det(splitting_rep(u))
    if not value.is_rational():
        raise ConsistencyError(f"reduced norm {value} is not rational; σ data is broken")
    return value.rational_value()


def reduced_trace(u: AlgElem) -> Fraction:
    M = splitting_rep(u)
    value = M[0][0]
    for k in range(1, len(M)):
        value = value + M[k][k]
    if not value.is_rational():
        raise ConsistencyError(f"reduced trace {value} is not rational; σ data is broken")
    return value.rational_value()


def invert_elem(u: AlgElem) -> AlgElem | None:
    """u⁻¹, or ``None`` when Nrd(u) = 0."""
    D = u.owner
    if reduced_norm(u) == 0:
        return None
    w = exactlin.solve(D.left_matrix(u), RatMatrix.column(D.one.qvec()))
    if w is None:
        raise ConsistencyError(f"Nrd({u}) ≠ 0 but u·w = 1 has no solution")
    inv = D.from_qvec(w.col(0))
    if u * inv != D.one or inv * u != D.one:
        raise ConsistencyError(f"one-sided inverse for {u}")
    return inv


def minimal_polynomial(u: AlgElem) -> tuple[Fraction, ...]:
    """Monic minimal polynomial over Q, coefficients with the constant term first."""
    D = u.owner
    powers = [D.one.qvec()]
    current = D.one
    for k in range(1, D.dimension + 1):
        current = current * u
        A = RatMatrix.from_columns(powers, rows=D.dimension)
        sol = exactlin.solve(A, RatMatrix.column(current.qvec()))
        if sol is not None:
            return tuple(-c for c in sol.col(0)) + (Fraction(1),)
        powers.append(current.qvec())
    raise ConsistencyError("no linear dependence among powers up to the algebra dimension")


def regular_det(u: AlgElem) -> Fraction:
    """det of left multiplication by u on D over Q; equals Nrd(u)ⁿ."""
    return exactlin.det(u.owner.left_matrix(u))


# -- norm search --------------------------------------------------------------


def _candidate_values(h: int) -> list[int]:
    out = [0]
    for k in range(1, h + 1):
        out += [k, -k]
    return out


def _batched_det(mats: np.ndarray) -> np.ndarray:
    """Exact determinants of a stack of small integer matrices (Leibniz expansion)."""
    n = mats.shape[-1]
    total = np.zeros(mats.shape[0], dtype=mats.dtype)
    for perm in itertools.permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = np.ones(mats.shape[0], dtype=mats.dtype)
        for row, col in enumerate(perm):
            term = term * mats[:, row, col]
        total = total - term if inversions % 2 else total + term
    return total


def norm_representation_search(ext: CyclicExtension, a, height: int) -> FieldElem | None:
    """Search u = (c₀ + c₁θ + … )/q with |cᵢ| ≤ height, 1 ≤ q ≤ height, for N(u) = a.

    A hit certifies that (L/Q, σ, a) is split. ``None`` only means no witness
    exists in the searched box.
    """
    a = to_rational(a)
    if height < 1:
        raise UsageError("height must be positive")
    L = ext.field
    n = L.degree
    basis_mats = [b.mult_matrix() for b in L.power_basis()]
    den = 1
    for M in basis_mats:
        for e in M.entries:
            den = den * e.denominator // gcd(den, e.denominator)
    int_mats = np.array([[[int(M[i, j] * den) for j in range(n)] for i in range(n)] for M in basis_mats],
                        dtype=object)
    entry_bound = height * n * max(1, max(abs(int(v)) for v in int_mats.flat))
    det_bound = factorial(n) * entry_bound ** n * a.denominator
    target_bound = abs(a.numerator) * (height * den) ** n
    dtype = np.int64 if max(det_bound, target_bound) < 2 ** 62 else object
    int_mats = int_mats.astype(dtype)

    values = _candidate_values(height)
    rest = np.array(list(itertools.product(values, repeat=n - 1)), dtype=dtype).reshape(-1, n - 1)
    chunks = []
    for c0 in values:
        coords = np.hstack([np.full((rest.shape[0], 1), c0, dtype=dtype), rest])
        mats = np.einsum("ki,ijl->kjl", coords, int_mats) if dtype is np.int64 else \
            np.array([sum(int(c) * int_mats[i] for i, c in enumerate(row)) for row in coords], dtype=object)
        chunks.append((coords, _batched_det(mats)))

    # det(den·M(c)) = denⁿ·N(c); want N(c) = a·qⁿ
    for q in range(1, height + 1):
        target = a.numerator * q ** n * den ** n
        hits = []
        for coords, dets in chunks:
            idx = np.nonzero(dets * a.denominator == target)[0] if dtype is np.int64 else \
                [k for k, d in enumerate(dets) if d * a.denominator == target]
            hits.extend(tuple(int(v) for v in coords[k]) for k in idx)
        if hits:
            c = min(hits, key=_witness_key)
            u = L.element([Fraction(v, q) for v in c])
            if ext.norm(u) != a:
                raise ConsistencyError(f"norm search produced a false witness {u}")
            return u
    return None


def _witness_key(c: tuple) -> tuple:
    # smallest height first, then fewest power-basis terms, then the 0, 1, −1, 2, … order
    top = max((k for k, v in enumerate(c) if v), default=0)
    return (max(abs(v) for v in c), top, tuple(2 * abs(v) - (v > 0) for v in c))


def conjugation_check(D: CyclicAlgebra) -> bool:
    """x·b·x⁻¹ = σ(b) on every power-basis b."""
    x = D.x
    x_inv = invert_elem(x)
    return all(x * D.embed(b) * x_inv == D.embed(D.ext.sigma(b)) for b in D.L.power_basis())


def hamilton() -> CyclicAlgebra:
    """(Q(i)/Q, conj, −1): i = θ, j = x, k = θx."""
    from .numfield import gaussian_extension

    return CyclicAlgebra(gaussian_extension(), -1)


def cubic_algebra(a=2) -> CyclicAlgebra:
    from .numfield import cubic_extension

    return CyclicAlgebra(cubic_extension(), a)


def split_gaussian() -> CyclicAlgebra:
    """(Q(i)/Q, conj, 1), which is M₂(Q)."""
    from .numfield import gaussian_extension

    return CyclicAlgebra(gaussian_extension(), 1)
