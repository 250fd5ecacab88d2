"""Q-subspaces of a cyclic algebra: subfields, centralizers, conjugation.

Subspaces are stored extensionally as Q-bases. Every predicate (closure,
commutativity, self-centralizing, intersection with a conjugate) reduces to
exact linear algebra on the qvec coordinates.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

from . import exactlin
from .cycalg import AlgElem, CyclicAlgebra, invert_elem, minimal_polynomial
from .errors import ConsistencyError, DomainError, PreconditionError, ProofStepError, UsageError
from .exactlin import RatMatrix
from .numfield import format_poly

#: number of integer combinations tried when hunting an invertible conjugator in a split algebra
SPLIT_SEARCH_TRIALS = 200


@dataclass(frozen=True)
class Certs:
    contains_one: bool
    mult_closed: bool
    commutative: bool
    is_subfield: bool
    is_maximal_subfield: bool


class SubspaceWitness:
    """A Q-subspace of an algebra with certified structural flags.

    Only :func:`span_and_certify` and the helpers in this module create
    these; the flags are never supplied by callers.
    """

    __slots__ = ("algebra", "basis", "certs", "_matrix")

    def __init__(self, algebra: CyclicAlgebra, basis: tuple, certs: Certs, matrix: RatMatrix, _token=None):
        if _token is not _TOKEN:
            raise UsageError("SubspaceWitness objects come from span_and_certify")
        self.algebra = algebra
        self.basis = basis
        self.certs = certs
        self._matrix = matrix

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def matrix(self) -> RatMatrix:
        """Basis as columns of qvec coordinates."""
        return self._matrix

    def contains(self, u: AlgElem) -> bool:
        return exactlin.in_span(self._matrix, u.qvec())

    def same_space(self, other: SubspaceWitness) -> bool:
        return exactlin.same_span(self._matrix, other._matrix)

    def __repr__(self):
        return f"SubspaceWitness(dim={self.dim}, basis=[{', '.join(str(b) for b in self.basis)}])"


_TOKEN = object()


def _basis_matrix(algebra: CyclicAlgebra, elems: Sequence[AlgElem]) -> RatMatrix:
    return RatMatrix.from_columns([e.qvec() for e in elems], rows=algebra.dimension)


def _independent(algebra: CyclicAlgebra, elems: Sequence[AlgElem]) -> list[AlgElem]:
    if not elems:
        return []
    _, pivots = exactlin.rref(_basis_matrix(algebra, elems))
    return [elems[j] for j in pivots]


def _sample_combinations(basis: Sequence[AlgElem]) -> list[AlgElem]:
    """Basis elements, their sum, and a few fixed integer combinations."""
    samples = list(basis)
    if len(basis) > 1:
        samples.append(sum(basis[1:], basis[0]))
        for shift in (1, 2):
            combo = basis[0] * 0
            for k, b in enumerate(basis):
                combo = combo + b * ((k + shift) % 3 + 1)
            samples.append(combo)
    return samples


def _certify(algebra: CyclicAlgebra, basis: Sequence[AlgElem]) -> SubspaceWitness:
    basis = tuple(basis)
    M = _basis_matrix(algebra, basis)
    if exactlin.rank(M) != len(basis):
        raise ConsistencyError("basis is not linearly independent")
    contains_one = exactlin.in_span(M, algebra.one.qvec())
    mult_closed = all(exactlin.in_span(M, (u * v).qvec()) for u in basis for v in basis)
    commutative = all(u * v == v * u for u, v in itertools.combinations(basis, 2))
    is_subfield = contains_one and mult_closed and commutative and all(
        invert_elem(s) is not None for s in _sample_combinations(basis) if not s.is_zero())
    maximal = False
    if is_subfield and len(basis) == algebra.n:
        proto = SubspaceWitness(algebra, basis, Certs(contains_one, mult_closed, commutative, True, False),
                                M, _token=_TOKEN)
        maximal = _centralizer_matrix(algebra, proto).cols == len(basis)
    certs = Certs(contains_one, mult_closed, commutative, is_subfield, maximal)
    return SubspaceWitness(algebra, basis, certs, M, _token=_TOKEN)


def _canonical_basis(algebra: CyclicAlgebra, M: RatMatrix) -> list[AlgElem]:
    """A reduced basis for span(M): rows of the RREF of Mᵀ."""
    if M.cols == 0:
        return []
    R, pivots = exactlin.rref(M.T)
    return [algebra.from_qvec(R[r]) for r in range(len(pivots))]


def span_and_certify(algebra: CyclicAlgebra, generators: Sequence[AlgElem]) -> SubspaceWitness:
    """The subalgebra generated by {1} ∪ generators, with certified flags."""
    if not generators:
        raise UsageError("need at least one generator")
    for g in generators:
        if g.owner != algebra:
            raise UsageError("generator from a different algebra")
    basis = _independent(algebra, [algebra.one] + list(generators))
    while True:
        products = [u * v for u in basis for v in basis]
        grown = _independent(algebra, basis + products)
        if len(grown) > algebra.dimension:
            raise ConsistencyError("span grew beyond the algebra dimension")
        if len(grown) == len(basis):
            break
        basis = grown
    M = _basis_matrix(algebra, basis)
    return _certify(algebra, _canonical_basis(algebra, M))


def subspace(algebra: CyclicAlgebra, elems: Sequence[AlgElem]) -> SubspaceWitness:
    """Certify the Q-span of ``elems`` as given (no multiplicative closure)."""
    M = _basis_matrix(algebra, elems) if elems else RatMatrix.zeros(algebra.dimension, 0)
    return _certify(algebra, _canonical_basis(algebra, M))


def l_image(algebra: CyclicAlgebra) -> SubspaceWitness:
    """The distinguished maximal subfield L (coefficient index 0)."""
    return span_and_certify(algebra, [algebra.theta])


def whole_algebra(algebra: CyclicAlgebra) -> SubspaceWitness:
    return subspace(algebra, algebra.q_basis())


def _centralizer_matrix(algebra: CyclicAlgebra, S: SubspaceWitness) -> RatMatrix:
    blocks = [algebra.left_matrix(s) - algebra.right_matrix(s) for s in S.basis]
    stacked = RatMatrix.zeros(0, algebra.dimension).vstack(*blocks)
    return exactlin.kernel(stacked)


def centralizer(algebra: CyclicAlgebra, S: SubspaceWitness) -> SubspaceWitness:
    """{d ∈ D : d·s = s·d for every basis element s of S}."""
    return _certify(algebra, _canonical_basis(algebra, _centralizer_matrix(algebra, S)))


def is_maximal_subfield(K: SubspaceWitness) -> bool:
    if not isinstance(K, SubspaceWitness):
        raise UsageError("expected a certified SubspaceWitness")
    if not K.certs.is_subfield:
        return False
    return K.dim == K.algebra.n and centralizer(K.algebra, K).same_space(K)


def sn_conjugator(algebra: CyclicAlgebra, u: AlgElem, v: AlgElem) -> AlgElem | None:
    """An invertible g with g⁻¹·u·g = v, i.e. a nonzero solution of u·g = g·v.

    The candidate is the first kernel vector (canonical column order) scaled
    to coprime integer coordinates. If that is not invertible, which can only
    happen in a split algebra, small integer combinations of the solution
    space are tried; ``None`` if none is invertible.
    """
    pu, pv = minimal_polynomial(u), minimal_polynomial(v)
    if pu != pv:
        raise PreconditionError(
            f"subfields not isomorphic; Skolem–Noether does not apply "
            f"(minimal polynomials {format_poly(pu)} vs {format_poly(pv)})")
    K = exactlin.kernel(algebra.left_matrix(u) - algebra.right_matrix(v))
    if K.cols == 0:
        raise ConsistencyError("intertwining space is zero although minimal polynomials agree")
    solutions = [algebra.from_qvec(exactlin.integral_primitive(c)) for c in K.columns()]
    candidates = itertools.chain(solutions, _small_combinations(solutions))
    for g in itertools.islice(candidates, SPLIT_SEARCH_TRIALS):
        g_inv = invert_elem(g)
        if g_inv is None:
            continue
        if g_inv * u * g != v:
            raise ConsistencyError(f"conjugator {g} fails g⁻¹ug = v")
        return g
    return None


def _small_combinations(basis: list[AlgElem]):
    coeff_range = [0, 1, -1, 2, -2]
    for coeffs in itertools.product(coeff_range, repeat=len(basis)):
        if sum(1 for c in coeffs if c) < 2:
            continue
        yield sum((b * c for b, c in zip(basis, coeffs)), basis[0] * 0)


def conjugate_subspace(K: SubspaceWitness, y: AlgElem) -> SubspaceWitness:
    """y⁻¹·K·y."""
    y_inv = invert_elem(y)
    if y_inv is None:
        raise DomainError(f"{y} is not invertible")
    W = subspace(K.algebra, [y_inv * k * y for k in K.basis])
    if W.dim != K.dim:
        raise ConsistencyError("conjugation changed the dimension")
    return W


def malnormality_probe(K: SubspaceWitness, y: AlgElem) -> SubspaceWitness:
    """K ∩ y⁻¹Ky for y ∉ K. Dimension 1 means the intersection is Q·1."""
    if K.contains(y):
        raise PreconditionError(f"{y} lies in K; the probe quantifies over elements outside K")
    conj = conjugate_subspace(K, y)
    inter = exactlin.intersect_subspaces(K.matrix, conj.matrix)
    return _certify(K.algebra, _canonical_basis(K.algebra, inter))


@dataclass
class ProofStep:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class Theorem2Witness:
    """Outcome of the conjugation pipeline on one instance."""

    g: AlgElem | None = None
    y: AlgElem | None = None
    intersection: SubspaceWitness | None = None
    steps: list[ProofStep] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return len(self.steps) == 5 and all(s.passed for s in self.steps)

    def failed_steps(self) -> list[str]:
        return [s.name for s in self.steps if not s.passed]


def theorem2_demo(algebra: CyclicAlgebra, K: SubspaceWitness, k_gen: AlgElem, l_gen: AlgElem,
                  *, allow_split: bool = False) -> Theorem2Witness:
    """Run the conjugation argument on a concrete maximal subfield K ≅ L.

    1. g with g⁻¹Lg = K (Skolem–Noether conjugator from l_gen to k_gen);
    2. y = g⁻¹xg;
    3. y ∉ K;
    4. y⁻¹Ky = K;
    5. K ∩ y⁻¹Ky = K, of dimension n > 1.

    Raises :class:`ProofStepError` (with the partial witness) if any step fails.
    """
    if algebra.is_split and not allow_split:
        raise PreconditionError(f"{algebra} is split ({algebra.split_note}); pass allow_split to override")
    if K.algebra != algebra:
        raise UsageError("K belongs to a different algebra")
    if not is_maximal_subfield(K):
        raise PreconditionError("K is not a certified maximal subfield")
    if not span_and_certify(algebra, [k_gen]).same_space(K):
        raise PreconditionError(f"{k_gen} does not generate K")
    L = l_image(algebra)
    if not span_and_certify(algebra, [l_gen]).same_space(L):
        raise PreconditionError(f"{l_gen} does not generate the distinguished subfield L")
    if minimal_polynomial(l_gen) != minimal_polynomial(k_gen):
        raise PreconditionError("l_gen and k_gen have different minimal polynomials")

    w = Theorem2Witness()
    g = sn_conjugator(algebra, l_gen, k_gen)
    if g is None:
        w.steps.append(ProofStep("conjugator g⁻¹Lg = K", False, "no invertible intertwiner found"))
        raise ProofStepError("step 1 failed: no Skolem–Noether conjugator", w)
    w.g = g
    gLg = conjugate_subspace(L, g)
    w.steps.append(ProofStep("conjugator g⁻¹Lg = K", gLg.same_space(K), f"g = {g}"))

    g_inv = invert_elem(g)
    y = g_inv * algebra.x * g
    w.y = y
    w.steps.append(ProofStep("y = g⁻¹xg", g * y == algebra.x * g and invert_elem(y) is not None,
                             f"y = {y}"))

    outside = not K.contains(y)
    w.steps.append(ProofStep("y ∉ K", outside, "x ∉ L = C_D(L)"))

    yKy = conjugate_subspace(K, y)
    w.steps.append(ProofStep("y⁻¹Ky = K", yKy.same_space(K), f"dim y⁻¹Ky = {yKy.dim}"))

    if outside:
        inter = malnormality_probe(K, y)
        w.intersection = inter
        ok = inter.same_space(K) and inter.dim == algebra.n > 1
        w.steps.append(ProofStep("K ∩ y⁻¹Ky = K ⊋ Q", ok, f"dim K ∩ y⁻¹Ky = {inter.dim}"))
    else:
        w.steps.append(ProofStep("K ∩ y⁻¹Ky = K ⊋ Q", False, "probe undefined since y ∈ K"))

    if not w.passed:
        raise ProofStepError("proof step(s) failed: " + ", ".join(w.failed_steps()), w)
    return w

