import random
from fractions import Fraction as F

import pytest

from cyclicalg.cycalg import invert_elem, minimal_polynomial
from cyclicalg.errors import DomainError, PreconditionError, ProofStepError, UsageError
from cyclicalg.sampling import random_invertible
from cyclicalg.subfields import (
    SubspaceWitness,
    centralizer,
    conjugate_subspace,
    is_maximal_subfield,
    l_image,
    malnormality_probe,
    sn_conjugator,
    span_and_certify,
    subspace,
    theorem2_demo,
    whole_algebra,
)


@pytest.fixture(scope="module")
def parts():
    from cyclicalg import cycalg
    H = cycalg.hamilton()
    i, j = H.theta, H.x
    return H, i, j, i * j


def test_witness_cannot_be_forged(parts):
    H, *_ = parts
    with pytest.raises(UsageError):
        SubspaceWitness(H, (H.one,), None, None)


def test_span_examples(parts):
    H, i, j, k = parts
    Q1 = span_and_certify(H, [H.one])
    assert Q1.dim == 1 and Q1.certs.is_subfield and not Q1.certs.is_maximal_subfield
    Li = span_and_certify(H, [i])
    assert Li.dim == 2 and Li.certs.is_subfield and Li.certs.is_maximal_subfield
    W = span_and_certify(H, [i, j])
    assert W.dim == 4 and not W.certs.commutative and not W.certs.is_subfield


def test_span_in_split_algebra_is_not_a_field(split):
    # {1, x} is a commutative subalgebra of M₂(Q) but contains the zero divisor 1 + x
    K = span_and_certify(split, [split.x])
    assert K.certs.commutative and K.certs.mult_closed
    assert not K.certs.is_subfield


def test_centralizer_examples(parts, cubic):
    H, i, j, k = parts
    Q1 = span_and_certify(H, [H.one])
    assert centralizer(H, Q1).dim == 4
    L = l_image(H)
    assert centralizer(H, L).same_space(L)
    Z = centralizer(H, whole_algebra(H))
    assert Z.dim == 1 and Z.contains(H.one)
    LC = l_image(cubic)
    assert centralizer(cubic, LC).same_space(LC)
    assert centralizer(cubic, whole_algebra(cubic)).dim == 1


def test_is_maximal_subfield_examples(parts):
    H, i, j, k = parts
    assert is_maximal_subfield(l_image(H))
    assert not is_maximal_subfield(span_and_certify(H, [H.one]))
    assert is_maximal_subfield(span_and_certify(H, [j]))
    with pytest.raises(UsageError):
        is_maximal_subfield("not a witness")


def test_sn_conjugator_examples(parts):
    H, i, j, k = parts
    g = sn_conjugator(H, i, i)
    assert g == H.one
    g = sn_conjugator(H, i, j)
    assert g == i + j  # golden: first kernel vector, content 1
    assert invert_elem(g) * i * g == j
    with pytest.raises(PreconditionError, match="not isomorphic"):
        sn_conjugator(H, i, 1 + i)


def test_sn_conjugator_in_split_algebra(split):
    # conjugating x to −x in M₂(Q): the intertwiner space contains invertible elements
    g = sn_conjugator(split, split.x, -split.x)
    assert g is not None and invert_elem(g) * split.x * g == -split.x


def test_conjugate_subspace_examples(parts):
    H, i, j, k = parts
    Kj = span_and_certify(H, [j])
    assert conjugate_subspace(Kj, H.one).same_space(Kj)
    assert invert_elem(1 + i) * j * (1 + i) == -k
    assert conjugate_subspace(Kj, 1 + i).same_space(span_and_certify(H, [k]))
    L = l_image(H)
    assert conjugate_subspace(L, j).same_space(L)
    with pytest.raises(DomainError):
        conjugate_subspace(Kj, H.zero)


def test_malnormality_probe_examples(parts, cubic):
    H, i, j, k = parts
    Kj = span_and_certify(H, [j])
    P = malnormality_probe(Kj, 1 + i)
    assert P.dim == 1 and P.contains(H.one)
    P = malnormality_probe(Kj, i)
    assert P.dim == 2 and P.same_space(Kj)
    L = l_image(H)
    assert malnormality_probe(L, j).same_space(L)
    LC = l_image(cubic)
    assert malnormality_probe(LC, cubic.x).dim == 3
    with pytest.raises(PreconditionError):
        malnormality_probe(Kj, 1 + j)


def test_conjugation_preserves_certificates(hamilton, cubic, rng):
    for D in (hamilton, cubic):
        L = l_image(D)
        for _ in range(5):
            y = random_invertible(rng, D, 3)
            C = conjugate_subspace(L, y)
            assert C.dim == L.dim
            assert C.certs.is_subfield and C.certs.is_maximal_subfield
            assert is_maximal_subfield(C)
            # double centralizer
            assert centralizer(D, centralizer(D, C)).same_space(C)


def test_probe_always_contains_centre(hamilton, rng):
    K = span_and_certify(hamilton, [hamilton.x])
    for _ in range(15):
        y = random_invertible(rng, hamilton, 3)
        if K.contains(y):
            continue
        P = malnormality_probe(K, y)
        assert P.dim >= 1 and P.contains(hamilton.one)
        assert all(K.contains(b) for b in P.basis)


def test_sn_recovers_random_conjugates(hamilton, cubic, rng):
    for D, trials in ((hamilton, 10), (cubic, 3)):
        L = l_image(D)
        for _ in range(trials):
            h = random_invertible(rng, D, 3)
            target = invert_elem(h) * D.theta * h
            g = sn_conjugator(D, D.theta, target)
            assert conjugate_subspace(L, g).same_space(conjugate_subspace(L, h))


def test_theorem2_demo_examples(parts, cubic):
    H, i, j, k = parts
    w = theorem2_demo(H, span_and_certify(H, [j]), j, i)
    assert w.passed and w.g == i + j and w.y == i
    w = theorem2_demo(H, l_image(H), i, i)
    assert w.passed and w.g == H.one and w.y == j
    w = theorem2_demo(cubic, l_image(cubic), cubic.theta, cubic.theta)
    assert w.passed and w.y == cubic.x and w.intersection.dim == 3


def test_theorem2_demo_on_conjugate_subfields(hamilton, cubic, rng):
    for D, trials in ((hamilton, 6), (cubic, 2)):
        for _ in range(trials):
            h = random_invertible(rng, D, 3)
            k_gen = invert_elem(h) * D.theta * h
            K = span_and_certify(D, [k_gen])
            assert theorem2_demo(D, K, k_gen, D.theta).passed


def test_theorem2_demo_preconditions(parts, split):
    H, i, j, k = parts
    with pytest.raises(PreconditionError, match="split"):
        theorem2_demo(split, l_image(split), split.theta, split.theta)
    with pytest.raises(PreconditionError, match="maximal"):
        theorem2_demo(H, span_and_certify(H, [H.one]), H.one, i)
    with pytest.raises(PreconditionError, match="generate"):
        theorem2_demo(H, span_and_certify(H, [j]), k, i)
    with pytest.raises(PreconditionError, match="minimal polynomial"):
        theorem2_demo(H, span_and_certify(H, [j]), 2 * j, i)


def test_theorem2_demo_split_override(split):
    # M₂(Q): L = Q(i) is still a maximal subfield and the mechanism runs with the override
    w = theorem2_demo(split, l_image(split), split.theta, split.theta, allow_split=True)
    assert w.passed and w.y == split.x


def test_theorem2_demo_reports_failed_step(parts, monkeypatch):
    H, i, j, k = parts
    from cyclicalg import subfields
    # sabotage the conjugator so that g⁻¹Lg ≠ K
    monkeypatch.setattr(subfields, "sn_conjugator", lambda D, u, v: D.one)
    with pytest.raises(ProofStepError) as info:
        theorem2_demo(H, span_and_certify(H, [j]), j, i)
    assert "conjugator g⁻¹Lg = K" in info.value.witness.failed_steps()
