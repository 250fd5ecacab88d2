import itertools
import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cyclicalg import brauer, cycalg
from cyclicalg.brauer import (
    INF,
    BrauerClass2,
    Place,
    QuaternionAlgebra,
    albert_form,
    albert_form_isotropic,
    biquaternion_verdict,
    class_add,
    classes_independent,
    discrepancy_flag,
    hilbert_oracle,
    hilbert_symbol,
    quat_to_cyclic,
    quaternion_is_division,
    ramification_set,
)
from cyclicalg.errors import DomainError, UsageError

GRID = (1, -1, 2, -2, 3, -3, 5, -5, 6, -6, 7, -7, 10, -10)
PLACES = (INF, Place(2), Place(3), Place(5), Place(7))


def ram(*places):
    return BrauerClass2(frozenset(brauer.place(v) for v in places))


def test_symbol_examples():
    assert hilbert_symbol(-1, -1, "inf") == -1
    assert hilbert_symbol(-1, -1, 2) == -1
    assert hilbert_symbol(-1, -7, 2) == 1
    assert hilbert_symbol(-1, -7, 7) == -1
    assert hilbert_symbol(2, 3, 3) == -1
    with pytest.raises(DomainError):
        hilbert_symbol(0, 1, 2)


def test_no_primitive_sum_of_three_squares_mod_8():
    # independent check of (−1, −1)_2 = −1: z² + x² + y² ≡ 0 mod 8 forces all even
    sols = [(x, y, z) for x, y, z in itertools.product(range(8), repeat=3)
            if (x * x + y * y + z * z) % 8 == 0 and any(c % 2 for c in (x, y, z))]
    assert sols == []


def test_oracle_examples():
    for v in PLACES:
        assert hilbert_oracle(1, 1, v) == 1
    assert hilbert_oracle(-1, -1, 2) == -1
    assert hilbert_oracle(2, 3, 3) == -1
    assert hilbert_oracle(-1, -7, 2) == 1
    assert hilbert_oracle(-1, -7, 7) == -1


def test_oracle_agrees_on_grid():
    for a, b in itertools.product(GRID, repeat=2):
        for v in PLACES:
            assert hilbert_symbol(a, b, v) == hilbert_oracle(a, b, v), (a, b, v)


def test_oracle_agrees_on_random_rationals():
    rng = random.Random(99)
    for _ in range(200):
        a = F(rng.choice([-1, 1]) * rng.randint(1, 60), rng.randint(1, 12))
        b = F(rng.choice([-1, 1]) * rng.randint(1, 60), rng.randint(1, 12))
        for v in PLACES:
            assert hilbert_symbol(a, b, v) == hilbert_oracle(a, b, v), (a, b, v)


def test_oracle_larger_prime():
    for a, b in [(11, 2), (11, 3), (-11, -1), (22, 7), (13, 5)]:
        assert hilbert_symbol(a, b, 11) == hilbert_oracle(a, b, 11)


def test_product_formula_random():
    rng = random.Random(5)
    for _ in range(100):
        a, b = rng.choice([-1, 1]) * rng.randint(1, 3000), rng.choice([-1, 1]) * rng.randint(1, 3000)
        places = [INF] + [Place(p) for p in set(brauer.factor(a * b)) | {2}]
        prod = 1
        for v in places:
            prod *= hilbert_symbol(a, b, v)
        assert prod == 1, (a, b)
        assert len(ramification_set(QuaternionAlgebra(a, b)).ram) % 2 == 0


nonzero_ints = st.integers(min_value=-400, max_value=400).filter(bool)
nonzero_q = st.builds(F, nonzero_ints, st.integers(min_value=1, max_value=30))
places = st.sampled_from(PLACES + (Place(11), Place(13)))


@settings(max_examples=200, deadline=None)
@given(nonzero_q, nonzero_q, nonzero_q, places)
def test_symmetry_and_bilinearity(a, b1, b2, v):
    assert hilbert_symbol(a, b1, v) == hilbert_symbol(b1, a, v)
    assert hilbert_symbol(a, b1 * b2, v) == hilbert_symbol(a, b1, v) * hilbert_symbol(a, b2, v)


@settings(max_examples=200, deadline=None)
@given(nonzero_q, nonzero_q, nonzero_q, places)
def test_square_class_invariance(a, b, s, v):
    assert hilbert_symbol(a * s * s, b, v) == hilbert_symbol(a, b, v)


def test_ramification_examples():
    assert ramification_set(QuaternionAlgebra(-1, -1)) == ram(2, "inf")
    assert ramification_set(QuaternionAlgebra(-1, -7)) == ram(7, "inf")
    for b in (-7, 2, 3, F(-5, 3)):
        assert ramification_set(QuaternionAlgebra(1, b)).is_zero()
    assert ramification_set(QuaternionAlgebra(2, 3)) == ram(2, 3)


def test_ramification_respects_trial_division_bound():
    big_prime = 1_000_003
    with pytest.raises(UsageError, match="trial-division"):
        ramification_set(QuaternionAlgebra(-1, big_prime * 1_000_033), bound=1000)
    # a prime cofactor is accepted when it is ≤ bound²
    assert ramification_set(QuaternionAlgebra(-1, big_prime), bound=1001) is not None


def test_class_arithmetic_examples():
    c1, c2 = ram(2, "inf"), ram(7, "inf")
    assert class_add(c1, c1).is_zero()
    assert class_add(c1, c2) == ram(2, 7)
    assert classes_independent(c1, c2)
    assert not classes_independent(c1, c1)
    assert not classes_independent(BrauerClass2(), c1)
    with pytest.raises(UsageError):
        ram(2)


def test_class_group_axioms():
    rng = random.Random(3)
    pool = [INF] + [Place(p) for p in (2, 3, 5, 7, 11, 13)]
    def rand_class():
        size = rng.choice([0, 2, 4, 6])
        return BrauerClass2(frozenset(rng.sample(pool, size)))
    zero = BrauerClass2()
    for _ in range(100):
        a, b, c = rand_class(), rand_class(), rand_class()
        assert (a + b) + c == a + (b + c)
        assert a + b == b + a
        assert a + zero == a
        assert (a + a).is_zero()


def test_quaternion_is_division_examples():
    assert quaternion_is_division(QuaternionAlgebra(-1, -1))
    assert not quaternion_is_division(QuaternionAlgebra(1, 5))
    assert quaternion_is_division(QuaternionAlgebra(2, 3))


def test_albert_examples():
    H = QuaternionAlgebra(-1, -1)
    assert albert_form(H, H) == (-1, -1, -1, 1, 1, 1)
    assert albert_form_isotropic(H, H)
    Q2 = QuaternionAlgebra(-1, -7)
    assert albert_form(H, Q2) == (-1, -1, -1, 1, 7, 7)
    assert albert_form_isotropic(H, Q2)
    assert albert_form_isotropic(QuaternionAlgebra(2, 3), QuaternionAlgebra(-1, -1))


def test_biquaternion_verdict_examples():
    H, Q2 = QuaternionAlgebra(-1, -1), QuaternionAlgebra(-1, -7)
    v = biquaternion_verdict(H, Q2)
    assert v.independent and v.albert_isotropic and not v.division and v.discrepancy
    v = biquaternion_verdict(H, H)
    assert not v.independent and not v.division and not v.discrepancy
    v = biquaternion_verdict(QuaternionAlgebra(1, 1), H)
    assert not v.independent and not v.division and not v.discrepancy
    assert v.ram1.is_zero()


def test_discrepancy_flag_truth_table():
    assert discrepancy_flag(True, True)
    assert not discrepancy_flag(True, False)
    assert not discrepancy_flag(False, True)
    assert discrepancy_flag(False, False)


def test_quat_to_cyclic_examples(hamilton):
    model = quat_to_cyclic(QuaternionAlgebra(-1, -1))
    assert model.algebra == hamilton
    model = quat_to_cyclic(QuaternionAlgebra(-1, -7))
    assert model.algebra.a == -7 and model.algebra.ext == hamilton.ext
    with pytest.raises(DomainError, match="split coordinate"):
        quat_to_cyclic(QuaternionAlgebra(4, 3))


@pytest.mark.parametrize("ab", [(-1, -1), (-1, -7), (2, 3), (F(3, 2), -5), (5, 1)])
def test_quat_to_cyclic_norm_form(ab):
    Q = QuaternionAlgebra(*ab)
    model = quat_to_cyclic(Q)
    i, j, k = model.i, model.j, model.k
    assert i * i == model.algebra.scalar(Q.a)
    assert j * j == model.algebra.scalar(Q.b)
    assert j * i == -k
    rng = random.Random(hash(ab) & 0xFFFF)
    for _ in range(25):
        t, u, v, w = (F(rng.randint(-6, 6), rng.randint(1, 3)) for _ in range(4))
        assert cycalg.reduced_norm(model.image(t, u, v, w)) == Q.norm_form(t, u, v, w)


def test_cyclic_division_status_matches_quaternion():
    for ab in [(-1, -1), (-1, -7), (2, 3), (-1, 2), (3, 5)]:
        model = quat_to_cyclic(QuaternionAlgebra(*ab))
        expected = cycalg.PROVEN_DIVISION if quaternion_is_division(QuaternionAlgebra(*ab)) else cycalg.PROVEN_SPLIT
        assert model.algebra.division_status == expected, ab
