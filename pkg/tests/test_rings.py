from __future__ import annotations

import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from generators import SMALL_FINITE_RINGS, Z, element, nonzero_element
from tiltlab.domains import IntegerDomain, PolyDomain
from tiltlab.errors import FactorizationError, RingMismatch, SemanticError, UnsupportedRing, ZeroInput
from tiltlab.factorization import factor_integer, is_irreducible, is_probable_prime, using_trial_bound
from tiltlab.rings import (
    IntegersModN,
    PolyOverPrimeField,
    PolyQuotient,
    Product,
    RingElement,
    arith,
    factor,
    is_unit,
    is_zero_divisor,
)

RINGS = SMALL_FINITE_RINGS + (Z, PolyOverPrimeField(3), Product(Z, IntegersModN(4)))


def el(R, v):
    return RingElement(R, R.coerce(v))


def test_arith_examples():
    assert arith(el(Z, 4), el(Z, 6), "mul") == el(Z, 24)
    Z4 = IntegersModN(4)
    assert arith(el(Z4, 2), el(Z4, 2), "add") == el(Z4, 0)
    P = Product(Z, Z4)
    assert arith(el(P, (3, 1)), el(P, (2, 2)), "mul") == el(P, (6, 2))


def test_arith_rejects_mixed_rings():
    with pytest.raises(RingMismatch):
        arith(el(Z, 1), el(IntegersModN(3), 1), "add")


def test_unit_and_zero_divisor_examples():
    Z12 = IntegersModN(12)
    assert is_unit(el(Z12, 5))
    assert is_zero_divisor(el(Z12, 4))
    assert not is_zero_divisor(el(Z, 2))
    assert is_unit(el(Z, -1)) and not is_unit(el(Z, 2))


def test_factor_examples():
    f = factor(el(Z, 12))
    assert [(int(q.value), e) for q, e in f.factors] == [(2, 2), (3, 1)]
    assert f.unit == el(Z, 1)
    F2 = PolyOverPrimeField(2)
    f = factor(el(F2, (0, 1, 1)))
    assert [(q.value, e) for q, e in f.factors] == [((0, 1), 1), ((1, 1), 1)]
    F3 = PolyOverPrimeField(3)
    f = factor(el(F3, (1, 0, 1)))
    assert [(q.value, e) for q, e in f.factors] == [((1, 0, 1), 1)]
    # no root among the three residues, degree 2 => irreducible
    assert all((a * a + 1) % 3 for a in range(3))


def test_factor_errors():
    with pytest.raises(ZeroInput):
        factor(el(Z, 0))
    with pytest.raises(UnsupportedRing):
        factor(el(IntegersModN(12), 4))


def test_negative_integer_has_negative_unit():
    f = factor(el(Z, -18))
    assert f.unit == el(Z, -1)
    assert f.expand() == el(Z, -18)


@given(st.integers(0, 10**6))
def test_ring_axioms(seed):
    rng = random.Random(seed)
    R = rng.choice(RINGS)
    a, b, c = (el(R, element(rng, R)) for _ in range(3))
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a and a * b == b * a
    assert a - a == el(R, R.zero)
    assert a * el(R, R.one) == a


def test_factor_remultiplies():
    rng = random.Random(7)
    rings = [Z, PolyOverPrimeField(2), PolyOverPrimeField(3), PolyOverPrimeField(5), PolyOverPrimeField(7)]
    for i in range(1000):
        R = rings[i % len(rings)]
        a = el(R, nonzero_element(rng, R, 10**6, 8))
        f = factor(a)
        assert f.expand() == a
        assert all(e >= 1 for _, e in f.factors)


def test_trial_division_with_primality_backstop():
    assert factor_integer(2**61 - 1) == {2**61 - 1: 1}
    assert factor_integer(101 * 103 * 10007) == {101: 1, 103: 1, 10007: 1}


def test_trial_bound_exceeded():
    n = 1009 * 1013
    with using_trial_bound(100):
        with pytest.raises(FactorizationError):
            factor_integer(n)
    assert factor_integer(n) == {1009: 1, 1013: 1}


def test_primality():
    small = [p for p in range(2, 500) if all(p % d for d in range(2, int(p**0.5) + 1))]
    assert [n for n in range(500) if is_probable_prime(n)] == small


def test_irreducible_count_matches_necklace_formula():
    # number of monic irreducibles of degree 3 over GF(2) and GF(3)
    for p, expected in ((2, 2), (3, 8)):
        D = PolyDomain(p)
        monic = [tuple([a, b, c, 1]) for a in range(p) for b in range(p) for c in range(p)]
        assert sum(is_irreducible(D, f) for f in monic) == expected


@pytest.mark.parametrize("n", [2, 4, 6, 12, 30, 60])
def test_unit_xor_zero_divisor_in_z_mod_n(n):
    R = IntegersModN(n)
    for a in range(1, n):
        assert is_unit(el(R, a)) != is_zero_divisor(el(R, a))


@pytest.mark.parametrize("R", SMALL_FINITE_RINGS)
def test_unit_xor_zero_divisor_finite(R):
    for a in R.payloads():
        if not R.is_zero(a):
            assert R.unit_test(a) != R.zero_divisor_test(a)


def test_finite_ring_orders():
    assert IntegersModN(12).order == 12
    assert PolyQuotient(3, (0, 0, 1)).order == 9
    assert Product(IntegersModN(2), IntegersModN(4)).order == 8
    assert Z.order is None
    assert len(list(Product(IntegersModN(2), IntegersModN(3)).payloads())) == 6


def test_invalid_rings():
    with pytest.raises(SemanticError):
        PolyOverPrimeField(4)


def test_domain_helpers():
    D = IntegerDomain()
    g, s, t = D.gcdex(240, 46)
    assert g == 2 and 240 * s + 46 * t == 2
    assert D.canonical(-6) == 6
    assert D.crt(2, 3, 3, 5) % 15 == 8
    P = PolyDomain(5)
    assert P.canonical((2, 4)) == (3, 1)
    assert P.valuation((0, 0, 0, 1), (0, 1)) == 3
