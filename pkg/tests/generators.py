"""Seeded random objects for property and acceptance tests."""

from __future__ import annotations

import random

from tiltlab.fpmod import FpModule, canonical_invariants
from tiltlab.ideals import Ideal, is_proper
from tiltlab.matrix import RingMatrix
from tiltlab.rings import (
    Integers,
    IntegersModN,
    PolyOverPrimeField,
    PolyQuotient,
    Product,
)

Z = Integers()

SMALL_FINITE_RINGS = (
    IntegersModN(2),
    IntegersModN(4),
    IntegersModN(6),
    IntegersModN(8),
    IntegersModN(9),
    IntegersModN(12),
    PolyQuotient(2, (0, 0, 1)),
    PolyQuotient(2, (1, 1, 1)),
    PolyQuotient(3, (0, 0, 1)),
    PolyQuotient(2, (0, 1, 1, 1)),
    Product(IntegersModN(2), IntegersModN(3)),
    Product(IntegersModN(2), IntegersModN(4)),
)


def element(rng: random.Random, R, bound: int = 9, degree: int = 2):
    if isinstance(R, Product):
        return (element(rng, R.left, bound, degree), element(rng, R.right, bound, degree))
    if isinstance(R, (Integers, IntegersModN)):
        return R.coerce(rng.randint(-bound, bound))
    return R.coerce(tuple(rng.randrange(R.p) for _ in range(rng.randint(0, degree + 1))))


def nonzero_element(rng: random.Random, R, bound: int = 9, degree: int = 2):
    while True:
        x = element(rng, R, bound, degree)
        if not R.is_zero(x):
            return x


def matrix(rng: random.Random, R, rows: int, cols: int, bound: int = 9, degree: int = 2) -> RingMatrix:
    return RingMatrix.from_rows(
        R, [[element(rng, R, bound, degree) for _ in range(cols)] for _ in range(rows)], cols
    )


def module(rng: random.Random, R, max_gens: int = 2, max_rels: int = 2, bound: int = 9) -> FpModule:
    k = rng.randint(1, max_gens)
    r = rng.randint(0, max_rels)
    return FpModule(R, k, matrix(rng, R, k, r, bound))


def torsion_module(rng: random.Random, R, max_gens: int = 3, bound: int = 9) -> FpModule:
    """A nonzero module with no free part over a domain (so ``Hom(M, R) = 0``)."""
    while True:
        k = rng.randint(1, max_gens)
        r = k + rng.randint(0, 2)
        M = FpModule(R, k, matrix(rng, R, k, r, bound))
        inv = canonical_invariants(M)
        if inv.free_rank == 0 and inv.torsion_factors:
            return M


def ideal(rng: random.Random, R, max_gens: int = 3, bound: int = 30, proper: bool = False) -> Ideal:
    while True:
        n = rng.randint(1, max_gens)
        I = Ideal(R, tuple(element(rng, R, bound) for _ in range(n)))
        if not proper or (is_proper(I) and not all(R.is_zero(g) for g in I.generators)):
            return I


def redundant_ideal(rng: random.Random, R, bound: int = 30) -> Ideal:
    """A proper nonzero ideal given by a base element times several cofactors."""
    while True:
        base = nonzero_element(rng, R, bound)
        I = Ideal(R, (base,))
        if not is_proper(I):
            continue
        extra = [R.mul(base, element(rng, R, 5)) for _ in range(rng.randint(1, 3))]
        gens = [g for g in [R.mul(base, element(rng, R, 5))] + extra if not R.is_zero(g)]
        gens.append(R.mul(base, nonzero_element(rng, R, 3, 0)))
        rng.shuffle(gens)
        J = Ideal(R, tuple(gens))
        if is_proper(J):
            return J


def poly_ring(p: int) -> PolyOverPrimeField:
    return PolyOverPrimeField(p)
