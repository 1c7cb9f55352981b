"""Finitely generated ideals with user-chosen generator lists.

The generator list is kept exactly as given (order and redundancy matter for
the tree construction); :func:`canonicalize` gives the reduced form.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import RingMismatch, ZeroInput
from .fpmod import FpModule, hom_module, is_zero_module
from .matrix import RingMatrix
from .normal_forms import dkernel, kernel, solve_payloads
from .rings import BaseRing, Product, RingElement, RingSpec


@dataclass(frozen=True)
class Ideal:
    ring: RingSpec
    generators: tuple

    def __post_init__(self):
        if not self.generators:
            raise ZeroInput("an ideal needs at least one generator (use 0 for the zero ideal)")

    @classmethod
    def of(cls, ring: RingSpec, generators: Sequence) -> "Ideal":
        return cls(ring, tuple(ring.coerce(g) for g in generators))

    @property
    def elements(self) -> tuple[RingElement, ...]:
        return tuple(RingElement(self.ring, g) for g in self.generators)

    def __len__(self) -> int:
        return len(self.generators)

    def __str__(self) -> str:
        return "(" + ",".join(self.ring.format(g) for g in self.generators) + ")"

    def quotient_module(self) -> FpModule:
        """``R/I``."""
        return FpModule.cyclic(self.ring, self.generators)


def _same(I: Ideal, J: Ideal) -> RingSpec:
    if I.ring != J.ring:
        raise RingMismatch(f"{I.ring} vs {J.ring}")
    return I.ring


def _base_generator(ring: BaseRing, gens) :
    """Canonical D-generator of the ideal (``gcd`` with the modulus)."""
    D = ring.domain
    return D.canonical(D.gcd(D.gcd_many(gens), ring.modulus))


def canonical_generator(I: Ideal):
    """Payload generating ``I``: canonical in each component."""
    R = I.ring
    if isinstance(R, Product):
        return (
            R.left.reduce(_base_generator(R.left, [g[0] for g in I.generators])),
            R.right.reduce(_base_generator(R.right, [g[1] for g in I.generators])),
        )
    return R.reduce(_base_generator(R, I.generators))


def d_generators(I: Ideal) -> tuple:
    """Per-component D-level generator; zero modulus is kept so ``(m)`` stays ``m``."""
    R = I.ring
    if isinstance(R, Product):
        return tuple(
            _base_generator(part, [g[k] for g in I.generators]) for k, part in enumerate(R.components)
        )
    return (_base_generator(R, I.generators),)


def canonicalize(I: Ideal) -> Ideal:
    return Ideal(I.ring, (canonical_generator(I),))


def ideal_sum(I: Ideal, J: Ideal) -> Ideal:
    return Ideal(_same(I, J), I.generators + J.generators)


def ideal_product(I: Ideal, J: Ideal) -> Ideal:
    R = _same(I, J)
    return Ideal(R, tuple(R.mul(x, y) for x in I.generators for y in J.generators))


def contains(I: Ideal, x) -> bool:
    """Membership by solving ``Σ g_i r_i = x``."""
    R = I.ring
    x = R.coerce(x)
    A = RingMatrix(R, 1, len(I.generators), (tuple(I.generators),))
    return solve_payloads(A, [x]) is not None


def ideal_contains(I: Ideal, J: Ideal) -> bool:
    """``J ⊆ I``."""
    _same(I, J)
    return all(contains(I, g) for g in J.generators)


def ideals_equal(I: Ideal, J: Ideal) -> bool:
    return ideal_contains(I, J) and ideal_contains(J, I)


def is_proper(I: Ideal) -> bool:
    return not I.ring.unit_test(canonical_generator(I))


def _base_colon(ring: BaseRing, gens, t):
    D = ring.domain
    row = [t] + list(gens)
    if not ring.is_domain:
        row.append(ring.modulus)
    ker = dkernel(D, [row], 1, len(row))
    out = [ring.reduce(v[0]) for v in ker]
    out = [g for g in out if not D.is_zero(g)]
    return out or [D.zero]


def colon(I: Ideal, t) -> Ideal:
    """``(I : t) = {r : t r ∈ I}``, via the kernel of ``[t | gens | m]`` over D."""
    R = I.ring
    if isinstance(t, RingElement) and t.ring != R:
        raise RingMismatch(f"{t.ring} vs {R}")
    t = R.coerce(t)
    if isinstance(R, Product):
        parts = [
            _base_colon(part, [g[k] for g in I.generators], t[k])
            for k, part in enumerate(R.components)
        ]
        gens = [R.embed(0, x) for x in parts[0]] + [R.embed(1, x) for x in parts[1]]
        return Ideal(R, tuple(gens))
    return Ideal(R, tuple(_base_colon(R, I.generators, t)))


def annihilator(I: Ideal) -> Ideal:
    """``{r : r x = 0 for every generator x}`` as the kernel of the generator column."""
    R = I.ring
    col = RingMatrix(R, len(I.generators), 1, tuple((g,) for g in I.generators))
    K = kernel(col)
    gens = [v for v in K.data[0] if not R.is_zero(v)] if K.cols else []
    return Ideal(R, tuple(gens) or (R.zero,))


def is_zero_ideal(I: Ideal) -> bool:
    return all(I.ring.is_zero(g) for g in I.generators)


def is_faithful(I: Ideal) -> bool:
    return is_zero_ideal(annihilator(I))


def hom_to_ring_vanishes(I: Ideal) -> bool:
    """``Hom_R(R/I, R) = 0``; equivalent to faithfulness over commutative rings."""
    return is_zero_module(hom_module(I.quotient_module(), FpModule.free(I.ring, 1)))
