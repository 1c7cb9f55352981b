"""Zariski spectrum, Thomason sets and finitely generated Gabriel topologies.

Thomason sets ``∪ V(I_i)`` and Gabriel topologies are both carried by a
finite basis of finitely generated ideals, never by enumerating primes, so
rings with infinite spectrum (Z, GF(p)[x]) are fully supported.  A prime of a
product ring lives in one component: ``p × R2`` or ``R1 × q``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Any, Sequence

from .errors import InfiniteSpectrum, OracleDisagreement, RingMismatch, SemanticError
from .factorization import is_prime_element, prime_divisors
from .fpmod import FpModule, d_invariants
from .ideals import (
    Ideal,
    canonicalize,
    d_generators,
    ideal_contains,
    ideal_product,
    is_faithful,
)
from .rings import BaseRing, Product, RingSpec

DEFAULT_ORACLE_BOUND = 6


@dataclass(frozen=True)
class PrimeIdeal:
    """A prime given by a D-level prime element of one component.

    ``element`` is zero for the generic point of a domain component.
    """

    ring: RingSpec
    element: Any
    component: int | None = None

    def __post_init__(self):
        if isinstance(self.ring, Product) != (self.component is not None):
            raise SemanticError("component index is required exactly for product rings")
        part = self.base
        D = part.domain
        q = self.element
        if D.canonical(q) != q:
            raise SemanticError(f"prime generator {q!r} is not canonical")
        if D.is_zero(q):
            if not part.is_domain:
                raise SemanticError(f"(0) is not prime in {part}")
            return
        if not is_prime_element(D, q):
            raise SemanticError(f"{part.format(q)} is not prime")
        if not part.is_domain and not D.divides(q, part.modulus):
            raise SemanticError(f"({part.format(q)}) does not contain the modulus of {part}")

    @property
    def base(self) -> BaseRing:
        if self.component is None:
            return self.ring
        return self.ring.components[self.component]

    @property
    def generators(self) -> tuple:
        q = self.base.reduce(self.element)
        R = self.ring
        if self.component is None:
            return (q,)
        if self.component == 0:
            return ((q, R.right.one),)
        return ((R.left.one, q),)

    def ideal(self) -> Ideal:
        return Ideal(self.ring, self.generators)

    def quotient_module(self) -> FpModule:
        return FpModule.cyclic(self.ring, self.generators)

    def contains_ideal(self, I: Ideal) -> bool:
        """``I ⊆ p``."""
        if I.ring != self.ring:
            raise RingMismatch(f"{I.ring} vs {self.ring}")
        g = d_generators(I)[self.component or 0]
        return self.base.domain.divides(self.element, g)

    def contains_prime(self, other: "PrimeIdeal") -> bool:
        """``other ⊆ self``."""
        if other.ring != self.ring or other.component != self.component:
            return False
        return self.base.domain.divides(self.element, other.element)

    def sort_key(self):
        return (self.component or 0, self.base.domain.sort_key(self.element))

    def __str__(self) -> str:
        return str(self.ideal())


def _sorted(primes) -> list[PrimeIdeal]:
    return sorted(set(primes), key=PrimeIdeal.sort_key)


def _component_primes(ring: RingSpec, k: int | None, g, trial_bound: int | None) -> list[PrimeIdeal]:
    part = ring if k is None else ring.components[k]
    D = part.domain
    if D.is_zero(g):
        return [PrimeIdeal(ring, D.zero, k)]
    if D.is_unit(g):
        return []
    return [PrimeIdeal(ring, q, k) for q in prime_divisors(D, g, trial_bound)]


def minimal_primes(I: Ideal, trial_bound: int | None = None) -> list[PrimeIdeal]:
    """Minimal primes over ``I``; ``(0)`` over a domain gives the generic prime."""
    R = I.ring
    gens = d_generators(I)
    if isinstance(R, Product):
        out = []
        for k, g in enumerate(gens):
            out += _component_primes(R, k, g, trial_bound)
        return _sorted(out)
    return _sorted(_component_primes(R, None, gens[0], trial_bound))


def spectrum(ring: RingSpec, trial_bound: int | None = None) -> list[PrimeIdeal]:
    """All primes of a ring with finite spectrum."""
    if not ring.is_finite:
        raise InfiniteSpectrum(f"{ring} has infinitely many primes")
    if isinstance(ring, Product):
        out = []
        for k, part in enumerate(ring.components):
            out += _component_primes(ring, k, part.modulus, trial_bound)
        return _sorted(out)
    return _sorted(_component_primes(ring, None, ring.modulus, trial_bound))


@dataclass(frozen=True)
class ThomasonSet:
    """``∪ V(I)`` over a finite basis of finitely generated ideals."""

    ring: RingSpec
    basis: tuple[Ideal, ...]

    def __str__(self) -> str:
        return " ∪ ".join(f"V{I}" for I in self.basis) if self.basis else "∅"


@dataclass(frozen=True)
class GabrielTopologyFG:
    """Filter generated by finite products of the basis ideals."""

    ring: RingSpec
    basis: tuple[Ideal, ...]

    @classmethod
    def of(cls, ring: RingSpec, basis: Sequence) -> "GabrielTopologyFG":
        ideals = tuple(I if isinstance(I, Ideal) else Ideal.of(ring, I) for I in basis)
        for I in ideals:
            if I.ring != ring:
                raise RingMismatch(f"{I.ring} vs {ring}")
        return cls(ring, ideals)

    @classmethod
    def trivial(cls, ring: RingSpec) -> "GabrielTopologyFG":
        return cls(ring, (Ideal(ring, (ring.one,)),))

    @cached_property
    def faithful(self) -> bool:
        return all(is_faithful(I) for I in self.basis)

    def __str__(self) -> str:
        return "<" + ",".join(str(I) for I in self.basis) + ">"


def thomason_contains(X: ThomasonSet, p: PrimeIdeal) -> bool:
    if X.ring != p.ring:
        raise RingMismatch(f"{X.ring} vs {p.ring}")
    return any(p.contains_ideal(I) for I in X.basis)


def thomason_equal(X: ThomasonSet, Y: ThomasonSet) -> bool:
    return all(theta_contains(Y, I) for I in X.basis) and all(theta_contains(X, I) for I in Y.basis)


def vass(M: FpModule, trial_bound: int | None = None) -> list[PrimeIdeal]:
    """Associated primes (noetherian rings, so vaguely associated = associated)."""
    R = M.ring
    parts = [(k, M.project(k)) for k in range(2)] if isinstance(R, Product) else [(None, M)]
    out = []
    for k, part in parts:
        for d in d_invariants(part):
            out += _component_primes(R, k, d, trial_bound)
    return _sorted(out)


def module_annihilator(M: FpModule) -> Ideal:
    """``ann M``: generated by the last invariant factor in each component."""
    R = M.ring

    def last(part: FpModule):
        inv = d_invariants(part)
        return part.ring.reduce(inv[-1]) if inv else part.ring.one

    if isinstance(R, Product):
        return Ideal(R, ((last(M.project(0)), last(M.project(1))),))
    return Ideal(R, (last(M),))


def supp_contains(M: FpModule, p: PrimeIdeal) -> bool:
    """``p ∈ supp M``, i.e. ``ann M ⊆ p`` for finitely generated ``M``."""
    part = M.project(p.component) if p.component is not None else M
    inv = d_invariants(part)
    if not inv:
        return False
    return p.base.domain.divides(p.element, inv[-1])


def xi(G: GabrielTopologyFG) -> ThomasonSet:
    return ThomasonSet(G.ring, G.basis)


def theta_contains(X: ThomasonSet, J: Ideal, trial_bound: int | None = None) -> bool:
    """``V(J) ⊆ X``: every minimal prime of ``J`` lies in ``X``."""
    return all(thomason_contains(X, p) for p in minimal_primes(J, trial_bound))


def gabriel_contains(G: GabrielTopologyFG, J: Ideal, trial_bound: int | None = None) -> bool:
    return theta_contains(xi(G), J, trial_bound)


def gabriel_contains_oracle(G: GabrielTopologyFG, J: Ideal, bound: int = DEFAULT_ORACLE_BOUND) -> bool:
    """Search products of at most ``bound`` basis ideals for one inside ``J``."""
    R = G.ring
    level = {canonicalize(Ideal(R, (R.one,)))}
    seen = set(level)
    for depth in range(bound + 1):
        if any(ideal_contains(J, P) for P in level):
            return True
        if depth == bound:
            break
        nxt = set()
        for P in level:
            for I in G.basis:
                Q = canonicalize(ideal_product(P, I))
                if Q not in seen:
                    seen.add(Q)
                    nxt.add(Q)
        if not nxt:
            break
        level = nxt
    return False


def checked_gabriel_contains(G: GabrielTopologyFG, J: Ideal, bound: int = DEFAULT_ORACLE_BOUND) -> bool:
    """Prime test cross-checked against the bounded search; disagreement raises."""
    fast = gabriel_contains(G, J)
    slow = gabriel_contains_oracle(G, J, bound)
    if fast != slow:
        raise OracleDisagreement(
            f"prime test says {fast}, product search to depth {bound} says {slow} for {J} in {G}"
        )
    return fast


def admissible(X: ThomasonSet) -> bool:
    """``X`` avoids every associated prime of ``R``."""
    return not any(thomason_contains(X, p) for p in vass(FpModule.free(X.ring, 1)))


def _specialization_closed(chosen: Sequence[PrimeIdeal], spec: Sequence[PrimeIdeal]) -> bool:
    chosen_set = set(chosen)
    return all(q in chosen_set for p in chosen for q in spec if q.contains_prime(p))


def enumerate_tilting_classes(ring: RingSpec) -> list[GabrielTopologyFG]:
    """One faithful finitely generated Gabriel topology per admissible Thomason set."""
    spec = spectrum(ring)
    assoc = set(vass(FpModule.free(ring, 1)))
    free_primes = [p for p in spec if p not in assoc]
    out = []
    for size in range(len(free_primes) + 1):
        for chosen in itertools.combinations(free_primes, size):
            if not _specialization_closed(chosen, spec):
                continue
            if chosen:
                out.append(GabrielTopologyFG(ring, tuple(p.ideal() for p in chosen)))
            else:
                out.append(GabrielTopologyFG.trivial(ring))
    return out
