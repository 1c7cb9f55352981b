"""Transpose, dagger, ctr, and membership in tilting / cotilting classes.

The classes themselves are proper classes; what is computable is membership
of finitely presented probes and the bijections with Gabriel topologies and
Thomason sets.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

from .errors import HypothesisViolated, NonFaithfulWarning, RingMismatch, UnitIdealWarning
from .factorization import factor_element
from .fpmod import (
    CanonicalInvariants,
    FpModule,
    canonical_invariants,
    d_invariants,
    ext1,
    hom_module,
    is_projective,
    is_zero_module,
    quotient_by_ideal,
    syzygy,
    tensor,
    tor1,
)
from .ideals import Ideal, is_proper
from .matrix import RingMatrix
from .rings import Product
from .spectrum import (
    GabrielTopologyFG,
    PrimeIdeal,
    minimal_primes,
    thomason_contains,
    xi,
)


def transpose(M: FpModule) -> FpModule:
    """Cokernel of the dual of the presentation map: generators = relations of M."""
    A = M.relations
    return FpModule(M.ring, A.cols, A.T)


def dagger(S: FpModule) -> FpModule:
    """``Ext^1(S, R)``."""
    return ext1(S, FpModule.free(S.ring, 1))


def ctr(I: Ideal) -> FpModule:
    """``R^n / (x_1, ..., x_n) R`` for the chosen generators of ``I``."""
    if not is_proper(I):
        warnings.warn(f"ctr of the unit ideal {I} is projective, so it carries no torsion information", UnitIdealWarning, stacklevel=2)
    n = len(I.generators)
    return FpModule(I.ring, n, RingMatrix(I.ring, n, 1, tuple((g,) for g in I.generators)))


def pd_at_most_1(M: FpModule, trial_bound: int | None = None) -> bool:
    """Projective dimension at most one: the first syzygy is projective."""
    return is_projective(syzygy(M), trial_bound)


def _stable_signature_base(M: FpModule, trial_bound: int | None) -> tuple:
    R = M.ring
    D = R.domain
    local_exponents = {}
    if not R.is_domain:
        _, local_exponents = factor_element(D, R.modulus, trial_bound)
    parts = []
    for d in d_invariants(M):
        if D.is_zero(d):
            continue
        _, facs = factor_element(D, d, trial_bound)
        for q, e in facs.items():
            if local_exponents.get(q) == e:
                continue  # R_q itself: a projective summand
            parts.append((D.sort_key(q), e))
    return tuple(sorted(parts))


def stable_signature(M: FpModule, trial_bound: int | None = None) -> tuple:
    """Elementary divisors with projective summands removed."""
    if isinstance(M.ring, Product):
        return tuple(_stable_signature_base(M.project(k), trial_bound) for k in (0, 1))
    return _stable_signature_base(M, trial_bound)


@dataclass(frozen=True, eq=False)
class StableClass:
    """A module up to adding or removing projective summands."""

    representative: FpModule

    def __eq__(self, other) -> bool:
        if not isinstance(other, StableClass):
            return NotImplemented
        if other.representative.ring != self.representative.ring:
            return False
        return stable_signature(self.representative) == stable_signature(other.representative)

    def __hash__(self) -> int:
        return hash((self.representative.ring, stable_signature(self.representative)))


def stably_equivalent(M: FpModule, N: FpModule) -> bool:
    return StableClass(M) == StableClass(N)


def is_divisible(M: FpModule, I: Ideal) -> bool:
    """``M = I M``."""
    if M.ring != I.ring:
        raise RingMismatch(f"{M.ring} vs {I.ring}")
    return is_zero_module(quotient_by_ideal(M, I.generators))


def _warn_unfaithful(G: GabrielTopologyFG) -> None:
    if not G.faithful:
        warnings.warn(
            f"{G} is not faithful and does not correspond to a tilting class",
            NonFaithfulWarning,
            stacklevel=3,
        )


def in_tilting_class(M: FpModule, G: GabrielTopologyFG) -> bool:
    """``M`` is divisible by every basis ideal of ``G``."""
    _warn_unfaithful(G)
    return all(is_divisible(M, I) for I in G.basis)


def in_cotilting_class(M: FpModule, G: GabrielTopologyFG) -> bool:
    """``Hom(R/I, M) = 0`` for every basis ideal of ``G``."""
    if M.ring != G.ring:
        raise RingMismatch(f"{M.ring} vs {G.ring}")
    return all(is_zero_module(hom_module(I.quotient_module(), M)) for I in G.basis)


def separating_prime(G1: GabrielTopologyFG, G2: GabrielTopologyFG) -> PrimeIdeal | None:
    """A prime in exactly one of the two Thomason sets, or None if they agree.

    Minimal primes of basis ideals suffice: a prime of ``X1 \\ X2`` contains a
    minimal prime of some basis ideal of ``G1``, and that minimal prime cannot
    lie in the specialization-closed ``X2``.
    """
    if G1.ring != G2.ring:
        raise RingMismatch(f"{G1.ring} vs {G2.ring}")
    X1, X2 = xi(G1), xi(G2)
    for A, B, G in ((X1, X2, G1), (X2, X1, G2)):
        for I in G.basis:
            for p in minimal_primes(I):
                if thomason_contains(A, p) and not thomason_contains(B, p):
                    return p
    return None


def cotilting_witness(G1: GabrielTopologyFG, G2: GabrielTopologyFG) -> FpModule | None:
    """``R/p`` lying in exactly one of the two cotilting classes."""
    p = separating_prime(G1, G2)
    return None if p is None else p.quotient_module()


@dataclass(frozen=True)
class TransposeLemmaReport:
    hom: CanonicalInvariants
    tor1_transpose: CanonicalInvariants
    tensor: CanonicalInvariants
    ext1_transpose: CanonicalInvariants
    transpose_pd_at_most_1: bool

    @property
    def hom_matches_tor(self) -> bool:
        return self.hom == self.tor1_transpose

    @property
    def tensor_matches_ext(self) -> bool:
        return self.tensor == self.ext1_transpose

    @property
    def passed(self) -> bool:
        return self.hom_matches_tor and self.tensor_matches_ext and self.transpose_pd_at_most_1

    def to_json(self) -> dict:
        return {
            "hom": self.hom.to_json(),
            "tor1_transpose": self.tor1_transpose.to_json(),
            "tensor": self.tensor.to_json(),
            "ext1_transpose": self.ext1_transpose.to_json(),
            "hom_matches_tor": self.hom_matches_tor,
            "tensor_matches_ext": self.tensor_matches_ext,
            "transpose_pd_at_most_1": self.transpose_pd_at_most_1,
            "passed": self.passed,
        }


def lemma_transpose_check(M: FpModule, N: FpModule) -> TransposeLemmaReport:
    """Compare Hom(M,-) with Tor_1(tr M,-) and (- ⊗ M) with Ext^1(tr M,-) at ``N``.

    Requires ``M != 0`` and ``Hom(M, R) = 0``.
    """
    if M.ring != N.ring:
        raise RingMismatch(f"{M.ring} vs {N.ring}")
    if is_zero_module(M):
        raise HypothesisViolated("M is the zero module")
    if not is_zero_module(hom_module(M, FpModule.free(M.ring, 1))):
        raise HypothesisViolated("Hom(M, R) is nonzero")
    trM = transpose(M)
    return TransposeLemmaReport(
        hom=canonical_invariants(hom_module(M, N)),
        tor1_transpose=canonical_invariants(tor1(trM, N)),
        tensor=canonical_invariants(tensor(N, M)),
        ext1_transpose=canonical_invariants(ext1(trM, N)),
        transpose_pd_at_most_1=pd_at_most_1(trM),
    )
