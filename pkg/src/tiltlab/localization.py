"""Localization at the powers of one regular element.

Stage ``k`` of the tower is ``(1/s^k) R``; each stage is a copy of ``R`` and
the transition to the next stage is multiplication by ``s``.  Divisibility of
the limit is a bounded search, so verdicts are three-valued.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

from .errors import RingMismatch, ZeroDivisor
from .fpmod import FpModule, canonical_invariants, is_isomorphic
from .fuchs_salce import build_truncation, quotient_by_root
from .ideals import Ideal, contains
from .rings import RingElement, RingSpec, is_zero_divisor
from .spectrum import GabrielTopologyFG, theta_contains, xi

DEFAULT_STAGE_BOUND = 10

TRUE = "true"
FALSE_AT_BOUND = "false-at-bound"
ERROR = "error"


def _payload(ring: RingSpec, s):
    if isinstance(s, RingElement):
        if s.ring != ring:
            raise RingMismatch(f"{s.ring} vs {ring}")
        return s.value
    return ring.coerce(s)


def _require_regular(ring: RingSpec, s) -> None:
    if ring.is_zero(s) or is_zero_divisor(RingElement(ring, s)):
        raise ZeroDivisor(f"{ring.format(s)} is a zero divisor in {ring}")


@dataclass(frozen=True)
class LocalizationTower:
    ring: RingSpec
    s: object
    stages: int

    def __post_init__(self):
        _require_regular(self.ring, self.s)

    def stage(self, k: int) -> FpModule:
        """Stage ``k`` as a module: a free module of rank one."""
        if not 0 <= k <= self.stages:
            raise ValueError(f"stage {k} outside 0..{self.stages}")
        return FpModule.free(self.ring, 1)

    def transition(self, k: int):
        """Stage ``k`` to stage ``k+1``: multiplication by ``s`` (injective since ``s`` is regular)."""
        if not 0 <= k < self.stages:
            raise ValueError(f"transition {k} outside 0..{self.stages - 1}")
        return self.s

    def quotient(self, k: int) -> FpModule:
        return quotient_stage(RingElement(self.ring, self.s), k)


@dataclass(frozen=True)
class IdealWitness:
    ideal: str
    stage: int | None

    def to_json(self) -> dict:
        return {"ideal": self.ideal, "stage": self.stage}


@dataclass(frozen=True)
class DivisibilityReport:
    verdict: str
    bound: int
    witnesses: tuple[IdealWitness, ...]
    message: str = ""

    @property
    def holds(self) -> bool:
        return self.verdict == TRUE

    def to_json(self) -> dict:
        out = {
            "verdict": self.verdict,
            "bound": self.bound,
            "witnesses": [w.to_json() for w in self.witnesses],
            "note": "only finitely presented probes are checked",
        }
        if self.message:
            out["message"] = self.message
        return out


def divisible_in_limit(
    G: GabrielTopologyFG, s, bound: int = DEFAULT_STAGE_BOUND
) -> DivisibilityReport:
    """Search ``k ≤ bound`` with ``s^k ∈ I`` for every basis ideal ``I``.

    ``1 ∈ I·(1/s^k)R`` inside stage ``k`` means exactly ``s^k ∈ I``.
    A negative answer only says no witness exists up to ``bound``.
    """
    R = G.ring
    s = _payload(R, s)
    _require_regular(R, s)
    witnesses = []
    for I in G.basis:
        found = None
        power = R.one
        for k in range(bound + 1):
            if contains(I, power):
                found = k
                break
            power = R.mul(power, s)
        witnesses.append(IdealWitness(str(I), found))
    verdict = TRUE if all(w.stage is not None for w in witnesses) else FALSE_AT_BOUND
    return DivisibilityReport(verdict, bound, tuple(witnesses))


def theta_cross_check(G: GabrielTopologyFG, s, bound: int = DEFAULT_STAGE_BOUND) -> bool:
    """Some ``(s^k)``, ``k ≤ bound``, lies in the topology through its Thomason set."""
    R = G.ring
    s = _payload(R, s)
    X = xi(G)
    power = R.one
    for _ in range(bound + 1):
        if theta_contains(X, Ideal(R, (power,))):
            return True
        power = R.mul(power, s)
    return False


def quotient_stage(s: RingElement, k: int) -> FpModule:
    """``(1/s^k)R / R ≅ R/(s^k)``."""
    if k < 0:
        raise ValueError("stage must be nonnegative")
    R = s.ring
    _require_regular(R, s.value)
    power = R.one
    for _ in range(k):
        power = R.mul(power, s.value)
    return FpModule.cyclic(R, [power])


@dataclass(frozen=True)
class ComparisonReport:
    tree_quotient: object
    stage_quotient: object
    passed: bool

    def to_json(self) -> dict:
        return {
            "tree_quotient": self.tree_quotient.to_json(),
            "stage_quotient": self.stage_quotient.to_json(),
            "passed": self.passed,
        }


def compare_with_fuchs_salce(s: RingElement, depth: int) -> ComparisonReport:
    """Path-tree truncation ``M_n/⟨w⟩`` for ``(s)`` against ``R/(s^n)``."""
    R = s.ring
    _require_regular(R, s.value)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        T = build_truncation([Ideal(R, (s.value,))], depth)
    tree = quotient_by_root(T)
    stage = quotient_stage(s, depth)
    return ComparisonReport(
        canonical_invariants(tree), canonical_invariants(stage), is_isomorphic(tree, stage)
    )
