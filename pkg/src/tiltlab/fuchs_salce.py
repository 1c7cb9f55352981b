"""Finite-depth truncations of the tree-presented Fuchs-Salce module.

Generators are the finite sequences of pairs ``(ideal index, generator index)``
of length at most ``depth``, ordered breadth-first; the empty sequence ``w``
comes first.  For every node of depth below ``depth`` and every ideal there is
one relation ``λ - Σ_k x_k (λ, (I, k))``.  Only the finite-stage claims are
checked here: filtration quotients, divisibility of interior nodes, and the
basis property of the relations.  The depth-ω module is never built.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Sequence

from .errors import NonFaithfulWarning, RingMismatch, SizeLimitExceeded
from .fpmod import (
    CanonicalInvariants,
    FpModule,
    canonical_invariants,
    d_presentation,
    direct_sum,
    ext1,
    is_isomorphic,
    is_zero_module,
    subquotient,
    tensor,
)
from .ideals import Ideal, ideals_equal, is_faithful
from .matrix import RingMatrix
from .normal_forms import column_span_test, kernel, snf_diagonal
from .rings import Product
from .spectrum import GabrielTopologyFG
from .tilting import ctr, in_tilting_class, is_divisible

DEFAULT_TREE_LIMIT = 10_000

Node = tuple[tuple[int, int], ...]


def tree_sizes(branching: int, n_ideals: int, depth: int) -> tuple[int, int]:
    """Closed-form generator and relation counts of a truncation."""
    gens = sum(branching**d for d in range(depth + 1))
    rels = sum(branching**d for d in range(depth)) * n_ideals
    return gens, rels


@dataclass(frozen=True)
class TreeTruncation:
    ring: object
    ideals: tuple[Ideal, ...]
    depth: int
    nodes: tuple[Node, ...]
    presentation: FpModule
    index: dict = field(compare=False, repr=False)

    @property
    def branching(self) -> int:
        return sum(len(I) for I in self.ideals)

    def nodes_at(self, d: int) -> list[Node]:
        return [lam for lam in self.nodes if len(lam) == d]

    def unit_vector(self, lam: Node) -> list:
        R = self.ring
        pos = self.index[lam]
        return [R.one if i == pos else R.zero for i in range(len(self.nodes))]


def build_truncation(
    ideals: Sequence[Ideal], depth: int, size_limit: int = DEFAULT_TREE_LIMIT
) -> TreeTruncation:
    if not ideals:
        raise ValueError("at least one ideal is needed")
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    ring = ideals[0].ring
    for I in ideals:
        if I.ring != ring:
            raise RingMismatch(f"{I.ring} vs {ring}")
        if not is_faithful(I):
            warnings.warn(f"ideal {I} is not faithful", NonFaithfulWarning, stacklevel=2)
    ideals = tuple(ideals)
    branching = sum(len(I) for I in ideals)
    n_gens, _ = tree_sizes(branching, len(ideals), depth)
    if n_gens > size_limit:
        raise SizeLimitExceeded(f"{n_gens} generators exceed the limit {size_limit}")

    levels: list[list[Node]] = [[()]]
    for _ in range(depth):
        levels.append(
            [lam + ((i, k),) for lam in levels[-1] for i, I in enumerate(ideals) for k in range(len(I))]
        )
    nodes = tuple(lam for level in levels for lam in level)
    index = {lam: pos for pos, lam in enumerate(nodes)}

    columns = []
    for level in levels[:-1]:
        for lam in level:
            for i, I in enumerate(ideals):
                col = [ring.zero] * len(nodes)
                col[index[lam]] = ring.one
                for k, x in enumerate(I.generators):
                    col[index[lam + ((i, k),)]] = ring.neg(x)
                columns.append(col)
    rel = RingMatrix.from_columns(ring, columns, len(nodes))
    return TreeTruncation(ring, ideals, depth, nodes, FpModule(ring, len(nodes), rel), index)


def restrict(T: TreeTruncation, depth: int) -> FpModule:
    """The subtree presentation of depth ``depth`` (relations among those nodes only)."""
    return build_truncation(T.ideals, depth).presentation


@dataclass(frozen=True)
class FiltrationStep:
    level: int
    quotient: FpModule
    expected: FpModule
    verdict: bool

    def to_json(self) -> dict:
        return {
            "level": self.level,
            "quotient": canonical_invariants(self.quotient).to_json(),
            "expected": canonical_invariants(self.expected).to_json(),
            "verdict": self.verdict,
        }


def ctr_sum(ideals: Sequence[Ideal], copies: int) -> FpModule:
    """``copies`` copies of ``⊕_I ctr(R/I)``."""
    ring = ideals[0].ring
    out = FpModule.zero(ring)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        block = FpModule.zero(ring)
        for I in ideals:
            block = direct_sum(block, ctr(I))
    for _ in range(copies):
        out = direct_sum(out, block)
    return out


def filtration_quotient(T: TreeTruncation, k: int) -> FiltrationStep:
    """``M_{k+1}/M_k`` inside the truncation, compared with ``⊕ ctr(R/I)``."""
    if not 0 <= k < T.depth:
        raise ValueError(f"level {k} outside 0..{T.depth - 1}")
    upper = [T.unit_vector(lam) for lam in T.nodes if len(lam) <= k + 1]
    lower = [T.unit_vector(lam) for lam in T.nodes if len(lam) <= k]
    quotient = subquotient(T.presentation, upper, lower)
    expected = ctr_sum(T.ideals, len(T.nodes_at(k)))
    return FiltrationStep(k, quotient, expected, is_isomorphic(quotient, expected))


def quotient_by_root(T: TreeTruncation) -> FpModule:
    """``M_n / ⟨w⟩``."""
    return T.presentation.add_relations([T.unit_vector(())])


def delta_truncation(T: TreeTruncation) -> FpModule:
    """``M_n ⊕ M_n/⟨w⟩``."""
    return direct_sum(T.presentation, quotient_by_root(T))


@dataclass(frozen=True)
class DivisibilityVerdict:
    passed: bool
    checked: int
    failures: tuple[tuple[Node, int], ...]

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "checked": self.checked,
            "failures": [{"node": [list(p) for p in lam], "ideal": i} for lam, i in self.failures],
        }


def verify_depth_divisibility(T: TreeTruncation) -> DivisibilityVerdict:
    """Every node of depth below ``depth`` lies in ``I·M_n`` for every ideal ``I``."""
    R = T.ring
    n = len(T.nodes)
    interior = [lam for lam in T.nodes if len(lam) < T.depth]
    failures = []
    checked = 0
    for i, I in enumerate(T.ideals):
        cols = []
        for pos in range(n):
            for x in I.generators:
                cols.append([x if r == pos else R.zero for r in range(n)])
        span = RingMatrix.from_columns(R, cols, n).hstack(T.presentation.relations)
        in_span = column_span_test(span)
        for lam in interior:
            checked += 1
            if not in_span(T.unit_vector(lam)):
                failures.append((lam, i))
    return DivisibilityVerdict(not failures, checked, tuple(failures))


def relations_full_rank(T: TreeTruncation) -> bool:
    """The relation columns are linearly independent over the covering PID(s)."""
    M = T.presentation
    parts = [M.project(0), M.project(1)] if isinstance(T.ring, Product) else [M]
    for part in parts:
        D = part.ring.domain
        k = part.relations.cols
        if not part.ring.is_domain:
            # over D/(m) independence means: no nonzero r in R^k with A r = 0
            if not kernel(part.relations).is_zero():
                return False
            continue
        diag = snf_diagonal(D, d_presentation(part), part.ngens, k)
        if sum(1 for d in diag if not D.is_zero(d)) != k:
            return False
    return True


@dataclass(frozen=True)
class ProbeReport:
    tail: CanonicalInvariants
    per_ideal: tuple[dict, ...]
    probes: tuple[dict, ...]

    @property
    def probes_consistent(self) -> bool:
        return all(p["consistent"] for p in self.probes)

    def to_json(self) -> dict:
        return {
            "tail": self.tail.to_json(),
            "per_ideal": list(self.per_ideal),
            "probes": list(self.probes),
            "probes_consistent": self.probes_consistent,
        }


def ext_vanishing_probe(
    T: TreeTruncation, G: GabrielTopologyFG, probes: Sequence[FpModule] = ()
) -> ProbeReport:
    """Which tilting axioms are already visible at finite depth.

    Nonzero ``Ext^1(ctr(R/I), M_n/M_0)`` and failing divisibility of ``M_n`` are
    expected at finite depth and reported as such, not as errors.
    """
    if len(T.ideals) != len(G.basis) or not all(
        ideals_equal(I, J) for I, J in zip(T.ideals, G.basis)
    ):
        raise ValueError("the truncation must be built from the basis of G")
    tail = quotient_by_root(T)
    per_ideal = []
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        for I in G.basis:
            c = ctr(I)
            e = ext1(c, tail)
            per_ideal.append(
                {
                    "ideal": str(I),
                    "ext1_ctr_tail": canonical_invariants(e).to_json(),
                    "ext1_ctr_tail_vanishes": is_zero_module(e),
                    "tail_divisible": is_divisible(tail, I),
                    "module_divisible": is_divisible(T.presentation, I),
                    "finite_depth_artifact": not is_zero_module(e),
                }
            )
        probe_rows = []
        for X in probes:
            member = in_tilting_class(X, G)
            ext_side = all(is_zero_module(ext1(ctr(I), X)) for I in G.basis)
            tensor_side = all(is_zero_module(tensor(X, I.quotient_module())) for I in G.basis)
            probe_rows.append(
                {
                    "module": str(canonical_invariants(X)),
                    "in_tilting_class": member,
                    "ext1_ctr_vanishes": ext_side,
                    "tensor_vanishes": tensor_side,
                    "consistent": member == ext_side == tensor_side,
                }
            )
    return ProbeReport(canonical_invariants(tail), tuple(per_ideal), tuple(probe_rows))
