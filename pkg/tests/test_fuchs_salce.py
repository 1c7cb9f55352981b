from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from generators import Z, ideal
from tiltlab.errors import NonFaithfulWarning, SizeLimitExceeded
from tiltlab.fpmod import FpModule, canonical_invariants, direct_sum, is_isomorphic
from tiltlab.fuchs_salce import (
    build_truncation,
    delta_truncation,
    ext_vanishing_probe,
    filtration_quotient,
    quotient_by_root,
    relations_full_rank,
    restrict,
    tree_sizes,
    verify_depth_divisibility,
)
from tiltlab.ideals import Ideal, is_faithful
from tiltlab.rings import IntegersModN, PolyOverPrimeField, Product
from tiltlab.spectrum import GabrielTopologyFG

F5 = PolyOverPrimeField(5)


def I(R, *gens):
    return Ideal.of(R, gens)


def inv(M):
    return str(canonical_invariants(M))


def test_path_tree_example():
    T = build_truncation([I(Z, 2)], 3)
    assert T.presentation.ngens == 4 and T.presentation.relations.cols == 3
    assert inv(T.presentation) == "R^1"
    assert inv(quotient_by_root(T)) == "R/(8)"
    assert inv(delta_truncation(T)) == "R/(8) + R^1"


def test_redundant_generators_example():
    T = build_truncation([I(Z, 4, 6)], 1)
    assert T.presentation.ngens == 3 and T.presentation.relations.cols == 1
    assert inv(T.presentation) == "R^2"
    assert T.presentation.relations.column(0) == (1, -4, -6)
    assert inv(delta_truncation(T)) == "R/(2) + R^3"


def test_depth_zero():
    T = build_truncation([I(Z, 2), I(Z, 3)], 0)
    assert T.nodes == ((),)
    assert T.presentation.ngens == 1 and T.presentation.relations.cols == 0
    assert inv(delta_truncation(T)) == "R^1"
    assert verify_depth_divisibility(T).passed and verify_depth_divisibility(T).checked == 0


def test_node_order_is_breadth_first_in_input_order():
    T = build_truncation([I(Z, 4, 6), I(Z, 3)], 2)
    assert T.nodes[:4] == ((), ((0, 0),), ((0, 1),), ((1, 0),))
    assert T.nodes[-1] == ((1, 0), (1, 0))
    assert [T.index[lam] for lam in T.nodes] == list(range(len(T.nodes)))
    assert all(len(a) <= len(b) for a, b in zip(T.nodes, T.nodes[1:]))


def test_filtration_examples():
    step = filtration_quotient(build_truncation([I(Z, 4, 6)], 1), 0)
    assert step.verdict and inv(step.quotient) == "R/(2) + R^1"
    step = filtration_quotient(build_truncation([I(Z, 2)], 2), 1)
    assert step.verdict and inv(step.quotient) == "R/(2)"
    step = filtration_quotient(build_truncation([I(Z, 2), I(Z, 3)], 1), 0)
    assert step.verdict and inv(step.quotient) == "R/(6)"
    assert step.to_json()["verdict"] is True


def test_divisibility_examples():
    verdict = verify_depth_divisibility(build_truncation([I(Z, 2)], 2))
    assert verdict.passed and verdict.checked == 2
    verdict = verify_depth_divisibility(build_truncation([I(Z, 4, 6)], 1))
    assert verdict.passed and verdict.checked == 1


def test_restrict_matches_smaller_truncation():
    T = build_truncation([I(Z, 4, 6), I(Z, 3)], 3)
    for d in range(4):
        assert is_isomorphic(restrict(T, d), build_truncation([I(Z, 4, 6), I(Z, 3)], d).presentation)


def test_size_limit():
    with pytest.raises(SizeLimitExceeded):
        build_truncation([I(Z, 2, 4, 6)], 9)
    with pytest.raises(SizeLimitExceeded):
        build_truncation([I(Z, 2)], 20, size_limit=10)


def test_non_faithful_warns_and_loses_rank():
    ZZ = Product(Z, Z)
    with pytest.warns(NonFaithfulWarning):
        T = build_truncation([I(ZZ, (2, 0))], 2)
    # one ideal: the root row sees a single column, so nothing can cancel
    assert relations_full_rank(T)
    # two ideals sharing the annihilator 0 x Z: (0,1) kills both root columns
    with pytest.warns(NonFaithfulWarning):
        T = build_truncation([I(ZZ, (2, 0)), I(ZZ, (3, 0))], 1)
    assert not relations_full_rank(T)
    assert relations_full_rank(build_truncation([I(Z, 4, 6), I(Z, 3)], 2))


def test_probe_reports_finite_depth_artifact():
    G = GabrielTopologyFG.of(Z, [[2]])
    T = build_truncation([I(Z, 2)], 3)
    probes = [FpModule.cyclic(Z, [3]), direct_sum(FpModule.cyclic(Z, [3]), FpModule.cyclic(Z, [9]))]
    rep = ext_vanishing_probe(T, G, probes)
    assert str(rep.tail) == "R/(8)"
    row = rep.per_ideal[0]
    assert row["finite_depth_artifact"] and not row["ext1_ctr_tail_vanishes"]
    assert not row["module_divisible"]
    assert rep.probes_consistent and all(p["in_tilting_class"] for p in rep.probes)


def test_probe_trivial_topology_is_vacuous():
    G = GabrielTopologyFG.trivial(Z)
    T = build_truncation(list(G.basis), 2)
    rep = ext_vanishing_probe(T, G)
    assert rep.tail.is_zero
    assert rep.per_ideal[0]["ext1_ctr_tail_vanishes"]


def test_probe_requires_matching_basis():
    with pytest.raises(ValueError):
        ext_vanishing_probe(build_truncation([I(Z, 2)], 1), GabrielTopologyFG.of(Z, [[3]]))


def _random_faithful_list(rng):
    R = rng.choice([Z, F5, PolyOverPrimeField(3), IntegersModN(6)])
    out = []
    while len(out) < rng.randint(1, 2):
        J = ideal(rng, R, max_gens=2, bound=12)
        if is_faithful(J) and not all(R.is_zero(g) for g in J.generators):
            out.append(J)
    return out


@settings(max_examples=25)
@given(st.integers(0, 10**6))
def test_sizes_and_filtration(seed):
    rng = random.Random(seed)
    ideals = _random_faithful_list(rng)
    depth = rng.randint(0, 3)
    T = build_truncation(ideals, depth)
    gens, rels = tree_sizes(T.branching, len(ideals), depth)
    assert (T.presentation.ngens, T.presentation.relations.cols) == (gens, rels)
    assert all(filtration_quotient(T, k).verdict for k in range(depth))
    assert verify_depth_divisibility(T).passed
    assert relations_full_rank(T)


@given(st.integers(0, 10**6))
def test_path_tree_closed_form(seed):
    rng = random.Random(seed)
    R = rng.choice([Z, F5, PolyOverPrimeField(2)])
    a = R.coerce(rng.choice([2, 3, 5, 7, 12]) if R == Z else tuple(rng.randrange(R.p) for _ in range(3)) + (1,))
    depth = rng.randint(0, 4)
    T = build_truncation([Ideal(R, (a,))], depth)
    assert is_isomorphic(T.presentation, FpModule.free(R, 1))
    power = R.one
    for _ in range(depth):
        power = R.mul(power, a)
    assert is_isomorphic(quotient_by_root(T), FpModule.cyclic(R, [power]))
