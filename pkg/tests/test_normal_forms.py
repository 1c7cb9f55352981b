from __future__ import annotations

import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from generators import SMALL_FINITE_RINGS, Z, element, matrix
from oracles import bareiss_det, brute_kernel, span
from tiltlab.errors import ShapeMismatch, UnsupportedRing
from tiltlab.matrix import RingMatrix
from tiltlab.normal_forms import (
    column_span_test,
    howell_form,
    kernel,
    smith_normal_form,
    solve,
    solve_payloads,
)
from tiltlab.rings import IntegersModN, PolyOverPrimeField, PolyQuotient, Product, RingElement

F5 = PolyOverPrimeField(5)
HOWELL_RINGS = (IntegersModN(12), IntegersModN(16), IntegersModN(9), PolyQuotient(2, (0, 0, 1)), PolyQuotient(3, (0, 0, 1)))


def M(R, rows, cols=None):
    return RingMatrix.from_rows(R, rows, cols)


def values(xs):
    return [x.value for x in xs]


def test_smith_examples():
    assert smith_normal_form(M(Z, [[4], [6]])).D == M(Z, [[2], [0]])
    assert smith_normal_form(RingMatrix.identity(Z, 2)).D == RingMatrix.identity(Z, 2)
    assert smith_normal_form(M(Z, [[2, 0], [0, 3]])).D == M(Z, [[1, 0], [0, 6]])


def test_smith_rejects_non_domains():
    with pytest.raises(UnsupportedRing):
        smith_normal_form(M(IntegersModN(4), [[2]]))


def test_howell_examples():
    Z4, Z6 = IntegersModN(4), IntegersModN(6)
    assert howell_form(M(Z4, [[2]])) == M(Z4, [[2]])
    assert howell_form(M(Z6, [[2], [3]])) == M(Z6, [[1]])
    assert howell_form(RingMatrix.zeros(Z6, 2, 3)).rows == 0


def test_howell_rejects_domains():
    with pytest.raises(UnsupportedRing):
        howell_form(M(Z, [[2]]))


def test_kernel_examples():
    Z4 = IntegersModN(4)
    K = kernel(M(Z4, [[2]]))
    assert span(Z4, K.columns(), 1) == {(0,), (2,)}
    assert kernel(M(Z, [[2]])).cols == 0
    K = kernel(M(Z, [[1, 1]]))
    assert K.cols == 1 and K.column(0) in ((1, -1), (-1, 1))


def test_solve_examples():
    assert values(solve(M(Z, [[2]]), [6])) == [3]
    assert solve(M(Z, [[2]]), [3]) is None
    x = solve(M(IntegersModN(4), [[2]]), [2])
    assert x[0].value % 2 == 1
    with pytest.raises(ShapeMismatch):
        solve(M(Z, [[2]]), [1, 2])


@given(st.integers(0, 10**6))
def test_smith_contract(seed):
    rng = random.Random(seed)
    R = rng.choice([Z, F5, PolyOverPrimeField(2)])
    A = matrix(rng, R, rng.randint(0, 5), rng.randint(0, 5), bound=50, degree=2)
    S = smith_normal_form(A)
    D = R.domain
    assert S.U @ A @ S.V == S.D
    assert D.is_unit(bareiss_det(D, [list(r) for r in S.U.data]))
    assert D.is_unit(bareiss_det(D, [list(r) for r in S.V.data]))
    diag = [S.D.data[i][i] for i in range(min(A.rows, A.cols))]
    assert all(D.divides(a, b) for a, b in zip(diag, diag[1:]))


@given(st.integers(0, 10**6))
def test_howell_idempotent_and_span_canonical(seed):
    rng = random.Random(seed)
    R = rng.choice(HOWELL_RINGS)
    A = matrix(rng, R, rng.randint(1, 4), rng.randint(1, 3), bound=20)
    H = howell_form(A)
    assert howell_form(H) == H
    assert span(R, H.data, A.cols) == span(R, A.data, A.cols)
    # stacking rows already in the span leaves the form unchanged
    combo = M(R, [[element(rng, R, 5) for _ in range(A.rows)]], A.rows) @ A
    assert howell_form(A.vstack(combo)) == H
    assert howell_form(H.vstack(A)) == H


@pytest.mark.parametrize("R", SMALL_FINITE_RINGS)
def test_kernel_completeness(R):
    rng = random.Random(str(R))
    for _ in range(5):
        A = matrix(rng, R, rng.randint(1, 2), rng.randint(1, 2), bound=20)
        K = kernel(A)
        zero = tuple(R.zero for _ in range(A.rows))
        assert all(A.apply(c) == zero for c in K.columns())
        assert span(R, K.columns(), A.cols) == frozenset(brute_kernel(A))


@pytest.mark.parametrize("R", SMALL_FINITE_RINGS)
def test_solve_agrees_with_enumeration(R):
    rng = random.Random(str(R) + "solve")
    for _ in range(5):
        A = matrix(rng, R, rng.randint(1, 2), rng.randint(1, 2), bound=20)
        image = span(R, A.columns(), A.rows)
        for b in span(R, [[R.one if i == j else R.zero for i in range(A.rows)] for j in range(A.rows)], A.rows):
            x = solve(A, [RingElement(R, v) for v in b])
            assert (x is not None) == (b in image)
            if x is not None:
                assert A.apply(values(x)) == b


def test_kernel_over_domains_spans_rational_kernel():
    rng = random.Random(3)
    for _ in range(50):
        A = matrix(rng, Z, rng.randint(1, 4), rng.randint(1, 5), bound=10)
        K = kernel(A)
        assert (A @ K).is_zero()
        x = [rng.randint(-3, 3) for _ in range(K.cols)]
        v = K.apply(x)
        assert A.apply(v) == tuple(0 for _ in range(A.rows))
        # saturation: any integer kernel vector is an integer combination
        assert K.cols == A.cols - len([d for d in smith_normal_form(A).diagonal if not d.is_zero()])


@given(st.integers(0, 10**6))
def test_column_span_test_agrees_with_solve(seed):
    rng = random.Random(seed)
    R = rng.choice(SMALL_FINITE_RINGS + (Z, F5, Product(Z, IntegersModN(6))))
    A = matrix(rng, R, rng.randint(1, 4), rng.randint(0, 4), bound=12)
    test = column_span_test(A)
    for _ in range(5):
        b = [element(rng, R, 12) for _ in range(A.rows)]
        assert test(b) == (solve_payloads(A, b) is not None)
        if A.cols:
            img = A.apply([element(rng, R, 5) for _ in range(A.cols)])
            assert test(img)
