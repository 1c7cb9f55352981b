"""Smith form over Euclidean domains, Howell form over D/(m), kernels and solving.

The low-level routines work on lists of lists of domain values and are reused
by the module calculus, which does all its homology over the covering PID.
The public functions take and return RingMatrix objects and dispatch on the
ring: Smith form for Z and GF(p)[x], Howell form for Z/n and GF(p)[x]/(f),
componentwise for products.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

from .domains import EuclideanDomain
from .errors import RingMismatch, ShapeMismatch, UnsupportedRing
from .matrix import RingMatrix
from .rings import (
    BaseRing,
    Integers,
    IntegersModN,
    PolyOverPrimeField,
    PolyQuotient,
    Product,
    RingElement,
)

Rows = list[list]


# -- domain level ------------------------------------------------------------


def _identity(D: EuclideanDomain, n: int) -> Rows:
    return [[D.one if i == j else D.zero for j in range(n)] for i in range(n)]


def _row_axpy(D, rows, dst, src, q):
    """rows[dst] -= q * rows[src]"""
    s, d = rows[src], rows[dst]
    for k, x in enumerate(s):
        if not D.is_zero(x):
            d[k] = D.sub(d[k], D.mul(q, x))


def _col_axpy(D, rows, dst, src, q):
    """column dst -= q * column src"""
    for r in rows:
        x = r[src]
        if not D.is_zero(x):
            r[dst] = D.sub(r[dst], D.mul(q, x))


def snf(D: EuclideanDomain, A: Sequence[Sequence], nrows: int, ncols: int):
    """Return ``(S, U, V)`` with ``U A V = S`` diagonal and ``S[i][i] | S[i+1][i+1]``.

    Pivots are chosen with minimal Euclidean size.  Diagonal entries are
    canonical (nonnegative integers, monic polynomials).
    """
    S = [list(r) for r in A]
    U = _identity(D, nrows)
    V = _identity(D, ncols)
    t = 0
    while t < min(nrows, ncols):
        best = None
        for i in range(t, nrows):
            row = S[i]
            for j in range(t, ncols):
                x = row[j]
                if not D.is_zero(x) and (best is None or D.size(x) < best[0]):
                    best = (D.size(x), i, j)
        if best is None:
            break
        _, pi, pj = best
        S[t], S[pi] = S[pi], S[t]
        U[t], U[pi] = U[pi], U[t]
        for r in S:
            r[t], r[pj] = r[pj], r[t]
        for r in V:
            r[t], r[pj] = r[pj], r[t]
        while True:
            p = S[t][t]
            for i in range(t + 1, nrows):
                if not D.is_zero(S[i][t]):
                    q = D.divmod(S[i][t], p)[0]
                    _row_axpy(D, S, i, t, q)
                    _row_axpy(D, U, i, t, q)
            for j in range(t + 1, ncols):
                if not D.is_zero(S[t][j]):
                    q = D.divmod(S[t][j], p)[0]
                    _col_axpy(D, S, j, t, q)
                    _col_axpy(D, V, j, t, q)
            best = None
            for i in range(t + 1, nrows):
                x = S[i][t]
                if not D.is_zero(x) and (best is None or D.size(x) < best[0]):
                    best = (D.size(x), "r", i)
            for j in range(t + 1, ncols):
                x = S[t][j]
                if not D.is_zero(x) and (best is None or D.size(x) < best[0]):
                    best = (D.size(x), "c", j)
            if best is not None:
                _, kind, k = best
                if kind == "r":
                    S[t], S[k] = S[k], S[t]
                    U[t], U[k] = U[k], U[t]
                else:
                    for r in S:
                        r[t], r[k] = r[k], r[t]
                    for r in V:
                        r[t], r[k] = r[k], r[t]
                continue
            if D.is_unit(p):
                break
            bad = next(
                (i for i in range(t + 1, nrows) for j in range(t + 1, ncols) if not D.divides(p, S[i][j])),
                None,
            )
            if bad is None:
                break
            _row_axpy(D, S, t, bad, D.neg(D.one))
            _row_axpy(D, U, t, bad, D.neg(D.one))
        _, u = D.normalize(S[t][t])
        if u != D.one:
            S[t] = [D.mul(u, x) for x in S[t]]
            U[t] = [D.mul(u, x) for x in U[t]]
        t += 1
    return S, U, V


def snf_diagonal(D: EuclideanDomain, A, nrows: int, ncols: int) -> list:
    """Diagonal of the Smith form padded with zeros to ``nrows`` entries."""
    S, _, _ = snf(D, A, nrows, ncols)
    k = min(nrows, ncols)
    return [S[i][i] for i in range(k)] + [D.zero] * (nrows - k)


def dkernel(D: EuclideanDomain, A, nrows: int, ncols: int) -> list[list]:
    """Basis of ``{x in D^ncols : A x = 0}`` as a list of column vectors."""
    if ncols == 0:
        return []
    if nrows == 0:
        return [list(c) for c in _identity(D, ncols)]
    S, _, V = snf(D, A, nrows, ncols)
    rank = sum(1 for i in range(min(nrows, ncols)) if not D.is_zero(S[i][i]))
    return [[V[i][j] for i in range(ncols)] for j in range(rank, ncols)]


def dsolve(D: EuclideanDomain, A, nrows: int, ncols: int, b: Sequence) -> list | None:
    """Some ``x`` with ``A x = b`` over ``D``, or None."""
    if nrows == 0:
        return [D.zero] * ncols
    S, U, V = snf(D, A, nrows, ncols)
    c = [D.zero] * nrows
    for i in range(nrows):
        acc = D.zero
        for a, y in zip(U[i], b):
            acc = D.add(acc, D.mul(a, y))
        c[i] = acc
    y = [D.zero] * ncols
    for i in range(nrows):
        d = S[i][i] if i < ncols else D.zero
        if D.is_zero(d):
            if not D.is_zero(c[i]):
                return None
            continue
        q, r = D.divmod(c[i], d)
        if not D.is_zero(r):
            return None
        y[i] = q
    x = []
    for i in range(ncols):
        acc = D.zero
        for a, yy in zip(V[i], y):
            acc = D.add(acc, D.mul(a, yy))
        x.append(acc)
    return x


def _unit_normalizer(D: EuclideanDomain, a, m):
    """Unit ``u`` modulo ``m`` with ``u*a = gcd(a, m)`` modulo ``m``."""
    g = D.gcd(a, m)
    a1 = D.exquo(a, g)
    m1 = D.exquo(m, g)
    u0 = D.inverse_mod(a1, m1) if not D.is_unit(m1) else D.one
    rest = m
    while True:
        c = D.gcd(rest, m1)
        if D.is_unit(c):
            break
        rest = D.exquo(rest, c)
    u = D.crt(D.mod(u0, m1), m1, D.one, rest) if not D.is_unit(rest) else D.mod(u0, m1)
    return g, u


def howell(D: EuclideanDomain, m, A: Sequence[Sequence], ncols: int) -> Rows:
    """Howell form of the row span of ``A`` over ``D/(m)``; zero rows dropped."""
    H = [[D.mod(x, m) for x in row] for row in A]
    r = 0
    for c in range(ncols):
        for i in range(r + 1, len(H)):
            b = H[i][c]
            if D.is_zero(b):
                continue
            a = H[r][c]
            if D.is_zero(a):
                H[r], H[i] = H[i], H[r]
                continue
            g, s, t = D.gcdex(a, b)
            u, v = D.neg(D.exquo(b, g)), D.exquo(a, g)
            top = [D.mod(D.add(D.mul(s, x), D.mul(t, y)), m) for x, y in zip(H[r], H[i])]
            bot = [D.mod(D.add(D.mul(u, x), D.mul(v, y)), m) for x, y in zip(H[r], H[i])]
            H[r], H[i] = top, bot
        if r >= len(H) or D.is_zero(H[r][c]):
            continue
        g, unit = _unit_normalizer(D, H[r][c], m)
        if unit != D.one:
            H[r] = [D.mod(D.mul(unit, x), m) for x in H[r]]
        for i in range(r):
            q = D.divmod(H[i][c], g)[0]
            if not D.is_zero(q):
                H[i] = [D.mod(D.sub(x, D.mul(q, y)), m) for x, y in zip(H[i], H[r])]
        ann = D.exquo(m, g)
        extra = [D.mod(D.mul(ann, x), m) for x in H[r]]
        if any(not D.is_zero(x) for x in extra):
            H.append(extra)
        r += 1
    return H[:r]


def howell_kernel(D: EuclideanDomain, m, A, nrows: int, ncols: int) -> list[list]:
    """Generators of ``{x : A x = 0}`` over ``D/(m)`` read off a Howell form."""
    aug = [[A[i][j] for i in range(nrows)] + [D.one if k == j else D.zero for k in range(ncols)] for j in range(ncols)]
    H = howell(D, m, aug, nrows + ncols)
    return [row[nrows:] for row in H if all(D.is_zero(x) for x in row[:nrows])]


def howell_solve(D: EuclideanDomain, m, A, nrows: int, ncols: int, b: Sequence) -> list | None:
    """Canonical solution of ``A x = b`` over ``D/(m)``, or None.

    The answer is reduced against the kernel part of the Howell form, so every
    solvable system returns the same representative of its solution coset.
    """
    aug = [[A[i][j] for i in range(nrows)] + [D.one if k == j else D.zero for k in range(ncols)] for j in range(ncols)]
    H = howell(D, m, aug, nrows + ncols)
    v = [D.mod(x, m) for x in b] + [D.zero] * ncols
    width = nrows + ncols
    for row in H:
        c = next(k for k in range(width) if not D.is_zero(row[k]))
        if c >= nrows:
            continue
        q, rem = D.divmod(v[c], row[c])
        if not D.is_zero(rem):
            return None
        v = [D.mod(D.sub(x, D.mul(q, y)), m) for x, y in zip(v, row)]
    if any(not D.is_zero(x) for x in v[:nrows]):
        return None
    x = [D.mod(D.neg(t), m) for t in v[nrows:]]
    for row in H:
        c = next(k for k in range(width) if not D.is_zero(row[k]))
        if c < nrows:
            continue
        q = D.divmod(x[c - nrows], row[c])[0]
        if not D.is_zero(q):
            x = [D.mod(D.sub(t, D.mul(q, y)), m) for t, y in zip(x, row[nrows:])]
    return x


# -- public API --------------------------------------------------------------


@dataclass(frozen=True)
class SmithDecomposition:
    """``U @ A @ V == D`` with ``D`` diagonal and a divisibility chain."""

    D: RingMatrix
    U: RingMatrix
    V: RingMatrix

    @property
    def diagonal(self) -> list[RingElement]:
        return [self.D.entry(i, i) for i in range(min(self.D.rows, self.D.cols))]


def _lists(A: RingMatrix) -> Rows:
    return [list(r) for r in A.data]


def _wrap(ring, rows: Rows, nrows: int, ncols: int) -> RingMatrix:
    return RingMatrix(ring, nrows, ncols, tuple(tuple(r) for r in rows))


def smith_normal_form(A: RingMatrix) -> SmithDecomposition:
    R = A.ring
    if not isinstance(R, (Integers, PolyOverPrimeField)):
        raise UnsupportedRing(f"Smith form needs a Euclidean domain, not {R}")
    S, U, V = snf(R.domain, _lists(A), A.rows, A.cols)
    return SmithDecomposition(
        _wrap(R, S, A.rows, A.cols), _wrap(R, U, A.rows, A.rows), _wrap(R, V, A.cols, A.cols)
    )


def howell_form(A: RingMatrix) -> RingMatrix:
    R = A.ring
    if not isinstance(R, (IntegersModN, PolyQuotient)):
        raise UnsupportedRing(f"Howell form needs Z/n or GF(p)[x]/(f), not {R}")
    H = howell(R.domain, R.modulus, _lists(A), A.cols)
    return _wrap(R, H, len(H), A.cols)


def _base_kernel(A: RingMatrix) -> list[list]:
    R: BaseRing = A.ring
    if R.is_domain:
        return dkernel(R.domain, _lists(A), A.rows, A.cols)
    return howell_kernel(R.domain, R.modulus, _lists(A), A.rows, A.cols)


def kernel(A: RingMatrix) -> RingMatrix:
    """Matrix whose columns generate ``{x : A x = 0}``."""
    R = A.ring
    if isinstance(R, Product):
        left = _base_kernel(A.project(0))
        right = _base_kernel(A.project(1))
        cols = [[R.embed(0, x) for x in c] for c in left]
        cols += [[R.embed(1, x) for x in c] for c in right]
        return RingMatrix.from_columns(R, cols, A.cols)
    cols = _base_kernel(A)
    return RingMatrix(R, A.cols, len(cols), tuple(tuple(c[i] for c in cols) for i in range(A.cols)))


def _base_solve(A: RingMatrix, b: Sequence) -> list | None:
    R: BaseRing = A.ring
    if R.is_domain:
        return dsolve(R.domain, _lists(A), A.rows, A.cols, b)
    return howell_solve(R.domain, R.modulus, _lists(A), A.rows, A.cols, b)


def solve_payloads(A: RingMatrix, b: Sequence) -> tuple | None:
    """Like :func:`solve` but on raw payloads."""
    if len(b) != A.rows:
        raise ShapeMismatch(f"right-hand side has length {len(b)}, expected {A.rows}")
    R = A.ring
    if isinstance(R, Product):
        x0 = _base_solve(A.project(0), [v[0] for v in b])
        if x0 is None:
            return None
        x1 = _base_solve(A.project(1), [v[1] for v in b])
        if x1 is None:
            return None
        return tuple(zip(x0, x1))
    x = _base_solve(A, b)
    return None if x is None else tuple(x)


def _base_span_test(A: RingMatrix) -> Callable[[Sequence], bool]:
    R: BaseRing = A.ring
    D = R.domain
    rows, cols = A.rows, A.cols
    if R.is_domain:
        S, U, _ = snf(D, _lists(A), rows, cols)
        diag = [S[i][i] if i < cols else D.zero for i in range(rows)]

        def test(b: Sequence) -> bool:
            for Ui, d in zip(U, diag):
                acc = D.zero
                for a, y in zip(Ui, b):
                    acc = D.add(acc, D.mul(a, y))
                ok = D.is_zero(acc) if D.is_zero(d) else D.divides(d, acc)
                if not ok:
                    return False
            return True

        return test
    m = R.modulus
    H = howell(D, m, [list(c) for c in A.columns()], rows)
    pivots = [next(k for k in range(rows) if not D.is_zero(h[k])) for h in H]

    def test(b: Sequence) -> bool:
        v = [D.mod(x, m) for x in b]
        for h, c in zip(H, pivots):
            q, rem = D.divmod(v[c], h[c])
            if not D.is_zero(rem):
                return False
            if not D.is_zero(q):
                v = [D.mod(D.sub(x, D.mul(q, y)), m) for x, y in zip(v, h)]
        return all(D.is_zero(x) for x in v)

    return test


def column_span_test(A: RingMatrix) -> Callable[[Sequence], bool]:
    """Membership test for the column span of ``A``, reusable across many payload vectors.

    The normal form is computed once, so checking many right-hand sides against
    the same matrix costs one reduction each instead of one solve each.
    """
    R = A.ring
    if isinstance(R, Product):
        left, right = _base_span_test(A.project(0)), _base_span_test(A.project(1))
        return lambda b: left([v[0] for v in b]) and right([v[1] for v in b])
    return _base_span_test(A)


def solve(A: RingMatrix, b: Sequence) -> tuple[RingElement, ...] | None:
    """Solve ``A x = b``; None when there is no solution."""
    R = A.ring
    payloads = []
    for v in b:
        if isinstance(v, RingElement) and v.ring != R:
            raise RingMismatch(f"{v.ring} vs {R}")
        payloads.append(R.coerce(v))
    x = solve_payloads(A, payloads)
    return None if x is None else tuple(RingElement(R, v) for v in x)
