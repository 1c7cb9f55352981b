"""Finitely presented modules: invariants, isomorphism, sums, tensor, Hom, Ext^1, Tor_1.

A module is ``coker(relations: R^k -> R^ngens)``.  Over ``R = D/(m)`` every
R-module is a D-module killed by ``m``, so invariants and homology are
computed over the covering PID ``D`` after appending ``m``-multiples of the
generators to the relations.  Product rings are split into components, the
work is done per component, and the results are glued back together.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

from .errors import RingMismatch, ShapeMismatch
from .factorization import factor_element
from .matrix import RingMatrix
from .normal_forms import dkernel, kernel, snf_diagonal
from .rings import BaseRing, Product, RingElement, RingSpec


@dataclass(frozen=True)
class FpModule:
    ring: RingSpec
    ngens: int
    relations: RingMatrix

    def __post_init__(self):
        if self.relations.ring != self.ring:
            raise RingMismatch(f"relations over {self.relations.ring}, module over {self.ring}")
        if self.relations.rows != self.ngens:
            raise ShapeMismatch(
                f"relation matrix has {self.relations.rows} rows for {self.ngens} generators"
            )

    @classmethod
    def free(cls, ring: RingSpec, rank: int) -> "FpModule":
        return cls(ring, rank, RingMatrix.zeros(ring, rank, 0))

    @classmethod
    def zero(cls, ring: RingSpec) -> "FpModule":
        return cls.free(ring, 0)

    @classmethod
    def from_rows(cls, ring: RingSpec, rows: Sequence[Sequence], ngens: int | None = None) -> "FpModule":
        """Module whose relation matrix has the given rows (one row per generator)."""
        rel = RingMatrix.from_rows(ring, rows)
        if ngens is not None and rel.rows != ngens:
            if rel.rows == 0:
                rel = RingMatrix.zeros(ring, ngens, 0)
            else:
                raise ShapeMismatch("row count differs from ngens")
        return cls(ring, rel.rows, rel)

    @classmethod
    def cyclic(cls, ring: RingSpec, generators: Sequence) -> "FpModule":
        """``R/I`` for the ideal generated by ``generators``."""
        return cls(ring, 1, RingMatrix.from_rows(ring, [list(generators)]))

    @classmethod
    def from_invariants(cls, ring: RingSpec, factors: Sequence, free_rank: int = 0) -> "FpModule":
        """``R^free_rank ⊕ ⊕ R/(d)``."""
        factors = [ring.coerce(d) for d in factors]
        n = len(factors) + free_rank
        return cls(ring, n, RingMatrix.diagonal(ring, n, len(factors), factors))

    def add_relations(self, columns: Sequence[Sequence]) -> "FpModule":
        extra = RingMatrix.from_columns(self.ring, columns, self.ngens)
        return FpModule(self.ring, self.ngens, self.relations.hstack(extra))

    def project(self, index: int) -> "FpModule":
        part = self.ring.components[index]
        return FpModule(part, self.ngens, self.relations.project(index))

    def __str__(self) -> str:
        return str(canonical_invariants(self))


# -- product rings -----------------------------------------------------------


def split(M: FpModule) -> tuple[FpModule, FpModule]:
    return M.project(0), M.project(1)


def join(ring: Product, left: FpModule, right: FpModule) -> FpModule:
    """``left × right`` as a module over the product ring."""
    n1, n2 = left.ngens, right.ngens
    n = n1 + n2
    z = ring.zero
    cols = []
    for c in left.relations.columns():
        cols.append([ring.embed(0, x) for x in c] + [z] * n2)
    for i in range(n1):
        cols.append([ring.embed(1, ring.right.one) if j == i else z for j in range(n)])
    for c in right.relations.columns():
        cols.append([z] * n1 + [ring.embed(1, x) for x in c])
    for i in range(n2):
        cols.append([ring.embed(0, ring.left.one) if j == n1 + i else z for j in range(n)])
    return FpModule(ring, n, RingMatrix.from_columns(ring, cols, n))


def _same_ring(*mods: FpModule) -> RingSpec:
    ring = mods[0].ring
    for M in mods[1:]:
        if M.ring != ring:
            raise RingMismatch(f"{ring} vs {M.ring}")
    return ring


def _componentwise(fn: Callable[..., FpModule], *mods: FpModule) -> FpModule:
    ring = _same_ring(*mods)
    if isinstance(ring, Product):
        left = fn(*(M.project(0) for M in mods))
        right = fn(*(M.project(1) for M in mods))
        return join(ring, left, right)
    return fn(*mods)


# -- covering-PID helpers ----------------------------------------------------


def d_presentation(M: FpModule) -> list[list]:
    """Relations of ``M`` as a D-module: lifted relations plus ``m``-multiples."""
    R: BaseRing = M.ring
    D = R.domain
    rows = [list(r) for r in M.relations.data]
    if not R.is_domain:
        for i, row in enumerate(rows):
            row.extend(R.modulus if j == i else D.zero for j in range(M.ngens))
    return rows


def _d_columns(M: FpModule) -> int:
    return M.relations.cols + (0 if M.ring.is_domain else M.ngens)


def d_invariants(M: FpModule) -> list:
    """Non-unit Smith invariants of ``M`` as a D-module (zeros mark free summands over D)."""
    R: BaseRing = M.ring
    D = R.domain
    diag = snf_diagonal(D, d_presentation(M), M.ngens, _d_columns(M))
    return [D.canonical(d) for d in diag if not D.is_unit(d)]


def _ring_chain(M: FpModule) -> list:
    """Invariant factors as payloads of the base ring; ``0`` marks a free summand."""
    R: BaseRing = M.ring
    return [R.reduce(d) for d in d_invariants(M)]


def _blockdiag(D, B: list[list], rows: int, cols: int, copies: int) -> list[list]:
    out = []
    for c in range(copies):
        for i in range(rows):
            line = [D.zero] * (cols * copies)
            line[c * cols:(c + 1) * cols] = B[i]
            out.append(line)
    return out


def _kron_identity(D, T: RingMatrix, k: int) -> list[list]:
    """``T ⊗ I_k`` on lifted entries."""
    out = []
    for row in T.data:
        for a in range(k):
            line = [D.zero] * (T.cols * k)
            for j, x in enumerate(row):
                line[j * k + a] = x
            out.append(line)
    return out


def _columns_to_module(R: BaseRing, cols: list[list], ngens: int) -> FpModule:
    D = R.domain
    cols = [[R.reduce(x) for x in c] for c in cols]
    cols = [c for c in cols if any(not D.is_zero(x) for x in c)]
    data = tuple(tuple(c[i] for c in cols) for i in range(ngens))
    return FpModule(R, ngens, RingMatrix(R, ngens, len(cols), data))


def _d_subquotient(R: BaseRing, length: int, sub: list[list], quo: list[list], amb: list[list]) -> FpModule:
    """``(span sub + amb) / (span quo + amb)`` presented on the ``sub`` vectors.

    ``amb`` is a ``length × a`` relation matrix (rows); ``sub`` and ``quo`` are
    lists of column vectors of that length.
    """
    D = R.domain
    s = len(sub)
    if s == 0:
        return FpModule.zero(R)
    a = len(amb[0]) if amb else 0
    big = []
    for i in range(length):
        big.append([v[i] for v in sub] + [v[i] for v in quo] + list(amb[i]))
    ker = dkernel(D, big, length, s + len(quo) + a)
    return _columns_to_module(R, [v[:s] for v in ker], s)


def _d_homology(N: FpModule, mid: int, incoming: RingMatrix | None, outgoing: RingMatrix | None) -> FpModule:
    """Homology at ``N^mid`` of ``N^src --incoming--> N^mid --outgoing--> N^tgt``.

    The maps are R-matrices acting blockwise (``T ⊗ id_N``).
    """
    R: BaseRing = N.ring
    D = R.domain
    k = N.ngens
    B = d_presentation(N)
    b = _d_columns(N)
    length = mid * k
    amb = _blockdiag(D, B, k, b, mid)
    if outgoing is not None and outgoing.rows > 0:
        tgt = outgoing.rows
        G = _kron_identity(D, outgoing, k)
        Bt = _blockdiag(D, B, k, b, tgt)
        big = [g + bt for g, bt in zip(G, Bt)]
        ker = dkernel(D, big, tgt * k, length + tgt * b)
        sub = [v[:length] for v in ker]
        sub = [v for v in sub if any(not D.is_zero(x) for x in v)]
    else:
        sub = [[D.one if i == j else D.zero for i in range(length)] for j in range(length)]
    quo = []
    if incoming is not None and incoming.cols > 0:
        F = _kron_identity(D, incoming, k)
        quo = [[F[i][j] for i in range(length)] for j in range(incoming.cols * k)]
    return _d_subquotient(R, length, sub, quo, amb)


# -- invariants --------------------------------------------------------------


@dataclass(frozen=True)
class CanonicalInvariants:
    """``M ≅ R^free_rank ⊕ ⊕ R/(d_i)`` with ``d_1 | d_2 | ...``."""

    free_rank: int
    torsion_factors: tuple[RingElement, ...]

    @property
    def is_zero(self) -> bool:
        return self.free_rank == 0 and not self.torsion_factors

    def to_json(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": [str(d) for d in self.torsion_factors]}

    def __str__(self) -> str:
        parts = [f"R/({d})" for d in self.torsion_factors]
        if self.free_rank:
            parts.append(f"R^{self.free_rank}")
        return " + ".join(parts) if parts else "0"


def canonical_invariants(M: FpModule) -> CanonicalInvariants:
    R = M.ring
    if isinstance(R, Product):
        chains = [_ring_chain(part) for part in split(M)]
        width = max(len(c) for c in chains)
        padded = [
            [comp.one] * (width - len(c)) + c for comp, c in zip(R.components, chains)
        ]
        pairs = [p for p in zip(*padded) if not R.unit_test(p)]
        free = sum(1 for p in pairs if R.is_zero(p))
        tors = tuple(RingElement(R, p) for p in pairs if not R.is_zero(p))
        return CanonicalInvariants(free, tors)
    chain = _ring_chain(M)
    free = sum(1 for d in chain if R.is_zero(d))
    return CanonicalInvariants(free, tuple(RingElement(R, d) for d in chain if not R.is_zero(d)))


def is_zero_module(M: FpModule) -> bool:
    return canonical_invariants(M).is_zero


def is_isomorphic(M: FpModule, N: FpModule) -> bool:
    _same_ring(M, N)
    return canonical_invariants(M) == canonical_invariants(N)


def module_order(M: FpModule) -> int:
    """Number of elements of ``M`` (finite rings only)."""
    R = M.ring
    if not R.is_finite:
        raise ValueError(f"{R} is infinite")
    if isinstance(R, Product):
        return module_order(M.project(0)) * module_order(M.project(1))
    D = R.domain
    out = 1
    for d in d_invariants(M):
        out *= D.order(d)
    return out


# -- constructions -----------------------------------------------------------


def direct_sum(M: FpModule, N: FpModule) -> FpModule:
    ring = _same_ring(M, N)
    return FpModule(ring, M.ngens + N.ngens, M.relations.block_diag(N.relations))


def tensor(M: FpModule, N: FpModule) -> FpModule:
    """Generators ``e_i ⊗ f_j`` (index ``i*N.ngens + j``)."""
    ring = _same_ring(M, N)
    IM = RingMatrix.identity(ring, M.ngens)
    IN = RingMatrix.identity(ring, N.ngens)
    rel = M.relations.kron(IN).hstack(IM.kron(N.relations))
    return FpModule(ring, M.ngens * N.ngens, rel)


def _hom_base(M: FpModule, N: FpModule) -> FpModule:
    return _d_homology(N, M.ngens, None, M.relations.T)


def _ext1_base(M: FpModule, N: FpModule) -> FpModule:
    A = M.relations
    C = kernel(A)
    return _d_homology(N, A.cols, A.T, C.T)


def _tor1_base(M: FpModule, N: FpModule) -> FpModule:
    A = M.relations
    C = kernel(A)
    return _d_homology(N, A.cols, C, A)


def hom_module(M: FpModule, N: FpModule) -> FpModule:
    """``Hom_R(M, N)``: tuples of images of M's generators satisfying its relations."""
    return _componentwise(_hom_base, M, N)


def ext1(M: FpModule, N: FpModule) -> FpModule:
    return _componentwise(_ext1_base, M, N)


def tor1(M: FpModule, N: FpModule) -> FpModule:
    return _componentwise(_tor1_base, M, N)


def subquotient(M: FpModule, sub: Sequence[Sequence], quo: Sequence[Sequence]) -> FpModule:
    """``(⟨sub⟩ + rel) / (⟨quo⟩ + rel)`` inside ``R^ngens / rel``, presented on ``sub``.

    ``sub`` and ``quo`` are lists of coordinate vectors in ``R^ngens``.
    """
    ring = M.ring
    sub = [[ring.coerce(x) for x in v] for v in sub]
    quo = [[ring.coerce(x) for x in v] for v in quo]

    def base(part: FpModule, s, q) -> FpModule:
        B = d_presentation(part)
        return _d_subquotient(part.ring, part.ngens, s, q, B)

    if isinstance(ring, Product):
        parts = []
        for idx in (0, 1):
            parts.append(
                base(M.project(idx), [[x[idx] for x in v] for v in sub], [[x[idx] for x in v] for v in quo])
            )
        return join(ring, *parts)
    return base(M, sub, quo)


def quotient_by_ideal(M: FpModule, generators: Sequence) -> FpModule:
    """``M / I M`` for the ideal generated by ``generators``."""
    ring = M.ring
    gens = [ring.coerce(x) for x in generators]
    cols = []
    for j in range(M.ngens):
        for x in gens:
            cols.append([x if i == j else ring.zero for i in range(M.ngens)])
    return M.add_relations(cols)


# -- projectivity ------------------------------------------------------------


def _base_projective(M: FpModule, trial_bound: int | None) -> bool:
    R: BaseRing = M.ring
    D = R.domain
    invariants = d_invariants(M)
    if R.is_domain:
        return all(D.is_zero(d) for d in invariants)
    _, primes = factor_element(D, R.modulus, trial_bound)
    for d in invariants:
        for q, e in primes.items():
            v = D.valuation(d, q)
            if v not in (0, e):
                return False
    return True


def is_projective(M: FpModule, trial_bound: int | None = None) -> bool:
    """Projective = locally free; over D/(m) checked prime-power by prime-power."""
    R = M.ring
    if isinstance(R, Product):
        return all(_base_projective(part, trial_bound) for part in split(M))
    return _base_projective(M, trial_bound)


def syzygy(M: FpModule) -> FpModule:
    """The image of the relations in ``R^ngens``, presented as ``R^k / ker(relations)``."""
    A = M.relations
    return FpModule(M.ring, A.cols, kernel(A))


# -- display -----------------------------------------------------------------


def _unit_inverse(ring: RingSpec, a):
    if isinstance(ring, Product):
        return (_unit_inverse(ring.left, a[0]), _unit_inverse(ring.right, a[1]))
    return ring.reduce(ring.domain.inverse_mod(a, ring.modulus))


def minimize(M: FpModule) -> FpModule:
    """Drop generators eliminated by a relation with a unit coefficient.

    Only used for display: the presentation itself carries meaning for the
    transpose, so nothing minimizes implicitly.
    """
    R = M.ring
    rows = [list(r) for r in M.relations.data]
    ncols = M.relations.cols
    alive_rows = list(range(M.ngens))
    alive_cols = list(range(ncols))
    changed = True
    while changed:
        changed = False
        for c in alive_cols:
            i = next((i for i in alive_rows if R.unit_test(rows[i][c])), None)
            if i is None:
                continue
            inv = _unit_inverse(R, rows[i][c])
            for c2 in alive_cols:
                if c2 == c or R.is_zero(rows[i][c2]):
                    continue
                q = R.mul(rows[i][c2], inv)
                for r in alive_rows:
                    rows[r][c2] = R.sub(rows[r][c2], R.mul(q, rows[r][c]))
            alive_rows.remove(i)
            alive_cols.remove(c)
            changed = True
            break
    alive_cols = [c for c in alive_cols if any(not R.is_zero(rows[r][c]) for r in alive_rows)]
    data = tuple(tuple(rows[r][c] for c in alive_cols) for r in alive_rows)
    return FpModule(R, len(alive_rows), RingMatrix(R, len(alive_rows), len(alive_cols), data))
