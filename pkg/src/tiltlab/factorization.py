"""Factorization in Z (trial division) and GF(p)[x] (Cantor-Zassenhaus)."""

from __future__ import annotations

import random
from collections import Counter
from contextlib import contextmanager
from contextvars import ContextVar

from .domains import INTEGERS, EuclideanDomain, IntegerDomain, PolyDomain
from .errors import FactorizationError

DEFAULT_TRIAL_BOUND = 10**6

_trial_bound: ContextVar[int] = ContextVar("trial_bound", default=DEFAULT_TRIAL_BOUND)


@contextmanager
def using_trial_bound(bound: int):
    """Make ``bound`` the trial-division limit for calls that do not pass one."""
    token = _trial_bound.set(bound)
    try:
        yield
    finally:
        _trial_bound.reset(token)

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def is_probable_prime(n: int) -> bool:
    """Miller-Rabin; deterministic below 3.3e24 with the fixed bases."""
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d, s = d // 2, s + 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def factor_integer(n: int, trial_bound: int | None = None) -> dict[int, int]:
    """Prime factorization of ``|n|`` for ``n != 0``."""
    if trial_bound is None:
        trial_bound = _trial_bound.get()
    n = abs(n)
    out: Counter[int] = Counter()
    q = 2
    while q * q <= n and q <= trial_bound:
        while n % q == 0:
            out[q] += 1
            n //= q
        q += 1 if q == 2 else 2
    if n > 1:
        if q * q > n or is_probable_prime(n):
            out[n] += 1
        else:
            raise FactorizationError(
                f"cofactor {n} has no factor below the trial bound {trial_bound}"
            )
    return dict(out)


# -- GF(p)[x] ---------------------------------------------------------------


def _squarefree(D: PolyDomain, f) -> list[tuple[tuple, int]]:
    """Square-free decomposition of a monic polynomial: list of (g, multiplicity)."""
    p = D.p
    out: list[tuple[tuple, int]] = []
    if D.degree(f) < 1:
        return out
    df = D.derivative(f)
    if not df:
        # f = g(x^p); over GF(p) the p-th root just takes every p-th coefficient
        root = D.strip(f[::p])
        return [(g, m * p) for g, m in _squarefree(D, root)]
    c = D.gcd(f, df)
    w = D.exquo(f, c)
    i = 1
    while D.degree(w) > 0:
        y = D.gcd(w, c)
        fac = D.exquo(w, y)
        if D.degree(fac) > 0:
            out.append((fac, i))
        w, c = y, D.exquo(c, y)
        i += 1
    if D.degree(c) > 0:
        root = D.strip(c[::p])
        out.extend((g, m * p) for g, m in _squarefree(D, root))
    return out


def _distinct_degree(D: PolyDomain, f) -> list[tuple[tuple, int]]:
    """Split a square-free monic ``f`` into products of irreducibles of equal degree."""
    out = []
    x = (0, 1)
    h = x
    d = 0
    while D.degree(f) >= 2 * (d + 1):
        d += 1
        h = D.powmod(h, D.p, f)
        g = D.gcd(D.sub(h, x), f)
        if D.degree(g) > 0:
            out.append((g, d))
            f = D.exquo(f, g)
            h = D.mod(h, f)
    if D.degree(f) > 0:
        out.append((f, D.degree(f)))
    return out


def _equal_degree(D: PolyDomain, f, d: int, rng: random.Random) -> list[tuple]:
    n = D.degree(f)
    if n == d:
        return [f]
    p = D.p
    while True:
        a = D.strip([rng.randrange(p) for _ in range(n)])
        if D.degree(a) < 1:
            continue
        if p == 2:
            # trace map a + a^2 + ... + a^(2^(d-1))
            t, s = a, a
            for _ in range(d - 1):
                s = D.powmod(s, 2, f)
                t = D.add(t, s)
            b = t
        else:
            b = D.sub(D.powmod(a, (p**d - 1) // 2, f), D.one)
        g = D.gcd(b, f)
        if 0 < D.degree(g) < n:
            return _equal_degree(D, g, d, rng) + _equal_degree(D, D.exquo(f, g), d, rng)


def factor_poly(D: PolyDomain, f, seed: int = 0) -> tuple[tuple, dict[tuple, int]]:
    """Return ``(unit, {monic irreducible: exponent})`` for nonzero ``f``."""
    monic, inv = D.normalize(f)
    unit = D.exquo(D.one, inv)
    rng = random.Random(seed)
    out: Counter = Counter()
    for g, mult in _squarefree(D, monic):
        for h, d in _distinct_degree(D, g):
            for irr in _equal_degree(D, h, d, rng):
                out[irr] += mult
    return unit, dict(out)


def is_irreducible(D: PolyDomain, f) -> bool:
    if D.degree(f) < 1:
        return False
    _, facs = factor_poly(D, f)
    return len(facs) == 1 and next(iter(facs.values())) == 1


def factor_element(D: EuclideanDomain, a, trial_bound: int | None = None):
    """Domain-level factorization: ``(unit, {canonical prime: exponent})``."""
    if D.is_zero(a):
        raise ValueError("cannot factor zero")
    if isinstance(D, IntegerDomain):
        return (1 if a > 0 else -1), factor_integer(a, trial_bound)
    return factor_poly(D, a)


def prime_divisors(D: EuclideanDomain, a, trial_bound: int | None = None) -> list:
    """Sorted canonical prime divisors of a nonzero element."""
    _, facs = factor_element(D, a, trial_bound)
    return sorted(facs, key=D.sort_key)


def is_prime_element(D: EuclideanDomain, a) -> bool:
    if D is INTEGERS or isinstance(D, IntegerDomain):
        return is_probable_prime(abs(a))
    return is_irreducible(D, a)
