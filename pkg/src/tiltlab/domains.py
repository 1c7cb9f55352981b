"""Euclidean domains that cover every supported ring: Z and GF(p)[x].

Values are plain Python objects: ``int`` for Z, and tuples of coefficients
(lowest degree first, no trailing zeros, the zero polynomial is ``()``) for
GF(p)[x].  Every supported ring is either one of these domains or a quotient
of one of them by a single element, so all the exact linear algebra is done
here.
"""

from __future__ import annotations

from typing import Any, Sequence

Poly = tuple[int, ...]


class EuclideanDomain:
    """Operations shared by both domains; subclasses supply the primitives."""

    zero: Any
    one: Any

    # primitives -------------------------------------------------------------
    def add(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def divmod(self, a, b):
        raise NotImplementedError

    def size(self, a) -> int:
        """Euclidean size: ``abs`` for integers, degree for polynomials."""
        raise NotImplementedError

    def normalize(self, a):
        """Return ``(c, u)`` with ``c = a*u`` the canonical associate and ``u`` a unit."""
        raise NotImplementedError

    def from_int(self, k: int):
        raise NotImplementedError

    def order(self, a) -> int:
        """Cardinality of ``D/(a)`` for ``a != 0``."""
        raise NotImplementedError

    # derived ----------------------------------------------------------------
    def is_zero(self, a) -> bool:
        return a == self.zero

    def is_unit(self, a) -> bool:
        return not self.is_zero(a) and self.size(a) == self.size(self.one)

    def canonical(self, a):
        return self.normalize(a)[0]

    def mod(self, a, b):
        return self.divmod(a, b)[1]

    def divides(self, a, b) -> bool:
        """True when ``a | b``."""
        if self.is_zero(a):
            return self.is_zero(b)
        return self.is_zero(self.mod(b, a))

    def exquo(self, a, b):
        q, r = self.divmod(a, b)
        if not self.is_zero(r):
            raise ArithmeticError(f"{b!r} does not divide {a!r}")
        return q

    def gcdex(self, a, b):
        """Return ``(g, s, t)`` with ``s*a + t*b = g`` and ``g`` canonical."""
        r0, r1 = a, b
        s0, s1 = self.one, self.zero
        t0, t1 = self.zero, self.one
        while not self.is_zero(r1):
            q, r = self.divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, self.sub(s0, self.mul(q, s1))
            t0, t1 = t1, self.sub(t0, self.mul(q, t1))
        g, u = self.normalize(r0)
        return g, self.mul(s0, u), self.mul(t0, u)

    def gcd(self, a, b):
        return self.gcdex(a, b)[0]

    def gcd_many(self, values: Sequence):
        g = self.zero
        for v in values:
            g = self.gcd(g, v)
        return g

    def lcm(self, a, b):
        if self.is_zero(a) or self.is_zero(b):
            return self.zero
        return self.canonical(self.exquo(self.mul(a, b), self.gcd(a, b)))

    def inverse_mod(self, a, m):
        """Inverse of ``a`` modulo ``m``; ``ArithmeticError`` when not a unit."""
        g, s, _ = self.gcdex(a, m)
        if not self.is_unit(g):
            raise ArithmeticError(f"{a!r} is not invertible modulo {m!r}")
        # g is canonical, hence equal to one
        return self.mod(s, m) if not self.is_zero(m) else s

    def power(self, a, e: int):
        result, base = self.one, a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def valuation(self, a, q) -> int:
        """Exponent of the prime ``q`` in ``a``; ``a`` must be nonzero."""
        v = 0
        while True:
            quo, r = self.divmod(a, q)
            if not self.is_zero(r):
                return v
            a, v = quo, v + 1

    def crt(self, r1, m1, r2, m2):
        """Solve ``x = r1 mod m1``, ``x = r2 mod m2`` for coprime moduli."""
        g, s, t = self.gcdex(m1, m2)
        if not self.is_unit(g):
            raise ArithmeticError("moduli not coprime")
        m = self.mul(m1, m2)
        x = self.add(self.mul(self.mul(r1, t), m2), self.mul(self.mul(r2, s), m1))
        return self.mod(x, m)

    def sort_key(self, a):
        raise NotImplementedError


class IntegerDomain(EuclideanDomain):
    zero = 0
    one = 1

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def divmod(self, a, b):
        return divmod(a, b)

    def mod(self, a, b):
        return a % b

    def size(self, a) -> int:
        return abs(a)

    def normalize(self, a):
        return (a, 1) if a >= 0 else (-a, -1)

    def is_unit(self, a) -> bool:
        return a == 1 or a == -1

    def from_int(self, k: int):
        return k

    def order(self, a) -> int:
        return abs(a)

    def sort_key(self, a):
        return (abs(a), a < 0)

    def __repr__(self) -> str:
        return "IntegerDomain()"

    def __eq__(self, other) -> bool:
        return isinstance(other, IntegerDomain)

    def __hash__(self) -> int:
        return hash("Z")


class PolyDomain(EuclideanDomain):
    """GF(p)[x] on coefficient tuples."""

    zero: Poly = ()
    one: Poly = (1,)

    def __init__(self, p: int):
        self.p = p

    def __repr__(self) -> str:
        return f"PolyDomain({self.p})"

    def __eq__(self, other) -> bool:
        return isinstance(other, PolyDomain) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("GF", self.p))

    def strip(self, coeffs) -> Poly:
        c = [x % self.p for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        return tuple(c)

    def add(self, a, b):
        if len(a) < len(b):
            a, b = b, a
        return self.strip([x + (b[i] if i < len(b) else 0) for i, x in enumerate(a)])

    def neg(self, a):
        return tuple((-x) % self.p for x in a)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if not a or not b:
            return ()
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return self.strip(out)

    def scale(self, a, c: int):
        return self.strip([x * c for x in a])

    def divmod(self, a, b):
        if not b:
            raise ZeroDivisionError("polynomial division by zero")
        p = self.p
        inv = pow(b[-1], p - 2, p)
        r = list(a)
        db = len(b) - 1
        if len(r) - 1 < db:
            return (), tuple(a)
        q = [0] * (len(r) - db)
        for k in range(len(r) - 1 - db, -1, -1):
            c = (r[k + db] * inv) % p
            q[k] = c
            if c:
                for j, y in enumerate(b):
                    r[k + j] = (r[k + j] - c * y) % p
        return self.strip(q), self.strip(r[:db])

    def size(self, a) -> int:
        return len(a) - 1

    def degree(self, a) -> int:
        return len(a) - 1

    def normalize(self, a):
        if not a:
            return (), (1,)
        inv = pow(a[-1], self.p - 2, self.p)
        return self.scale(a, inv), (inv,)

    def is_unit(self, a) -> bool:
        return len(a) == 1

    def from_int(self, k: int):
        return self.strip([k])

    def order(self, a) -> int:
        return self.p ** self.degree(a)

    def sort_key(self, a):
        return (len(a), tuple(reversed(a)))

    def powmod(self, a, e: int, m):
        result, base = self.one, self.mod(a, m)
        while e:
            if e & 1:
                result = self.mod(self.mul(result, base), m)
            base = self.mod(self.mul(base, base), m)
            e >>= 1
        return result

    def derivative(self, a):
        return self.strip([i * a[i] for i in range(1, len(a))])


INTEGERS = IntegerDomain()
