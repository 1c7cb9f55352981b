"""Computable commutative base rings and exact elements.

Five ring kinds are supported: ``Z``, ``Z/n``, ``GF(p)[x]``, ``GF(p)[x]/(f)``
and binary products of those.  Each non-product ring is ``D/(m)`` for a
Euclidean domain ``D`` (the *covering PID*) and a modulus ``m`` (zero for the
two domains); element payloads are canonical ``D``-values reduced modulo
``m``.  Product payloads are pairs of component payloads.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Any, Iterator

from .domains import INTEGERS, EuclideanDomain, PolyDomain
from .errors import RingMismatch, SemanticError, UnsupportedRing, ZeroInput
from .factorization import factor_element, is_probable_prime


def format_poly(coeffs: tuple[int, ...], var: str = "x") -> str:
    if not coeffs:
        return "0"
    terms = []
    for e in range(len(coeffs) - 1, -1, -1):
        c = coeffs[e]
        if not c:
            continue
        if e == 0:
            terms.append(str(c))
            continue
        mono = var if e == 1 else f"{var}^{e}"
        terms.append(mono if c == 1 else f"{c}*{mono}")
    return "+".join(terms)


class RingSpec:
    """Common interface; payload-level operations are used by the matrix code."""

    is_product = False

    # payload arithmetic -------------------------------------------------------
    @property
    def zero(self) -> Any:
        raise NotImplementedError

    @property
    def one(self) -> Any:
        raise NotImplementedError

    def add(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def is_zero(self, a) -> bool:
        return a == self.zero

    def coerce(self, value) -> Any:
        """Turn an int, payload, RingElement or literal string into a payload."""
        raise NotImplementedError

    def format(self, a) -> str:
        raise NotImplementedError

    def unit_test(self, a) -> bool:
        raise NotImplementedError

    def zero_divisor_test(self, a) -> bool:
        raise NotImplementedError

    # element-level API --------------------------------------------------------
    def __call__(self, value) -> "RingElement":
        return RingElement(self, self.coerce(value))

    @property
    def components(self) -> tuple["BaseRing", ...]:
        raise NotImplementedError

    @property
    def is_finite(self) -> bool:
        return all(c.is_finite for c in self.components)

    @property
    def order(self) -> int | None:
        if not self.is_finite:
            return None
        out = 1
        for c in self.components:
            out *= c.order
        return out

    def elements(self) -> Iterator["RingElement"]:
        for v in self.payloads():
            yield RingElement(self, v)

    def payloads(self) -> Iterator[Any]:
        raise NotImplementedError

    def _parse(self, text: str):
        from .parsing import parse_element

        return parse_element(text, self).value


class BaseRing(RingSpec):
    """``D/(m)``: a Euclidean domain or a quotient of one."""

    domain: EuclideanDomain

    @property
    def modulus(self):
        return self.domain.zero

    @property
    def is_domain(self) -> bool:
        return self.domain.is_zero(self.modulus)

    @property
    def is_euclidean(self) -> bool:
        return self.is_domain

    @property
    def components(self) -> tuple["BaseRing", ...]:
        return (self,)

    @property
    def zero(self):
        return self.domain.zero

    @property
    def one(self):
        return self.reduce(self.domain.one)

    def reduce(self, v):
        if self.is_domain:
            return v
        return self.domain.mod(v, self.modulus)

    def add(self, a, b):
        return self.reduce(self.domain.add(a, b))

    def sub(self, a, b):
        return self.reduce(self.domain.sub(a, b))

    def mul(self, a, b):
        return self.reduce(self.domain.mul(a, b))

    def neg(self, a):
        return self.reduce(self.domain.neg(a))

    def unit_test(self, a) -> bool:
        g = self.domain.gcd(a, self.modulus)
        return self.domain.is_unit(g)

    def zero_divisor_test(self, a) -> bool:
        if self.is_zero(a) or self.is_domain:
            return False
        return not self.unit_test(a)


def _poly_coerce(ring: "BaseRing", value):
    D = ring.domain
    if isinstance(value, RingElement):
        if value.ring != ring:
            raise RingMismatch(f"element of {value.ring} used in {ring}")
        return value.value
    if isinstance(value, bool):
        raise TypeError("bool is not a ring element")
    if isinstance(value, int):
        return ring.reduce(D.from_int(value))
    if isinstance(value, (tuple, list)):
        return ring.reduce(D.strip(value))
    if isinstance(value, str):
        return ring._parse(value)
    raise TypeError(f"cannot coerce {value!r} into {ring}")


@dataclass(frozen=True)
class Integers(BaseRing):
    @property
    def domain(self) -> EuclideanDomain:
        return INTEGERS

    def __str__(self) -> str:
        return "Z"

    def coerce(self, value):
        if isinstance(value, RingElement):
            if value.ring != self:
                raise RingMismatch(f"element of {value.ring} used in {self}")
            return value.value
        if isinstance(value, str):
            return self._parse(value)
        if isinstance(value, bool) or not isinstance(value, int):
            raise TypeError(f"cannot coerce {value!r} into Z")
        return value

    def format(self, a) -> str:
        return str(a)

    @property
    def is_finite(self) -> bool:
        return False

    def payloads(self):
        raise UnsupportedRing("Z is infinite")


@dataclass(frozen=True)
class IntegersModN(BaseRing):
    n: int

    @property
    def domain(self) -> EuclideanDomain:
        return INTEGERS

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 2:
            raise SemanticError(f"Z/n needs n >= 2, got {self.n!r}")

    def __str__(self) -> str:
        return f"Z/{self.n}"

    @property
    def modulus(self):
        return self.n

    def reduce(self, v):
        return v % self.n

    def coerce(self, value):
        if isinstance(value, RingElement):
            if value.ring != self:
                raise RingMismatch(f"element of {value.ring} used in {self}")
            return value.value
        if isinstance(value, str):
            return self._parse(value)
        if isinstance(value, bool) or not isinstance(value, int):
            raise TypeError(f"cannot coerce {value!r} into {self}")
        return value % self.n

    def format(self, a) -> str:
        return str(a)

    @property
    def is_finite(self) -> bool:
        return True

    @property
    def order(self) -> int:
        return self.n

    def payloads(self):
        return iter(range(self.n))


def _check_prime(p) -> None:
    if not isinstance(p, int) or isinstance(p, bool) or not is_probable_prime(p):
        raise SemanticError(f"GF(p) needs a prime p, got {p!r}")


@dataclass(frozen=True)
class PolyOverPrimeField(BaseRing):
    p: int

    def __post_init__(self):
        _check_prime(self.p)

    @property
    def domain(self) -> PolyDomain:
        return PolyDomain(self.p)

    def __str__(self) -> str:
        return f"GF({self.p})[x]"

    def coerce(self, value):
        return _poly_coerce(self, value)

    def format(self, a) -> str:
        return format_poly(a)

    @property
    def is_finite(self) -> bool:
        return False

    def payloads(self):
        raise UnsupportedRing(f"{self} is infinite")


@dataclass(frozen=True)
class PolyQuotient(BaseRing):
    p: int
    f: tuple[int, ...]

    def __post_init__(self):
        _check_prime(self.p)
        D = PolyDomain(self.p)
        f = D.strip(self.f)
        if D.degree(f) < 1:
            raise SemanticError("quotient modulus must be a non-constant polynomial")
        object.__setattr__(self, "f", D.canonical(f))

    @property
    def domain(self) -> PolyDomain:
        return PolyDomain(self.p)

    @property
    def modulus(self):
        return self.f

    def __str__(self) -> str:
        return f"GF({self.p})[x]/({format_poly(self.f)})"

    def coerce(self, value):
        return _poly_coerce(self, value)

    def format(self, a) -> str:
        return format_poly(a)

    @property
    def is_finite(self) -> bool:
        return True

    @property
    def order(self) -> int:
        return self.p ** (len(self.f) - 1)

    def payloads(self):
        D = self.domain
        for coeffs in itertools.product(range(self.p), repeat=len(self.f) - 1):
            yield D.strip(coeffs)


@dataclass(frozen=True)
class Product(RingSpec):
    left: BaseRing
    right: BaseRing
    is_product = True

    def __post_init__(self):
        for part in (self.left, self.right):
            if not isinstance(part, BaseRing):
                raise SemanticError("products are binary and nest to depth 1 only")

    def __str__(self) -> str:
        return f"{self.left} x {self.right}"

    @property
    def components(self) -> tuple[BaseRing, ...]:
        return (self.left, self.right)

    @property
    def zero(self):
        return (self.left.zero, self.right.zero)

    @property
    def one(self):
        return (self.left.one, self.right.one)

    def add(self, a, b):
        return (self.left.add(a[0], b[0]), self.right.add(a[1], b[1]))

    def sub(self, a, b):
        return (self.left.sub(a[0], b[0]), self.right.sub(a[1], b[1]))

    def mul(self, a, b):
        return (self.left.mul(a[0], b[0]), self.right.mul(a[1], b[1]))

    def neg(self, a):
        return (self.left.neg(a[0]), self.right.neg(a[1]))

    def coerce(self, value):
        if isinstance(value, RingElement):
            if value.ring != self:
                raise RingMismatch(f"element of {value.ring} used in {self}")
            return value.value
        if isinstance(value, str):
            return self._parse(value)
        if isinstance(value, int) and not isinstance(value, bool):
            return (self.left.coerce(value), self.right.coerce(value))
        if isinstance(value, (tuple, list)) and len(value) == 2:
            return (self.left.coerce(value[0]), self.right.coerce(value[1]))
        raise TypeError(f"cannot coerce {value!r} into {self}")

    def format(self, a) -> str:
        return f"({self.left.format(a[0])},{self.right.format(a[1])})"

    def unit_test(self, a) -> bool:
        return self.left.unit_test(a[0]) and self.right.unit_test(a[1])

    def zero_divisor_test(self, a) -> bool:
        if self.is_zero(a):
            return False
        return any(
            part.is_zero(x) or part.zero_divisor_test(x)
            for part, x in zip(self.components, a)
        )

    def payloads(self):
        return itertools.product(self.left.payloads(), self.right.payloads())

    def embed(self, index: int, value):
        """Payload of the product with ``value`` in one slot and zero in the other."""
        return (value, self.right.zero) if index == 0 else (self.left.zero, value)


@dataclass(frozen=True)
class RingElement:
    ring: RingSpec
    value: Any

    def _other(self, other) -> Any:
        if isinstance(other, RingElement):
            if other.ring != self.ring:
                raise RingMismatch(f"{self.ring} vs {other.ring}")
            return other.value
        return self.ring.coerce(other)

    def __add__(self, other):
        return RingElement(self.ring, self.ring.add(self.value, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return RingElement(self.ring, self.ring.sub(self.value, self._other(other)))

    def __rsub__(self, other):
        return RingElement(self.ring, self.ring.sub(self._other(other), self.value))

    def __mul__(self, other):
        return RingElement(self.ring, self.ring.mul(self.value, self._other(other)))

    __rmul__ = __mul__

    def __neg__(self):
        return RingElement(self.ring, self.ring.neg(self.value))

    def __pow__(self, e: int):
        out = self.ring.one
        for _ in range(e):
            out = self.ring.mul(out, self.value)
        return RingElement(self.ring, out)

    def is_zero(self) -> bool:
        return self.ring.is_zero(self.value)

    def __str__(self) -> str:
        return self.ring.format(self.value)


def arith(a: RingElement, b: RingElement, op: str) -> RingElement:
    """Binary ring arithmetic by name; ``neg`` ignores ``b``."""
    if a.ring != b.ring:
        raise RingMismatch(f"{a.ring} vs {b.ring}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "neg":
        return -a
    raise ValueError(f"unknown operation {op!r}")


def is_unit(a: RingElement) -> bool:
    return a.ring.unit_test(a.value)


def is_zero_divisor(a: RingElement) -> bool:
    return a.ring.zero_divisor_test(a.value)


@dataclass(frozen=True)
class Factorization:
    unit: RingElement
    factors: tuple[tuple[RingElement, int], ...]

    def expand(self) -> RingElement:
        out = self.unit
        for q, e in self.factors:
            out = out * q**e
        return out


def factor(a: RingElement, trial_bound: int | None = None) -> Factorization:
    ring = a.ring
    if not isinstance(ring, (Integers, PolyOverPrimeField)):
        raise UnsupportedRing(f"factorization is only available over Z and GF(p)[x], not {ring}")
    if a.is_zero():
        raise ZeroInput("cannot factor zero")
    D = ring.domain
    unit, facs = factor_element(D, a.value, trial_bound)
    primes = sorted(facs, key=D.sort_key)
    return Factorization(
        RingElement(ring, unit), tuple((RingElement(ring, q), facs[q]) for q in primes)
    )
