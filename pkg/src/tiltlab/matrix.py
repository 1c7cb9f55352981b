"""Dense immutable matrices over a RingSpec, stored as payload rows."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Iterable, Sequence

from .errors import RingMismatch, ShapeMismatch
from .rings import Product, RingElement, RingSpec


@dataclass(frozen=True)
class RingMatrix:
    ring: RingSpec
    rows: int
    cols: int
    data: tuple[tuple[Any, ...], ...]

    def __post_init__(self):
        if len(self.data) != self.rows or any(len(r) != self.cols for r in self.data):
            raise ShapeMismatch(f"data does not match shape {self.rows}x{self.cols}")

    # constructors -------------------------------------------------------------
    @classmethod
    def from_rows(cls, ring: RingSpec, rows: Sequence[Sequence], cols: int | None = None):
        data = tuple(tuple(ring.coerce(x) for x in row) for row in rows)
        if cols is None:
            cols = len(data[0]) if data else 0
        return cls(ring, len(data), cols, data)

    @classmethod
    def from_columns(cls, ring: RingSpec, columns: Sequence[Sequence], rows: int):
        cols = [tuple(ring.coerce(x) for x in c) for c in columns]
        if any(len(c) != rows for c in cols):
            raise ShapeMismatch("column length differs from row count")
        data = tuple(tuple(c[i] for c in cols) for i in range(rows))
        return cls(ring, rows, len(cols), data)

    @classmethod
    def zeros(cls, ring: RingSpec, rows: int, cols: int):
        z = ring.zero
        return cls(ring, rows, cols, tuple((z,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, ring: RingSpec, n: int):
        z, o = ring.zero, ring.one
        return cls(ring, n, n, tuple(tuple(o if i == j else z for j in range(n)) for i in range(n)))

    @classmethod
    def diagonal(cls, ring: RingSpec, rows: int, cols: int, diag: Sequence):
        z = ring.zero
        data = [[z] * cols for _ in range(rows)]
        for i, d in enumerate(diag):
            data[i][i] = ring.coerce(d)
        return cls(ring, rows, cols, tuple(map(tuple, data)))

    # access -------------------------------------------------------------------
    def entry(self, i: int, j: int) -> RingElement:
        return RingElement(self.ring, self.data[i][j])

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self.data)

    def columns(self) -> list[tuple]:
        return [self.column(j) for j in range(self.cols)]

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def is_zero(self) -> bool:
        z = self.ring.zero
        return all(x == z for r in self.data for x in r)

    def to_lists(self) -> list[list[str]]:
        return [[self.ring.format(x) for x in r] for r in self.data]

    def __str__(self) -> str:
        return ";".join(",".join(r) for r in self.to_lists())

    # algebra ------------------------------------------------------------------
    def _check(self, other: "RingMatrix") -> None:
        if other.ring != self.ring:
            raise RingMismatch(f"{self.ring} vs {other.ring}")

    def __matmul__(self, other: "RingMatrix") -> "RingMatrix":
        self._check(other)
        if self.cols != other.rows:
            raise ShapeMismatch(f"cannot multiply {self.shape} by {other.shape}")
        R = self.ring
        out = []
        ocols = other.columns()
        for row in self.data:
            line = []
            for col in ocols:
                acc = R.zero
                for a, b in zip(row, col):
                    acc = R.add(acc, R.mul(a, b))
                line.append(acc)
            out.append(tuple(line))
        return RingMatrix(R, self.rows, other.cols, tuple(out))

    def __add__(self, other: "RingMatrix") -> "RingMatrix":
        self._check(other)
        if self.shape != other.shape:
            raise ShapeMismatch("shape mismatch in addition")
        R = self.ring
        data = tuple(tuple(R.add(a, b) for a, b in zip(r, s)) for r, s in zip(self.data, other.data))
        return RingMatrix(R, self.rows, self.cols, data)

    def apply(self, vector: Sequence) -> tuple:
        """Matrix times a column vector of payloads."""
        if len(vector) != self.cols:
            raise ShapeMismatch("vector length differs from column count")
        R = self.ring
        out = []
        for row in self.data:
            acc = R.zero
            for a, b in zip(row, vector):
                acc = R.add(acc, R.mul(a, b))
            out.append(acc)
        return tuple(out)

    def scale(self, c) -> "RingMatrix":
        R = self.ring
        return RingMatrix(R, self.rows, self.cols, tuple(tuple(R.mul(c, x) for x in r) for r in self.data))

    @property
    def T(self) -> "RingMatrix":
        return RingMatrix(self.ring, self.cols, self.rows, tuple(zip(*self.data)) if self.rows else tuple(() for _ in range(self.cols)))

    def hstack(self, *others: "RingMatrix") -> "RingMatrix":
        data = [list(r) for r in self.data]
        cols = self.cols
        for o in others:
            self._check(o)
            if o.rows != self.rows:
                raise ShapeMismatch("row counts differ in hstack")
            for line, r in zip(data, o.data):
                line.extend(r)
            cols += o.cols
        return RingMatrix(self.ring, self.rows, cols, tuple(map(tuple, data)))

    def vstack(self, *others: "RingMatrix") -> "RingMatrix":
        data = list(self.data)
        for o in others:
            self._check(o)
            if o.cols != self.cols:
                raise ShapeMismatch("column counts differ in vstack")
            data.extend(o.data)
        return RingMatrix(self.ring, len(data), self.cols, tuple(data))

    def block_diag(self, other: "RingMatrix") -> "RingMatrix":
        self._check(other)
        z = self.ring.zero
        top = [r + (z,) * other.cols for r in self.data]
        bottom = [(z,) * self.cols + r for r in other.data]
        return RingMatrix(self.ring, self.rows + other.rows, self.cols + other.cols, tuple(top + bottom))

    def kron(self, other: "RingMatrix") -> "RingMatrix":
        self._check(other)
        R = self.ring
        data = []
        for a_row in self.data:
            for b_row in other.data:
                data.append(tuple(R.mul(a, b) for a in a_row for b in b_row))
        return RingMatrix(R, self.rows * other.rows, self.cols * other.cols, tuple(data))

    def select_rows(self, idx: Iterable[int]) -> "RingMatrix":
        data = tuple(self.data[i] for i in idx)
        return RingMatrix(self.ring, len(data), self.cols, data)

    def select_columns(self, idx: Iterable[int]) -> "RingMatrix":
        idx = list(idx)
        data = tuple(tuple(r[j] for j in idx) for r in self.data)
        return RingMatrix(self.ring, self.rows, len(idx), data)

    # product rings ------------------------------------------------------------
    def project(self, index: int) -> "RingMatrix":
        """Component ``index`` of a matrix over a product ring."""
        R = self.ring
        if not isinstance(R, Product):
            raise TypeError("project() needs a product ring")
        part = R.components[index]
        return RingMatrix(part, self.rows, self.cols, tuple(tuple(x[index] for x in r) for r in self.data))

    @staticmethod
    def pair(ring: Product, left: "RingMatrix", right: "RingMatrix") -> "RingMatrix":
        """Inverse of ``project``: combine same-shape component matrices."""
        if left.shape != right.shape:
            raise ShapeMismatch("component shapes differ")
        data = tuple(tuple(zip(a, b)) for a, b in zip(left.data, right.data))
        return RingMatrix(ring, left.rows, left.cols, data)
