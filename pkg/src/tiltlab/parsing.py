"""Text and JSON formats for rings, elements, matrices, modules and ideals.

Grammar::

    ring     := base | base " x " base
    base     := "Z" | "Z/" int | "GF(" int ")[x]" | "GF(" int ")[x]/(" poly ")"
    element  := int | poly | "(" element "," element ")"
    matrix   := row (";" row)*        row := element ("," element)*
    ideal    := "(" element ("," element)* ")"
    basis    := ideal ("," ideal)*
    tree     := "(" element ":" element ("," element)* ")" (";" ...)*

Matrices may also be given as JSON arrays of arrays of ints or strings.
Errors carry the 1-based line and column of the offending character.
"""

from __future__ import annotations

import json
from typing import Any

from .errors import ParseError, SemanticError, ShapeMismatch
from .fpmod import FpModule
from .ideals import Ideal, canonical_generator, canonicalize, ideals_equal
from .matrix import RingMatrix
from .rings import (
    BaseRing,
    Integers,
    IntegersModN,
    PolyOverPrimeField,
    PolyQuotient,
    Product,
    RingElement,
    RingSpec,
)


class _Cursor:
    def __init__(self, text: str, offset: int = 0, full: str | None = None):
        self.text = text
        self.pos = 0
        self.offset = offset
        self.full = text if full is None else full

    def error(self, message: str, pos: int | None = None) -> ParseError:
        p = self.pos if pos is None else pos
        return ParseError(message, self.full, self.offset + p)

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos] in " \t\r\n":
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def at_end(self) -> bool:
        return self.peek() == ""

    def accept(self, token: str) -> bool:
        self.skip_ws()
        if self.text.startswith(token, self.pos):
            self.pos += len(token)
            return True
        return False

    def expect(self, token: str) -> None:
        if not self.accept(token):
            found = self.text[self.pos] if self.pos < len(self.text) else "end of input"
            raise self.error(f"expected {token!r}, found {found!r}")

    def integer(self, signed: bool = False) -> int:
        self.skip_ws()
        start = self.pos
        if signed and self.pos < len(self.text) and self.text[self.pos] in "+-":
            self.pos += 1
        digits = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == digits:
            raise self.error("expected an integer", start)
        return int(self.text[start:self.pos])

    def finish(self) -> None:
        if not self.at_end():
            raise self.error(f"unexpected {self.text[self.pos]!r}")


# -- rings --------------------------------------------------------------------


def _base_ring(c: _Cursor) -> BaseRing:
    start = c.pos
    if c.accept("GF("):
        p_pos = c.pos
        p = c.integer()
        c.expect(")")
        c.expect("[x]")
        try:
            base = PolyOverPrimeField(p)
        except SemanticError as exc:
            raise SemanticError(f"{exc} (column {c.offset + p_pos + 1})") from None
        c.skip_ws()
        if c.text.startswith("/", c.pos):
            c.pos += 1
            c.expect("(")
            f = _poly(c, p)
            c.expect(")")
            if len(f) < 2:
                raise SemanticError("the modulus polynomial must have degree at least 1")
            return PolyQuotient(p, f)
        return base
    if c.accept("Z"):
        c.skip_ws()
        if c.text.startswith("/", c.pos):
            c.pos += 1
            return IntegersModN(c.integer())
        return Integers()
    raise c.error("expected a ring: Z, Z/n, GF(p)[x] or GF(p)[x]/(f)", start)


def parse_ring(text: str) -> RingSpec:
    c = _Cursor(text)
    left = _base_ring(c)
    c.skip_ws()
    if c.at_end():
        return left
    if not (c.peek() == "x" and c.pos > 0 and text[c.pos - 1] in " \t"):
        raise c.error(f"unexpected {c.peek()!r}")
    c.pos += 1
    right = _base_ring(c)
    if c.peek() == "x":
        raise SemanticError("products are limited to two factors")
    c.finish()
    return Product(left, right)


# -- elements -----------------------------------------------------------------


def _poly(c: _Cursor, p: int) -> tuple[int, ...]:
    """Polynomial literal such as ``x^2+2*x+1`` or ``-x+3``; coefficients mod p."""
    coeffs: dict[int, int] = {}
    sign = 1
    c.skip_ws()
    if c.accept("-"):
        sign = -1
    elif c.accept("+"):
        pass
    while True:
        c.skip_ws()
        coef = 1
        exp = 0
        has_coef = False
        if c.peek().isdigit():
            coef = c.integer()
            has_coef = True
            c.accept("*")
        if c.peek() == "x":
            c.pos += 1
            exp = 1
            if c.accept("^"):
                exp = c.integer()
        elif not has_coef:
            raise c.error("expected a polynomial term")
        coeffs[exp] = coeffs.get(exp, 0) + sign * coef
        if c.accept("+"):
            sign = 1
        elif c.accept("-"):
            sign = -1
        else:
            break
    top = max(coeffs) if coeffs else 0
    out = [0] * (top + 1)
    for e, v in coeffs.items():
        out[e] = v % p
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def _element_payload(c: _Cursor, ring: RingSpec) -> Any:
    if isinstance(ring, Product):
        c.expect("(")
        a = _element_payload(c, ring.left)
        c.expect(",")
        b = _element_payload(c, ring.right)
        c.expect(")")
        return (a, b)
    if isinstance(ring, (Integers, IntegersModN)):
        return ring.coerce(c.integer(signed=True))
    return ring.coerce(_poly(c, ring.p))


def parse_element(text: str, ring: RingSpec) -> RingElement:
    c = _Cursor(text)
    value = _element_payload(c, ring)
    c.finish()
    return RingElement(ring, value)


def _split_top(text: str, sep: str, offset: int) -> list[tuple[str, int]]:
    """Split at ``sep`` outside parentheses, keeping each piece's offset."""
    pieces = []
    depth = 0
    start = 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == sep and depth == 0:
            pieces.append((text[start:i], offset + start))
            start = i + 1
    pieces.append((text[start:], offset + start))
    return pieces


def _element_at(piece: str, offset: int, full: str, ring: RingSpec) -> Any:
    c = _Cursor(piece, offset, full)
    if c.at_end():
        raise c.error("empty entry")
    value = _element_payload(c, ring)
    c.finish()
    return value


def _coerce_json_entry(x, ring: RingSpec) -> Any:
    if isinstance(x, bool):
        raise SemanticError(f"{x!r} is not a ring element")
    if isinstance(x, int):
        return ring.coerce(x)
    if isinstance(x, str):
        return parse_element(x, ring).value
    if isinstance(x, list) and isinstance(ring, Product) and len(x) == 2:
        return (_coerce_json_entry(x[0], ring.left), _coerce_json_entry(x[1], ring.right))
    raise SemanticError(f"{x!r} is not a ring element literal")


# -- matrices -----------------------------------------------------------------


def _rows_to_matrix(ring: RingSpec, rows: list[list], cols: int | None = None) -> RingMatrix:
    widths = {len(r) for r in rows}
    if len(widths) > 1:
        raise ShapeMismatch(f"rows of different lengths {sorted(widths)}")
    return RingMatrix(ring, len(rows), cols if not rows else widths.pop(), tuple(map(tuple, rows)))


def parse_matrix(text: str, ring: RingSpec) -> RingMatrix:
    """``4,6;0,2`` or a JSON array of arrays."""
    stripped = text.strip()
    if stripped.startswith("["):
        try:
            data = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise ParseError(exc.msg, text, text.index("[") + exc.pos) from None
        return matrix_from_json(data, ring)
    if not stripped:
        return RingMatrix.zeros(ring, 0, 0)
    rows = []
    for row_text, row_off in _split_top(text, ";", 0):
        rows.append([_element_at(p, off, text, ring) for p, off in _split_top(row_text, ",", row_off)])
    return _rows_to_matrix(ring, rows)


def matrix_from_json(data, ring: RingSpec, nrows: int | None = None) -> RingMatrix:
    if not isinstance(data, list) or not all(isinstance(r, list) for r in data):
        raise SemanticError("a matrix must be an array of arrays")
    rows = [[_coerce_json_entry(x, ring) for x in r] for r in data]
    if nrows is not None and not rows:
        return RingMatrix.zeros(ring, nrows, 0)
    return _rows_to_matrix(ring, rows, 0)


def matrix_to_json(A: RingMatrix) -> list[list[str]]:
    if A.cols == 0:
        return []
    return A.to_lists()


# -- modules ------------------------------------------------------------------


def module_from_json(data: dict, ring: RingSpec | None = None) -> FpModule:
    """``{"ring": spec, "ngens": k, "relations": rows}``; one row per generator."""
    if not isinstance(data, dict):
        raise SemanticError("a module must be a JSON object")
    missing = [k for k in ("ring", "ngens", "relations") if k not in data]
    if missing:
        raise SemanticError(f"module is missing {', '.join(missing)}")
    declared = parse_ring(data["ring"])
    if ring is not None and declared != ring:
        raise SemanticError(f"module over {declared}, expected {ring}")
    k = data["ngens"]
    if isinstance(k, bool) or not isinstance(k, int) or k < 0:
        raise SemanticError("ngens must be a nonnegative integer")
    rel = matrix_from_json(data["relations"], declared, nrows=k)
    if rel.rows != k:
        raise ShapeMismatch(f"relations have {rel.rows} rows for {k} generators")
    return FpModule(declared, k, rel)


def module_to_json(M: FpModule) -> dict:
    return {"ring": str(M.ring), "ngens": M.ngens, "relations": matrix_to_json(M.relations)}


def parse_module(text: str, ring: RingSpec | None = None) -> FpModule:
    """A module from its JSON text, or from a relation matrix when ``ring`` is given."""
    stripped = text.strip()
    if stripped.startswith("{"):
        try:
            data = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise ParseError(exc.msg, text, text.index("{") + exc.pos) from None
        return module_from_json(data, ring)
    if ring is None:
        raise SemanticError("a bare relation matrix needs a ring")
    A = parse_matrix(text, ring)
    return FpModule(ring, A.rows, A)


# -- ideals -------------------------------------------------------------------


def _ideal_at(piece: str, offset: int, full: str, ring: RingSpec) -> Ideal:
    c = _Cursor(piece, offset, full)
    c.skip_ws()
    if not c.accept("("):
        raise c.error("expected '(' to open an ideal")
    body_start = c.pos
    depth = 1
    end = body_start
    while end < len(piece) and depth:
        depth += {"(": 1, ")": -1}.get(piece[end], 0)
        end += 1
    if depth:
        raise c.error("unbalanced parentheses", len(piece))
    body = piece[body_start:end - 1]
    c.pos = end
    c.finish()
    gens = [_element_at(p, off, full, ring) for p, off in _split_top(body, ",", offset + body_start)]
    return Ideal(ring, tuple(gens))


def parse_ideal(text: str, ring: RingSpec) -> Ideal:
    """``(4,6)``."""
    return _ideal_at(text, 0, text, ring)


def parse_basis(text: str, ring: RingSpec) -> list[Ideal]:
    """``(2),(3)``; an empty string is the empty basis."""
    if not text.strip():
        return []
    return [_ideal_at(p, off, text, ring) for p, off in _split_top(text, ",", 0)]


def parse_tree_ideals(text: str, ring: RingSpec) -> list[Ideal]:
    """``(2:4,6);(3:3)``: canonical generator, then the chosen generator list.

    The canonical part must generate the same ideal as the list; ``(2)``
    alone means the one-generator list ``{2}``.
    """
    out = []
    for piece, off in _split_top(text, ";", 0):
        c = _Cursor(piece, off, text)
        c.skip_ws()
        if not c.accept("("):
            raise c.error("expected '(' to open an ideal")
        inner = piece[c.pos:].rstrip()
        if not inner.endswith(")"):
            raise c.error("expected ')' to close the ideal", len(piece.rstrip()))
        inner = inner[:-1]
        inner_off = off + c.pos
        colon = _split_top(inner, ":", inner_off)
        if len(colon) > 2:
            raise ParseError("more than one ':' in an ideal", text, colon[2][1] - 1)
        gens_text, gens_off = colon[-1]
        gens = [_element_at(p, o, text, ring) for p, o in _split_top(gens_text, ",", gens_off)]
        I = Ideal(ring, tuple(gens))
        if len(colon) == 2:
            canon = Ideal(ring, (_element_at(colon[0][0], colon[0][1], text, ring),))
            if not ideals_equal(canon, I):
                raise SemanticError(
                    f"{ring.format(canon.generators[0])} does not generate the ideal of "
                    f"{I} (canonical generator {canonicalize(I)})"
                )
        out.append(I)
    return out


def ideal_to_json(I: Ideal) -> list[str]:
    return [I.ring.format(g) for g in I.generators]


def ideal_from_json(data, ring: RingSpec) -> Ideal:
    if not isinstance(data, list) or not data:
        raise SemanticError("an ideal must be a nonempty list of element literals")
    return Ideal(ring, tuple(_coerce_json_entry(x, ring) for x in data))


def format_canonical(I: Ideal) -> str:
    return "(" + I.ring.format(canonical_generator(I)) + ")"
