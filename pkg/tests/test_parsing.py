from __future__ import annotations

import json
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from generators import SMALL_FINITE_RINGS, Z, module
from tiltlab.errors import ParseError, SemanticError, ShapeMismatch
from tiltlab.ideals import Ideal
from tiltlab.parsing import (
    format_canonical,
    ideal_from_json,
    ideal_to_json,
    matrix_to_json,
    module_from_json,
    module_to_json,
    parse_basis,
    parse_element,
    parse_ideal,
    parse_matrix,
    parse_module,
    parse_ring,
    parse_tree_ideals,
)
from tiltlab.rings import IntegersModN, PolyOverPrimeField, PolyQuotient, Product


@pytest.mark.parametrize(
    "text, ring",
    [
        ("Z", Z),
        ("Z/12", IntegersModN(12)),
        ("GF(5)[x]", PolyOverPrimeField(5)),
        ("GF(2)[x]/(x^2)", PolyQuotient(2, (0, 0, 1))),
        ("GF(3)[x]/(x^2+1)", PolyQuotient(3, (1, 0, 1))),
        ("Z x Z/4", Product(Z, IntegersModN(4))),
        ("  Z/6 x GF(2)[x]  ", Product(IntegersModN(6), PolyOverPrimeField(2))),
    ],
)
def test_parse_ring(text, ring):
    assert parse_ring(text) == ring
    assert parse_ring(str(ring)) == ring


def test_ring_errors():
    with pytest.raises(SemanticError):
        parse_ring("GF(4)[x]")
    with pytest.raises(SemanticError):
        parse_ring("Z x Z x Z")
    with pytest.raises(ParseError) as exc:
        parse_ring("Z/")
    assert (exc.value.line, exc.value.column) == (1, 3)
    with pytest.raises(ParseError) as exc:
        parse_ring("Q")
    assert exc.value.column == 1


def test_elements():
    F5 = PolyOverPrimeField(5)
    assert parse_element("x^2+x+1", F5).value == (1, 1, 1)
    assert parse_element("3x^2 - x", F5).value == (0, 4, 3)
    assert parse_element("2*x", F5).value == (0, 2)
    assert parse_element("-7", IntegersModN(4)).value == 1
    P = Product(Z, IntegersModN(4))
    assert parse_element("(3,5)", P).value == (3, 1)
    with pytest.raises(ParseError):
        parse_element("3+", Z)


def test_matrices():
    A = parse_matrix("4,6;0,2", Z)
    assert A.data == ((4, 6), (0, 2))
    assert parse_matrix("[[4, 6], [0, 2]]", Z) == A
    assert parse_matrix('[["x", "1"]]', PolyOverPrimeField(2)).data == (((0, 1), (1,)),)
    with pytest.raises(ShapeMismatch):
        parse_matrix("1,2;3", Z)
    with pytest.raises(ParseError) as exc:
        parse_matrix("1,2;3,y", Z)
    assert exc.value.column == 7


def test_error_positions_on_later_lines():
    with pytest.raises(ParseError) as exc:
        parse_module('{"ring": "Z",\n "ngens": 1,\n "relations": [[2]] x}')
    assert exc.value.line == 3


def test_modules():
    M = parse_module('{"ring": "Z", "ngens": 2, "relations": [[2, 0], [0, 3]]}')
    assert M.ngens == 2 and M.relations.data == ((2, 0), (0, 3))
    assert parse_module("2,0;0,3", Z) == M
    free = module_from_json({"ring": "Z", "ngens": 3, "relations": []})
    assert free.relations.cols == 0 and free.ngens == 3
    with pytest.raises(SemanticError):
        module_from_json({"ring": "Z", "ngens": 1})
    with pytest.raises(SemanticError):
        module_from_json({"ring": "Z/4", "ngens": 1, "relations": [[2]]}, Z)
    with pytest.raises(ShapeMismatch):
        module_from_json({"ring": "Z", "ngens": 2, "relations": [[2]]})


def test_ideals():
    I = parse_ideal("(4,6)", Z)
    assert I == Ideal(Z, (4, 6))
    assert format_canonical(I) == "(2)"
    assert [str(J) for J in parse_basis("(2), (3,9)", Z)] == ["(2)", "(3,9)"]
    assert parse_basis("", Z) == []
    assert ideal_from_json(ideal_to_json(I), Z) == I
    P = Product(Z, IntegersModN(4))
    assert parse_ideal("((2,0),(0,1))", P).generators == ((2, 0), (0, 1))
    with pytest.raises(ParseError):
        parse_ideal("(4,6", Z)


def test_tree_ideals():
    ideals = parse_tree_ideals("(2:4,6);(3:3)", Z)
    assert [I.generators for I in ideals] == [(4, 6), (3,)]
    assert parse_tree_ideals("(2)", Z)[0].generators == (2,)
    with pytest.raises(SemanticError):
        parse_tree_ideals("(4:4,6)", Z)
    with pytest.raises(ParseError):
        parse_tree_ideals("(2:4,6", Z)


@given(st.integers(0, 10**6))
def test_module_json_round_trip(seed):
    rng = random.Random(seed)
    R = rng.choice(SMALL_FINITE_RINGS + (Z, PolyOverPrimeField(7), Product(Z, PolyOverPrimeField(3))))
    M = module(rng, R, max_gens=3, max_rels=3)
    text = json.dumps(module_to_json(M))
    assert parse_module(text) == M
    assert parse_matrix(json.dumps(matrix_to_json(M.relations)), R) == M.relations or M.relations.cols == 0
