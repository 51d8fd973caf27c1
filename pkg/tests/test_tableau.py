import json
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from relgt.corpus import TABLEAUX
from relgt.errors import MalformedInput, TopRowImmutable
from relgt.tableau import (
    Entry,
    Shift,
    Tableau,
    character_key,
    delta,
    integer_difference,
    parse_entry,
    vertex_index,
    vertices,
)


def test_vertex_order_top_row_first():
    assert vertices(3) == ((3, 1), (3, 2), (3, 3), (2, 1), (2, 2), (1, 1))
    assert vertex_index(3)[(2, 2)] == 4


def test_integer_difference_examples():
    assert integer_difference(parse_entry("pi+2"), parse_entry("pi")) == 2
    assert integer_difference(parse_entry("pi"), parse_entry("sqrt2")) is None
    assert integer_difference(parse_entry("3/2"), parse_entry("3/2")) == 0
    assert integer_difference(parse_entry("3/2"), parse_entry("1/3")) is None


@given(st.sampled_from(["", "pi", "x"]), st.fractions(max_denominator=3), st.integers(-5, 5))
def test_integer_difference_antisymmetric(sym, q, k):
    a, b = Entry(sym, q + k), Entry(sym, q)
    assert integer_difference(a, b) == k
    assert integer_difference(b, a) == -k


def test_parse_entry_forms():
    assert parse_entry({"sym": "pi", "q": "2/1"}) == Entry("pi", Fraction(2))
    assert parse_entry("pi-1") == Entry("pi", Fraction(-1))
    assert parse_entry(3) == Entry("", Fraction(3))
    with pytest.raises(MalformedInput):
        parse_entry({"q": "1/2", "extra": 1})
    with pytest.raises(MalformedInput):
        parse_entry(True)


def test_shift_identity_and_inverse():
    t = TABLEAUX["lattice_n4_seed"]
    assert t.shift(Shift.zero(4)) == t
    z = Shift.parse(4, "0,0,0,0|-1,-1,-1|1,-1|-1")
    assert t.shift(z).shift(-z) == t


def test_delta_on_bottom_entry():
    t2 = TABLEAUX["t2"]
    moved = t2.shift(delta(3, 1, 1, +1))
    assert moved[(1, 1)] == Entry("", Fraction(1))
    assert all(moved[v] == t2[v] for v in vertices(3) if v != (1, 1))


def test_delta_on_top_row_rejected():
    with pytest.raises(TopRowImmutable):
        delta(3, 3, 1)
    with pytest.raises(TopRowImmutable):
        Shift(2, [1, 0, 0])


@settings(max_examples=50)
@given(st.lists(st.integers(-3, 3), min_size=3, max_size=3), st.lists(st.integers(-3, 3), min_size=3, max_size=3))
def test_shift_is_a_free_action(a, b):
    t = TABLEAUX["t1"]
    za, zb = Shift(3, [0, 0, 0] + a), Shift(3, [0, 0, 0] + b)
    assert t.shift(za + zb) == t.shift(za).shift(zb)
    assert t.shift(za).difference(t) == za


def test_difference_across_classes_is_absent():
    assert TABLEAUX["t1"].difference(TABLEAUX["t2"]) is None


def test_character_key_row_permutation_invariant():
    a = Tableau.from_rows([[5, 4, 0], [3, 2], [2]])
    b = Tableau.from_rows([[5, 4, 0], [2, 3], [2]])
    assert character_key(a) == character_key(b)
    assert character_key(TABLEAUX["t1"]) != character_key(TABLEAUX["t2"])


def test_tableau_json_round_trip():
    for t in TABLEAUX.values():
        text = json.dumps(t.to_json())
        again = Tableau.from_json(json.loads(text))
        assert again == t
        assert json.dumps(again.to_json()) == text


def test_tableau_json_schema():
    data = TABLEAUX["lattice_n3_seed"].to_json()
    assert data["n"] == 3
    assert data["rows"][0][0] == {"sym": "pi", "q": "0/1"}
    assert data["rows"][2] == [{"q": "0/1"}]


def test_tableau_json_errors():
    with pytest.raises(MalformedInput):
        Tableau.from_json({"n": 3, "rows": [[1, 2, 3], [1]]})
    with pytest.raises(MalformedInput):
        Tableau.from_json({"n": 4, "rows": [[1, 2], [1]]})
