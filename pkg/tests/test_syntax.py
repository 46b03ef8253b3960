import json

import pytest
from hypothesis import given

from _strategies import contracts, types
from hosc.syntax import ParseError, from_json, parse_contract, parse_term, parse_type, print_term, to_json
from hosc.terms import (
    CONTRACT,
    TYPE,
    Base,
    BaseOrder,
    CIn,
    CRec,
    CVar,
    End,
    ExtSum,
    IntSum,
    TIn,
    TRec,
    TVar,
    Unit,
)


class TestParseType:
    def test_end(self):
        assert parse_type("end") == End()

    def test_self_input(self):
        assert parse_type("rec X.?X.X") == TRec("X", TIn(TVar("X"), TVar("X")))

    def test_duplicate_labels(self):
        with pytest.raises(ParseError, match="duplicate"):
            parse_type("&{l1:end, l1:end}")

    def test_unknown_base_type(self):
        with pytest.raises(ParseError, match="unknown base type"):
            parse_type("?float.end")

    def test_custom_base_order(self):
        base = BaseOrder.from_lines(["float"])
        assert parse_type("?float.end", base).msg == Base("float")

    def test_whitespace_is_insignificant(self):
        assert parse_type(" rec  X . ? X . X ") == parse_type("rec X.?X.X")

    def test_hyphenated_labels(self):
        t = parse_type("+{double-espresso:end}")
        assert t.labels == {"double-espresso"}

    def test_error_position(self):
        with pytest.raises(ParseError) as info:
            parse_type("?int.")
        assert info.value.pos == 5

    def test_lowercase_variable_is_not_a_type_variable(self):
        with pytest.raises(ParseError):
            parse_type("rec x.?x.x")


class TestParseContract:
    def test_unit(self):
        assert parse_contract("1") == Unit()

    def test_self_input(self):
        assert parse_contract("rec x.?(x).1") == CRec("x", CIn(CVar("x"), Unit()))

    def test_singleton_sum(self):
        assert parse_contract("(+)[!l:1]") == IntSum({"l": Unit()})

    def test_label_prefix_is_singleton_sum(self):
        assert parse_contract("!l.!l.1") == IntSum({"l": IntSum({"l": Unit()})})
        assert parse_contract("?l.1") == ExtSum({"l": Unit()})

    def test_base_prefix(self):
        assert parse_contract("?int.1") == CIn(Base("int"), Unit())

    def test_trailing_input(self):
        with pytest.raises(ParseError, match="trailing"):
            parse_contract("1 1")


class TestPrint:
    def test_end(self):
        assert print_term(End()) == "end"

    def test_self_input(self):
        assert print_term(CRec("x", CIn(CVar("x"), Unit()))) == "rec x.?(x).1"

    def test_sorted_labels(self):
        assert print_term(IntSum({"l2": Unit(), "l1": Unit()})) == "(+)[!l1:1, !l2:1]"

    def test_str_uses_printer(self):
        assert str(parse_type("!(rec X.!X.end).end")) == "!(rec X.!X.end).end"


@given(types())
def test_type_round_trip(t):
    assert parse_type(print_term(t)) == t


@given(contracts())
def test_contract_round_trip(c):
    assert parse_contract(print_term(c)) == c


@given(types())
def test_json_round_trip_types(t):
    doc = json.loads(json.dumps(to_json(t)))
    assert from_json(doc, TYPE) == t


@given(contracts())
def test_json_round_trip_contracts(c):
    assert from_json(json.dumps(to_json(c)), CONTRACT) == c


def test_json_shape():
    assert to_json(parse_type("?int.end")) == {"k": "in", "msg": {"k": "base", "name": "int"}, "cont": {"k": "end"}}


def test_json_malformed():
    with pytest.raises(ValueError):
        from_json({"k": "in"}, TYPE)
    with pytest.raises(ValueError):
        from_json({"k": "nope"}, TYPE)


def test_auto_language():
    assert parse_term("end").lang == TYPE
    assert parse_term("1").lang == CONTRACT
    with pytest.raises(ParseError):
        parse_term("?(")
