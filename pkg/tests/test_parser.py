import pytest
from hypothesis import given

from revpi.parser import (
    PiSyntaxError,
    parse,
    parse_comb_type,
    parse_type,
    parse_value,
    print_comb,
    print_type,
    print_value,
)
from revpi.syntax import (
    CNOT,
    ID,
    ONE,
    SWAP_PLUS,
    SWAP_TIMES,
    UNIT,
    Ascribe,
    InL,
    InR,
    Inv,
    Pair,
    Prim,
    Prod,
    ProdC,
    Seq,
    Sum,
    SumC,
)
from strategies import any_combs, brute_values, ground_types


def test_sequence():
    assert parse("swap+ ; swap+") == Seq(SWAP_PLUS, SWAP_PLUS)


def test_ascription():
    t = Sum(ONE, Prod(ONE, ONE))
    assert parse("(id + swapx) : 1 + (1*1) <-> 1 + (1*1)") == Ascribe(SumC(ID, SWAP_TIMES), t, t)


@pytest.mark.parametrize("text", ["swap+ ;", "", "id +", "(id", "id : 1 <->", "foo", "id id"])
def test_malformed_input(text):
    with pytest.raises(PiSyntaxError):
        parse(text)


def test_error_position():
    with pytest.raises(PiSyntaxError) as err:
        parse("id ;\n  swap+ ; ?")
    assert (err.value.line, err.value.column) == (2, 11)


def test_precedence_and_associativity():
    assert parse("id ; id + swap+ * id") == Seq(ID, SumC(ID, ProdC(SWAP_PLUS, ID)))
    assert parse("id ; id ; id") == Seq(Seq(ID, ID), ID)
    assert parse("inv swap+ + id") == SumC(Inv(SWAP_PLUS), ID)
    assert parse("inv (id ; id)") == Inv(Seq(ID, ID))


def test_comments_and_prefix_names():
    assert parse("-- a comment\nunite+l ; uniti+l -- trailing\n") == Seq(Prim("unite+l"), Prim("uniti+l"))
    assert parse("assocrx;assoclx") == Seq(Prim("assocrx"), Prim("assoclx"))
    assert parse("H ; S ; T") == Seq(Seq(Prim("H"), Prim("S")), Prim("T"))


def test_cnot_prints_and_parses():
    text = print_comb(CNOT)
    assert text == "dist ; id + id * swap+ ; factor"
    assert parse(text) == CNOT


def test_types_and_values():
    assert parse_type("1 + 1 * 0") == Sum(ONE, Prod(ONE, parse_type("0")))
    assert parse_comb_type("1+1 <-> 1+1") == (Sum(ONE, ONE), Sum(ONE, ONE))
    assert parse_value("(inr (), inl ())") == Pair(InR(UNIT), InL(UNIT))
    assert parse_value("inl inr ()") == InL(InR(UNIT))


@given(any_combs)
def test_print_parse_round_trip(c):
    assert parse(print_comb(c)) == c


@given(ground_types)
def test_type_round_trip(b):
    assert parse_type(print_type(b)) == b


@given(ground_types.filter(lambda b: len(brute_values(b)) > 0))
def test_value_round_trip(b):
    for v in brute_values(b):
        assert parse_value(print_value(v)) == v
