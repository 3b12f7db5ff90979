import pytest
from hypothesis import given

from revpi.parser import parse
from revpi.syntax import (
    CNOT,
    DIST,
    ID,
    ONE,
    SWAP_PLUS,
    UNITE_PLUS,
    UNITE_TIMES,
    ZERO,
    Ascribe,
    Inv,
    Prim,
    Prod,
    Seq,
    Sum,
    TVar,
)
from revpi.typecheck import (
    AmbiguousTypeError,
    CombType,
    OccursCheckError,
    UnificationError,
    Unifier,
    check,
    check_ascribed,
    infer,
    type_of,
)
from strategies import typed_combs

BOOL = Sum(ONE, ONE)


def test_unite_schema():
    assert infer(UNITE_PLUS) == CombType(Sum(ZERO, TVar(0)), TVar(0))


def test_seq_of_swaps():
    assert infer(Seq(SWAP_PLUS, SWAP_PLUS)) == CombType(Sum(TVar(0), TVar(1)), Sum(TVar(0), TVar(1)))


def test_dist_then_unite_fails():
    with pytest.raises(UnificationError):
        infer(Seq(DIST, UNITE_TIMES))


def test_occurs_check():
    u = Unifier()
    a = u.fresh()
    with pytest.raises(OccursCheckError):
        u.unify(a, Sum(a, ONE))


def test_check_examples():
    check(SWAP_PLUS, Sum(Sum(ONE, ZERO), Prod(ONE, ONE)), Sum(Prod(ONE, ONE), Sum(ONE, ZERO)))
    check(Inv(DIST), Sum(Prod(ONE, ONE), Prod(ONE, ONE)), Prod(BOOL, ONE))
    with pytest.raises(UnificationError):
        check(ID, BOOL, Prod(ONE, ONE))


def test_ambiguous_middle_type():
    c = Seq(Prim("factorzr"), Prim("absorbl"))
    assert infer(c) == CombType(ZERO, ZERO)
    with pytest.raises(AmbiguousTypeError):
        check(c, ZERO, ZERO)
    # an ascription on the middle resolves it
    fixed = Seq(Ascribe(Prim("factorzr"), ZERO, Prod(ONE, ZERO)), Prim("absorbl"))
    check(fixed, ZERO, ZERO)


def test_derivation_records_every_node():
    d = check(CNOT, Prod(BOOL, BOOL), Prod(BOOL, BOOL))
    mid = d.children[0].cod
    assert mid == Sum(Prod(ONE, BOOL), Prod(ONE, BOOL))


def test_quantum_primitives_are_monomorphic():
    assert infer(Prim("H")) == CombType(BOOL, BOOL)
    with pytest.raises(UnificationError):
        check(Prim("T"), Sum(ONE, Sum(ONE, ONE)), Sum(ONE, Sum(ONE, ONE)))


def test_check_ascribed_and_type_of():
    c = parse("swap+ : 1 + 0 <-> 0 + 1")
    assert check_ascribed(c).cod == Sum(ZERO, ONE)
    assert type_of(parse("H ; H")) == CombType(BOOL, BOOL)
    with pytest.raises(AmbiguousTypeError):
        check_ascribed(SWAP_PLUS)
    with pytest.raises(AmbiguousTypeError):
        type_of(SWAP_PLUS)


@given(typed_combs())
def test_generated_terms_check_and_infer_generalizes(t):
    c, dom, cod = t
    d = check(c, dom, cod)
    assert (d.dom, d.cod) == (dom, cod)
    # the principal type unifies with the ground instance
    principal = infer(c)
    u = Unifier()
    u.unify(principal.dom, dom)
    u.unify(principal.cod, cod)
