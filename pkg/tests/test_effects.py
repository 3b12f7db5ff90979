import itertools

import numpy as np
import pytest
from hypothesis import given, settings

from revpi.effects import (
    Factorization,
    alloc,
    alloc_arr,
    alloc_equiv,
    alloc_id,
    alloc_par,
    alloc_seq,
    clone,
    denote_hide,
    discard,
    factorize,
    fst,
    hide_arr,
    hide_equiv,
    hide_id,
    hide_par,
    hide_seq,
    inl,
    inr,
    measure_term,
    snd,
)
from revpi.generators import random_alloc, random_comb, random_function, random_hide, random_type_of_size
from revpi.models import FinFun, PartialInjection, Permutation, denote
from revpi.syntax import CNOT, ONE, SWAP_PLUS, SWAP_TIMES, PiTypeError, Prod, ProdC, Seq, Sum, size
from strategies import seeds

BOOL = Sum(ONE, ONE)
TWO_BITS = Prod(BOOL, BOOL)


def test_clone_injection():
    assert clone(BOOL).injection() == PartialInjection((0, 3), 4)


def test_clone_on_bigger_types():
    b = Sum(ONE, BOOL)
    assert clone(b).injection().mapping == (0, 4, 8)


def test_arr_injection_is_the_permutation():
    assert alloc_arr(CNOT, TWO_BITS, TWO_BITS).injection().mapping == denote(CNOT, TWO_BITS, TWO_BITS).image


def test_alloc_from_empty():
    assert alloc(BOOL).injection() == PartialInjection((), 2)


def test_injections_into_sums():
    assert inl(BOOL, ONE).injection().mapping == (0, 1)
    assert inr(BOOL, ONE).injection().mapping == (2,)


def test_seq_composes_tables():
    t = alloc_seq(clone(BOOL), alloc_arr(SWAP_TIMES, TWO_BITS, TWO_BITS))
    table = clone(BOOL).injection()
    swap = PartialInjection(denote(SWAP_TIMES, TWO_BITS, TWO_BITS).image, 4)
    assert t.injection() == swap.compose(table)


def test_par_is_the_tensor_of_injections():
    t, s = clone(BOOL), inl(ONE, BOOL)
    assert alloc_par(t, s).injection() == t.injection().otimes(s.injection())


def test_alloc_rejects_mismatched_composition():
    with pytest.raises(PiTypeError):
        alloc_seq(alloc_id(BOOL), alloc_id(ONE))


def test_hide_examples():
    assert denote_hide(discard(BOOL)).table == (0, 0)
    assert denote_hide(fst(BOOL, BOOL)).table == (0, 0, 1, 1)
    assert denote_hide(snd(BOOL, BOOL)).table == (0, 1, 0, 1)
    assert denote_hide(hide_arr(alloc_arr(CNOT, TWO_BITS, TWO_BITS))).table == (0, 1, 3, 2)
    assert denote_hide(measure_term(Sum(ONE, BOOL))).table == (0, 1, 2)


def test_hide_par_and_seq_tables():
    t = hide_par(fst(BOOL, BOOL), discard(BOOL))
    assert t.function().table == tuple(a for a in (0, 0, 1, 1) for _ in range(2))
    u = hide_seq(fst(BOOL, BOOL), hide_arr(alloc_arr(SWAP_PLUS, BOOL, BOOL)))
    assert u.function().table == (1, 1, 0, 0)


# -- arrow laws -------------------------------------------------------------------


def _alloc_chain(rng, k):
    dom = random_type_of_size(rng, int(rng.integers(1, 3)), 2)
    out = []
    for _ in range(k):
        t = random_alloc(rng, dom, max_size=8)
        out.append(t)
        dom = t.cod
    return out


def _hide_chain(rng, k):
    dom = random_type_of_size(rng, int(rng.integers(1, 4)), 2)
    out = []
    for _ in range(k):
        t = random_hide(rng, dom, max_size=8)
        out.append(t)
        dom = t.cod
    return out


@given(seeds)
def test_alloc_arrow_laws(seed):
    rng = np.random.default_rng(seed)
    t, s, r = _alloc_chain(rng, 3)
    assert alloc_equiv(alloc_seq(alloc_id(t.dom), t), t)
    assert alloc_equiv(alloc_seq(t, alloc_id(t.cod)), t)
    assert alloc_equiv(alloc_seq(alloc_seq(t, s), r), alloc_seq(t, alloc_seq(s, r)))
    t2, s2 = _alloc_chain(rng, 2)
    assert alloc_equiv(
        alloc_par(alloc_seq(t, s), alloc_seq(t2, s2)),
        alloc_seq(alloc_par(t, t2), alloc_par(s, s2)),
    )


@given(seeds)
def test_arr_is_a_homomorphism(seed):
    rng = np.random.default_rng(seed)
    a = random_type_of_size(rng, int(rng.integers(1, 5)), 3)
    u, b = random_comb(rng, a, 5)
    v, c = random_comb(rng, b, 5)
    assert alloc_equiv(alloc_arr(Seq(u, v), a, c), alloc_seq(alloc_arr(u, a, b), alloc_arr(v, b, c)))
    dom2 = ONE if size(a) > 4 else BOOL
    w, d = random_comb(rng, dom2, 3)
    assert alloc_equiv(
        alloc_arr(ProdC(u, w), Prod(a, dom2), Prod(b, d)),
        alloc_par(alloc_arr(u, a, b), alloc_arr(w, dom2, d)),
    )


@settings(max_examples=30)
@given(seeds)
def test_hide_arrow_laws(seed):
    rng = np.random.default_rng(seed)
    t, s, r = _hide_chain(rng, 3)
    assert hide_equiv(hide_seq(hide_id(t.dom), t), t)
    assert hide_equiv(hide_seq(t, hide_id(t.cod)), t)
    assert hide_equiv(hide_seq(hide_seq(t, s), r), hide_seq(t, hide_seq(s, r)))
    t2, s2 = _hide_chain(rng, 2)
    lhs = hide_par(hide_seq(t, s), hide_seq(t2, s2))
    rhs = hide_seq(hide_par(t, t2), hide_par(s, s2))
    assert hide_equiv(lhs, rhs)
    a1, a2 = _alloc_chain(rng, 2)
    assert hide_equiv(hide_arr(alloc_seq(a1, a2)), hide_seq(hide_arr(a1), hide_arr(a2)))


@given(seeds)
def test_hide_semantics_compose(seed):
    rng = np.random.default_rng(seed)
    t, s = _hide_chain(rng, 2)
    assert hide_seq(t, s).function() == s.function().compose(t.function())


# -- factorization ----------------------------------------------------------------


def test_constant_function():
    fac = factorize(FinFun((0, 0), 1))
    assert (fac.heap, fac.garbage, fac.bij.image) == (0, 2, (0, 1))
    assert fac.recompose().table == (0, 0)


def test_identity_function():
    fac = factorize(FinFun((0, 1, 2), 3))
    assert fac.heap == 6
    assert fac.recompose().table == (0, 1, 2)


def test_all_functions_on_four_points():
    for table in itertools.product(range(4), repeat=4):
        f = FinFun(table, 4)
        assert factorize(f).recompose() == f


@given(seeds)
def test_factorization_as_pi_term(seed):
    f = random_function(np.random.default_rng(seed), max_size=5)
    assert factorize(f).as_hide_term().function() == f


def test_factorization_edge_cases():
    assert factorize(FinFun((), 3)).recompose() == FinFun((), 3)
    with pytest.raises(ValueError):
        Factorization(2, 1, 1, 2, Permutation((0, 1, 2)))
