import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from revpi import laws
from revpi.evaluate import invert
from revpi.generators import random_comb, random_pinj
from revpi.models import (
    FinFun,
    PartialInjection,
    Permutation,
    adjacent_transposition,
    canonical_iso,
    denote,
    denote_by_eval,
    equiv,
    synth_iso,
    synth_nat,
    synth_perm,
    transpositions,
)
from revpi.syntax import (
    ASSOCR_PLUS,
    CNOT,
    ID,
    ONE,
    SWAP_PLUS,
    SWAP_TIMES,
    ZERO,
    Prod,
    Seq,
    Sum,
    UNITI_PLUS_R,
    nat_type,
    size,
)
from strategies import seeds, small_types, typed_combs

BOOL = Sum(ONE, ONE)
TWO_BITS = Prod(BOOL, BOOL)


def test_denote_examples():
    assert denote(ID, BOOL, BOOL) == Permutation.identity(2)
    three = Sum(Sum(ONE, ONE), ONE)
    assert denote(ASSOCR_PLUS, three, Sum(ONE, Sum(ONE, ONE))) == Permutation.identity(3)
    assert denote(SWAP_TIMES, TWO_BITS, TWO_BITS).image == (0, 2, 1, 3)
    assert denote(CNOT, TWO_BITS, TWO_BITS).image == (0, 1, 3, 2)


def test_equiv_examples():
    assert equiv(Seq(SWAP_PLUS, SWAP_PLUS), ID, BOOL, BOOL)
    assert not equiv(SWAP_PLUS, ID, BOOL, BOOL)


@given(typed_combs())
def test_compositional_denotation_matches_interpreter(t):
    c, dom, cod = t
    assert denote(c, dom, cod) == denote_by_eval(c, dom, cod)


@given(typed_combs(), seeds)
def test_functoriality_and_dagger(t, seed):
    c1, dom, mid = t
    c2, cod = random_comb(np.random.default_rng(seed), mid, 6)
    p1, p2 = denote(c1, dom, mid), denote(c2, mid, cod)
    assert denote(Seq(c1, c2), dom, cod) == p2.compose(p1)
    assert denote(invert(c1), mid, dom) == p1.inverse()
    assert equiv(Seq(c1, invert(c1)), ID, dom, dom)


def test_permutation_algebra_matches_matrices():
    rng = np.random.default_rng(3)
    for _ in range(50):
        n, m = rng.integers(1, 6, size=2)
        p, q = Permutation(rng.permutation(n)), Permutation(rng.permutation(n))
        r = Permutation(rng.permutation(m))
        assert np.array_equal(p.compose(q).matrix(), p.matrix() @ q.matrix())
        assert np.array_equal(p.inverse().matrix(), p.matrix().T)
        assert np.array_equal(p.otimes(r).matrix(), np.kron(p.matrix(), r.matrix()))
        direct = np.zeros((n + m, n + m), dtype=complex)
        direct[:n, :n], direct[n:, n:] = p.matrix(), r.matrix()
        assert np.array_equal(p.oplus(r).matrix(), direct)


def test_not_a_permutation():
    with pytest.raises(ValueError):
        Permutation((0, 0))


def test_canonical_iso():
    assert canonical_iso(ZERO) == ID
    assert canonical_iso(ONE) == UNITI_PLUS_R
    assert denote(canonical_iso(TWO_BITS), TWO_BITS, nat_type(4)) == Permutation.identity(4)


@given(small_types)
def test_canonical_iso_is_identity_on_indices(b):
    assert denote(canonical_iso(b), b, nat_type(size(b))) == Permutation.identity(size(b))


def test_adjacent_transposition():
    for n in range(2, 6):
        for i in range(n - 1):
            expected = list(range(n))
            expected[i], expected[i + 1] = i + 1, i
            assert denote(adjacent_transposition(i), nat_type(n), nat_type(n)).image == tuple(expected)


def test_transpositions_rebuild_permutation():
    for p in itertools.permutations(range(5)):
        acc = Permutation.identity(5)
        for i in transpositions(Permutation(p)):
            swap = list(range(5))
            swap[i], swap[i + 1] = i + 1, i
            acc = Permutation(tuple(swap)).compose(acc)
        assert acc.image == p


def test_synth_small_cases():
    assert equiv(synth_perm(Permutation.identity(2), BOOL), ID, BOOL, BOOL)
    assert equiv(synth_perm(Permutation((1, 0)), BOOL), SWAP_PLUS, BOOL, BOOL)


def test_synth_all_of_s4_on_two_bits():
    for p in itertools.permutations(range(4)):
        assert denote(synth_perm(Permutation(p), TWO_BITS), TWO_BITS, TWO_BITS).image == p


def test_synth_nat_and_iso():
    p = Permutation((2, 0, 1))
    assert denote(synth_nat(p), nat_type(3), nat_type(3)) == p
    dom, cod = Sum(ONE, BOOL), Prod(Sum(ONE, Sum(ONE, ONE)), ONE)
    assert denote(synth_iso(p, dom, cod), dom, cod) == p
    with pytest.raises(ValueError):
        synth_perm(p, BOOL)


# -- coherence --------------------------------------------------------------------

small = small_types.filter(lambda b: size(b) <= 3)


def _holds(law):
    return denote(law.lhs, law.dom, law.cod) == denote(law.rhs, law.dom, law.cod)


@given(small, small, small, small)
def test_pentagons(a, b, c, d):
    assert _holds(laws.pentagon_plus(a, b, c, d))
    assert _holds(laws.pentagon_times(a, b, c, d))


@given(small, small, small)
def test_hexagons(a, b, c):
    assert _holds(laws.hexagon_plus(a, b, c))
    assert _holds(laws.hexagon_plus_inverse(a, b, c))
    assert _holds(laws.hexagon_times(a, b, c))
    assert _holds(laws.hexagon_times_inverse(a, b, c))


@given(small, small, small, seeds)
def test_naturality(a, b, c, seed):
    rng = np.random.default_rng(seed)
    f, a2 = random_comb(rng, a, 4)
    g, b2 = random_comb(rng, b, 4)
    h, c2 = random_comb(rng, c, 4)
    assert _holds(laws.swap_times_natural(f, a, a2, g, b, b2))
    assert _holds(laws.swap_plus_natural(f, a, a2, g, b, b2))
    assert _holds(laws.dist_natural(f, a, a2, g, b, b2, h, c, c2))


# -- partial injections and functions ---------------------------------------------


@given(seeds)
def test_pinj_dagger_laws(seed):
    f = random_pinj(np.random.default_rng(seed))
    assert f.compose(f.dagger()).compose(f) == f
    assert f.dagger().dagger() == f


def test_dagger_is_not_an_inverse():
    f = PartialInjection.empty(2, 2)
    assert f.dagger().compose(f) != PartialInjection.identity(2)


@given(st.integers(0, 2**32 - 1))
def test_pinj_structure_matches_brute_force(seed):
    rng = np.random.default_rng(seed)
    f, g = random_pinj(rng, max_size=4), random_pinj(rng, max_size=4)
    h = random_pinj(rng, dom_size=f.cod_size, max_size=4)
    # brute force through sets of pairs
    rel = lambda p: {(i, j) for i, j in enumerate(p.mapping) if j is not None}
    composed = {(i, k) for i, j in rel(f) for j2, k in rel(h) if j == j2}
    assert rel(h.compose(f)) == composed
    assert rel(f.dagger()) == {(j, i) for i, j in rel(f)}
    assert rel(f.oplus(g)) == rel(f) | {(i + f.dom_size, j + f.cod_size) for i, j in rel(g)}
    assert rel(f.otimes(g)) == {
        (i * g.dom_size + k, j * g.cod_size + l) for i, j in rel(f) for k, l in rel(g)
    }


def test_permutations_embed_as_total_injections():
    p = Permutation((2, 0, 1))
    f = PartialInjection.from_permutation(p)
    assert f.dagger() == PartialInjection.from_permutation(p.inverse())


def test_finfun():
    f = FinFun.from_pairs([(0, 1), (1, 1), (2, 0)], 3, 2)
    g = FinFun((1, 0), 2)
    assert g.compose(f).table == (0, 0, 1)
    with pytest.raises(ValueError):
        FinFun.from_pairs([(0, 0)], 2, 1)
    with pytest.raises(ValueError):
        FinFun((3,), 2)
