"""Arrow layers over Pi: allocation (``b1 >-> b2``) and hiding (``b1 ~> b2``).

An :class:`AllocTerm` is a Pi term ``b1 + h <-> b2`` whose ``h`` summand of
the input is hidden: only the ``inl`` inputs are ever observed, so the term
induces an injection ``|b1| -> |b2|``.  A :class:`HideTerm` wraps an
allocation term ``b1 >-> b2 * g`` and forgets the ``g`` factor of the
output, inducing an arbitrary total function.  Terms of both layers are
compared extensionally through these induced maps.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from .evaluate import evaluate, invert
from .models import FinFun, PartialInjection, Permutation, synth_iso
from .syntax import (
    ASSOCL_PLUS,
    ASSOCL_TIMES,
    ASSOCR_PLUS,
    ASSOCR_TIMES,
    DIST,
    DISTL,
    ID,
    ONE,
    SWAP_PLUS,
    SWAP_TIMES,
    UNITE_PLUS,
    UNITE_PLUS_R,
    UNITI_TIMES,
    UNITI_TIMES_R,
    ZERO,
    Comb,
    InL,
    Pair,
    PiTypeError,
    Prod,
    ProdC,
    Sum,
    SumC,
    ValueType,
    idx,
    nat_type,
    seq,
    size,
    value_of,
)
from .typecheck import Derivation, check


# -- allocation ----------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class AllocTerm:
    dom: ValueType
    hidden: ValueType
    cod: ValueType
    body: Comb
    # terms whose bodies occur inside this body, to skip re-typechecking them
    parts: tuple["AllocTerm", ...] = field(default=(), repr=False)

    def __post_init__(self) -> None:
        self.derivation
        self.injection()  # PartialInjection rejects non-injective tables

    @cached_property
    def derivation(self) -> Derivation:
        reuse = [p.derivation for p in self.parts]
        return check(self.body, Sum(self.dom, self.hidden), self.cod, reuse)

    def apply(self, v):
        return evaluate(self.body, InL(v))

    def injection(self) -> PartialInjection:
        """The induced injection ``[0, |dom|) -> [0, |cod|)``."""
        return self._injection

    @cached_property
    def _injection(self) -> PartialInjection:
        return PartialInjection(
            tuple(idx(self.apply(value_of(self.dom, k)), self.cod) for k in range(size(self.dom))),
            size(self.cod),
        )


def alloc_lift(body: Comb, dom: ValueType, hidden: ValueType, cod: ValueType) -> AllocTerm:
    return AllocTerm(dom, hidden, cod, body)


def alloc_arr(u: Comb, dom: ValueType, cod: ValueType) -> AllocTerm:
    """Embed ``u : dom <-> cod`` hiding only the empty type."""
    return AllocTerm(dom, ZERO, cod, seq(UNITE_PLUS_R, u))


def alloc_id(b: ValueType) -> AllocTerm:
    return alloc_arr(ID, b, b)


def alloc_seq(t: AllocTerm, s: AllocTerm) -> AllocTerm:
    """``t >>> s``; the hidden type is ``t.hidden + s.hidden``."""
    if t.cod != s.dom:
        raise PiTypeError(f"cannot compose {t.dom} >-> {t.cod} with {s.dom} >-> {s.cod}")
    body = seq(ASSOCL_PLUS, SumC(t.body, ID), s.body)
    return AllocTerm(t.dom, Sum(t.hidden, s.hidden), s.cod, body, (t, s))


def alloc_par(t: AllocTerm, s: AllocTerm) -> AllocTerm:
    """``t *** s : t.dom * s.dom >-> t.cod * s.cod``."""
    a, h1, c, h2 = t.dom, t.hidden, s.dom, s.hidden
    # (a + h1) * (c + h2) <-> a*c + (a*h2 + h1*(c + h2))
    spread = seq(DIST, SumC(DISTL, ID), ASSOCR_PLUS)
    hidden = Sum(Prod(a, h2), Prod(h1, Sum(c, h2)))
    body = seq(invert(spread), ProdC(t.body, s.body))
    return AllocTerm(Prod(a, c), hidden, Prod(t.cod, s.cod), body, (t, s))


def alloc(b: ValueType) -> AllocTerm:
    """``0 >-> b``: produce a value from the hidden heap."""
    return AllocTerm(ZERO, b, b, UNITE_PLUS)


def inl(b1: ValueType, b2: ValueType) -> AllocTerm:
    return AllocTerm(b1, b2, Sum(b1, b2), ID)


def inr(b1: ValueType, b2: ValueType) -> AllocTerm:
    return AllocTerm(b2, b1, Sum(b1, b2), SWAP_PLUS)


def clone(b: ValueType) -> AllocTerm:
    """``b >-> b * b`` sending ``v`` to ``(v, v)``, hiding ``N(n*n - n)``."""
    n = size(b)
    heap = nat_type(n * n - n)
    diagonal = [k * n + k for k in range(n)]
    rest = [j for j in range(n * n) if j not in set(diagonal)]
    p = Permutation(tuple(diagonal + rest))
    return AllocTerm(b, heap, Prod(b, b), synth_iso(p, Sum(b, heap), Prod(b, b)))


def alloc_equiv(t: AllocTerm, s: AllocTerm) -> bool:
    """Extensional equality: same endpoints and same induced injection."""
    return t.dom == s.dom and t.cod == s.cod and t.injection() == s.injection()


# -- hiding --------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class HideTerm:
    dom: ValueType
    cod: ValueType
    garbage: ValueType
    body: AllocTerm

    def __post_init__(self) -> None:
        if self.body.dom != self.dom or self.body.cod != Prod(self.cod, self.garbage):
            raise PiTypeError(
                f"hiding body must have type {self.dom} >-> {Prod(self.cod, self.garbage)}"
            )

    def apply(self, v):
        out = self.body.apply(v)
        assert isinstance(out, Pair)
        return out.first

    def function(self) -> FinFun:
        """The induced total function ``[0, |dom|) -> [0, |cod|)``."""
        return self._function

    @cached_property
    def _function(self) -> FinFun:
        return FinFun(
            tuple(idx(self.apply(value_of(self.dom, k)), self.cod) for k in range(size(self.dom))),
            size(self.cod),
        )


def hide_lift(body: AllocTerm, garbage: ValueType) -> HideTerm:
    if not isinstance(body.cod, Prod) or body.cod.right != garbage:
        raise PiTypeError(f"{body.cod} does not end in the garbage factor {garbage}")
    return HideTerm(body.dom, body.cod.left, garbage, body)


def hide_arr(t: AllocTerm) -> HideTerm:
    """Embed an allocation term, discarding only the unit type."""
    return HideTerm(t.dom, t.cod, ONE, alloc_seq(t, alloc_arr(UNITI_TIMES_R, t.cod, Prod(t.cod, ONE))))


def hide_id(b: ValueType) -> HideTerm:
    return hide_arr(alloc_id(b))


def hide_seq(t: HideTerm, s: HideTerm) -> HideTerm:
    """``t >>> s``; garbage becomes ``s.garbage * t.garbage``."""
    if t.cod != s.dom:
        raise PiTypeError(f"cannot compose {t.dom} ~> {t.cod} with {s.dom} ~> {s.cod}")
    keep = alloc_par(s.body, alloc_id(t.garbage))
    reassoc = alloc_arr(
        ASSOCR_TIMES,
        Prod(Prod(s.cod, s.garbage), t.garbage),
        Prod(s.cod, Prod(s.garbage, t.garbage)),
    )
    body = alloc_seq(alloc_seq(t.body, keep), reassoc)
    return HideTerm(t.dom, s.cod, Prod(s.garbage, t.garbage), body)


# (a*b)*(c*d) <-> (a*c)*(b*d)
MIDDLE_SWAP = seq(
    ASSOCR_TIMES,
    ProdC(ID, ASSOCL_TIMES),
    ProdC(ID, ProdC(SWAP_TIMES, ID)),
    ProdC(ID, ASSOCR_TIMES),
    ASSOCL_TIMES,
)


def hide_par(t: HideTerm, s: HideTerm) -> HideTerm:
    both = alloc_par(t.body, s.body)
    shuffle = alloc_arr(
        MIDDLE_SWAP,
        both.cod,
        Prod(Prod(t.cod, s.cod), Prod(t.garbage, s.garbage)),
    )
    return HideTerm(
        Prod(t.dom, s.dom),
        Prod(t.cod, s.cod),
        Prod(t.garbage, s.garbage),
        alloc_seq(both, shuffle),
    )


def discard(b: ValueType) -> HideTerm:
    """``b ~> 1``."""
    return HideTerm(b, ONE, b, alloc_arr(UNITI_TIMES, b, Prod(ONE, b)))


def fst(b1: ValueType, b2: ValueType) -> HideTerm:
    """``b1 * b2 ~> b1``, hiding the second component."""
    return HideTerm(Prod(b1, b2), b1, b2, alloc_id(Prod(b1, b2)))


def snd(b1: ValueType, b2: ValueType) -> HideTerm:
    return HideTerm(Prod(b1, b2), b2, b1, alloc_arr(SWAP_TIMES, Prod(b1, b2), Prod(b2, b1)))


def measure_term(b: ValueType) -> HideTerm:
    """``clone >>> fst : b ~> b``."""
    return hide_seq(hide_arr(clone(b)), fst(b, b))


def denote_hide(t: HideTerm) -> FinFun:
    return t.function()


def hide_equiv(t: HideTerm, s: HideTerm) -> bool:
    """Extensional equality: same endpoints and same induced function."""
    return t.dom == s.dom and t.cod == s.cod and t.function() == s.function()


# -- the fundamental theorem ---------------------------------------------------


@dataclass(frozen=True)
class Factorization:
    """``f = proj . bij . inj`` with ``inj : A -> A + H`` and ``proj : B * G -> B``.

    ``bij`` acts on indices: ``A + H`` is enumerated injected-part first and
    ``B * G`` pair-lexicographically, as for Pi types.
    """

    dom_size: int
    cod_size: int
    heap: int
    garbage: int
    bij: Permutation

    def __post_init__(self) -> None:
        if self.dom_size + self.heap != self.cod_size * self.garbage:
            raise ValueError("|A| + |H| must equal |B| * |G|")
        if len(self.bij) != self.dom_size + self.heap:
            raise ValueError("bijection has the wrong size")

    def recompose(self) -> FinFun:
        if self.garbage == 0:
            return FinFun((), self.cod_size)
        return FinFun(
            tuple(self.bij(a) // self.garbage for a in range(self.dom_size)),
            self.cod_size,
        )

    def as_hide_term(self) -> HideTerm:
        """Realize the factorization as a Pi term ``N(|A|) ~> N(|B|)``."""
        a, h = nat_type(self.dom_size), nat_type(self.heap)
        b, g = nat_type(self.cod_size), nat_type(self.garbage)
        body = synth_iso(self.bij, Sum(a, h), Prod(b, g))
        return hide_lift(AllocTerm(a, h, Prod(b, g), body), g)


def factorize(f: FinFun) -> Factorization:
    """Split ``f : A -> B`` as injection, bijection, projection with garbage ``G = A``.

    ``a`` goes to the pair ``(f(a), a)``; heap elements fill the remaining
    pairs in increasing order.
    """
    na, nb = f.dom_size, f.cod_size
    if na == 0:
        return Factorization(0, nb, 0, 0, Permutation(()))
    if nb == 0:
        raise ValueError("no function from a non-empty set into the empty set")
    targets = [f(a) * na + a for a in range(na)]
    used = set(targets)
    rest = [j for j in range(na * nb) if j not in used]
    return Factorization(na, nb, na * nb - na, na, Permutation(tuple(targets + rest)))
