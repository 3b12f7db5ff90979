"""Finite semantic models: permutations (FinBij), partial injections (PInj)
and total functions (finite Set).

A ground Pi term denotes a permutation of the canonical enumeration of its
domain.  Because this denotation is complete, two terms are equivalent
exactly when their permutations coincide, and every permutation is the
denotation of some term (:func:`synth_perm`).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .evaluate import evaluate, invert
from .syntax import (
    ABSORBL,
    ASSOCL_PLUS,
    ASSOCR_PLUS,
    DIST,
    ID,
    SWAP_PLUS,
    SWAP_TIMES,
    UNITE_PLUS,
    UNITE_TIMES,
    UNITI_PLUS_R,
    Ascribe,
    Comb,
    Inv,
    One,
    PiTypeError,
    Prim,
    Prod,
    ProdC,
    Seq,
    Sum,
    SumC,
    ValueType,
    Zero,
    idx,
    seq,
    size,
    value_of,
)
from .typecheck import Derivation, check


# -- permutations ------------------------------------------------------------


@dataclass(frozen=True)
class Permutation:
    """``image[k]`` is where index ``k`` is sent."""

    image: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "image", tuple(int(k) for k in self.image))
        if sorted(self.image) != list(range(len(self.image))):
            raise ValueError(f"not a permutation: {list(self.image)}")

    def __len__(self) -> int:
        return len(self.image)

    def __call__(self, k: int) -> int:
        return self.image[k]

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(n)))

    def compose(self, other: "Permutation") -> "Permutation":
        """``self`` after ``other``."""
        if len(self) != len(other):
            raise ValueError("size mismatch")
        return Permutation(tuple(self.image[k] for k in other.image))

    def inverse(self) -> "Permutation":
        inv = [0] * len(self)
        for k, j in enumerate(self.image):
            inv[j] = k
        return Permutation(tuple(inv))

    def oplus(self, other: "Permutation") -> "Permutation":
        n = len(self)
        return Permutation(self.image + tuple(n + j for j in other.image))

    def otimes(self, other: "Permutation") -> "Permutation":
        m = len(other)
        return Permutation(
            tuple(self.image[i] * m + other.image[j] for i in range(len(self)) for j in range(m))
        )

    def matrix(self) -> np.ndarray:
        """0/1 matrix ``M`` with ``M @ e_k = e_image[k]``."""
        n = len(self)
        m = np.zeros((n, n), dtype=complex)
        m[list(self.image), list(range(n))] = 1
        return m


def _prim_perm(name: str, dom: ValueType) -> Permutation:
    n = size(dom)
    if name == "swap+":
        n1, n2 = size(dom.left), size(dom.right)
        return Permutation(tuple(n2 + k if k < n1 else k - n1 for k in range(n)))
    if name == "swapx":
        n1, n2 = size(dom.left), size(dom.right)
        return Permutation(tuple((k % n2) * n1 + k // n2 for k in range(n)))
    if name[0].isupper():
        raise PiTypeError(f"{name} has no permutation semantics")
    # every other primitive is index-preserving under the left-biased enumeration
    return Permutation.identity(n)


def denote_derivation(d: Derivation) -> Permutation:
    c = d.comb
    if isinstance(c, Prim):
        return _prim_perm(c.name, d.dom)
    if isinstance(c, Seq):
        first, second = d.children
        return denote_derivation(second).compose(denote_derivation(first))
    if isinstance(c, SumC):
        return denote_derivation(d.children[0]).oplus(denote_derivation(d.children[1]))
    if isinstance(c, ProdC):
        return denote_derivation(d.children[0]).otimes(denote_derivation(d.children[1]))
    if isinstance(c, Inv):
        return denote_derivation(d.children[0]).inverse()
    if isinstance(c, Ascribe):
        return denote_derivation(d.children[0])
    raise TypeError(f"not a combinator: {c!r}")


def denote(c: Comb, dom: ValueType, cod: ValueType) -> Permutation:
    """Permutation denoted by ``c : dom <-> cod``, computed compositionally."""
    return denote_derivation(check(c, dom, cod))


def denote_by_eval(c: Comb, dom: ValueType, cod: ValueType) -> Permutation:
    """Same permutation, tabulated by running the interpreter on every value."""
    check(c, dom, cod)
    return Permutation(
        tuple(idx(evaluate(c, value_of(dom, k)), cod) for k in range(size(dom)))
    )


def equiv(c1: Comb, c2: Comb, dom: ValueType, cod: ValueType) -> bool:
    """Decide whether two terms of type ``dom <-> cod`` are equal programs."""
    return denote(c1, dom, cod) == denote(c2, dom, cod)


# -- canonical forms and synthesis -------------------------------------------


def _append(n: int) -> Comb:
    # N(n) + M <-> N(n + |M|)
    if n == 0:
        return UNITE_PLUS
    return Seq(ASSOCR_PLUS, SumC(ID, _append(n - 1)))


def _multiply(n: int, m: int) -> Comb:
    # N(n) * N(m) <-> N(n * m)
    if n == 0:
        return Seq(SWAP_TIMES, ABSORBL)
    return seq(DIST, SumC(UNITE_TIMES, _multiply(n - 1, m)), _append(m))


def canonical_iso(b: ValueType) -> Comb:
    """A term ``b <-> N(size(b))`` whose denotation is the identity."""
    if isinstance(b, Zero):
        return ID
    if isinstance(b, One):
        return UNITI_PLUS_R
    if isinstance(b, Sum):
        return Seq(SumC(canonical_iso(b.left), canonical_iso(b.right)), _append(size(b.left)))
    if isinstance(b, Prod):
        return Seq(
            ProdC(canonical_iso(b.left), canonical_iso(b.right)),
            _multiply(size(b.left), size(b.right)),
        )
    raise PiTypeError(f"canonical_iso needs a ground type, got {b}")


def adjacent_transposition(i: int) -> Comb:
    """Swap summands ``i`` and ``i+1`` of ``N(n)`` (for any ``n >= i + 2``)."""
    c = seq(ASSOCL_PLUS, SumC(SWAP_PLUS, ID), ASSOCR_PLUS)
    for _ in range(i):
        c = SumC(ID, c)
    return c


def transpositions(p: Permutation) -> list[int]:
    """Bubble-sort ``p``; applying the returned adjacent swaps in order yields ``p``."""
    a = list(p.image)
    swaps = []
    for end in range(len(a) - 1, 0, -1):
        for i in range(end):
            if a[i] > a[i + 1]:
                a[i], a[i + 1] = a[i + 1], a[i]
                swaps.append(i)
    return swaps


def synth_nat(p: Permutation) -> Comb:
    """A term at ``N(len(p)) <-> N(len(p))`` denoting ``p``."""
    swaps = transpositions(p)
    if not swaps:
        return ID
    return seq(*(adjacent_transposition(i) for i in swaps))


def synth_perm(p: Permutation, b: ValueType) -> Comb:
    """A term ``b <-> b`` denoting ``p``."""
    if len(p) != size(b):
        raise ValueError(f"permutation of {len(p)} points for a type of size {size(b)}")
    iso = canonical_iso(b)
    return seq(iso, synth_nat(p), invert(iso))


def synth_iso(p: Permutation, dom: ValueType, cod: ValueType) -> Comb:
    """A term ``dom <-> cod`` sending index ``k`` to ``p(k)``."""
    if not len(p) == size(dom) == size(cod):
        raise ValueError("permutation and types disagree in size")
    return seq(canonical_iso(dom), synth_nat(p), invert(canonical_iso(cod)))


# -- partial injections ------------------------------------------------------


@dataclass(frozen=True)
class PartialInjection:
    """Partial injective map ``[0, m) -> [0, n)``; ``None`` marks undefined points."""

    mapping: tuple[Optional[int], ...]
    cod_size: int

    def __post_init__(self) -> None:
        defined = [j for j in self.mapping if j is not None]
        if len(set(defined)) != len(defined):
            raise ValueError("mapping is not injective")
        if any(not 0 <= j < self.cod_size for j in defined):
            raise ValueError("mapping leaves the codomain")

    @property
    def dom_size(self) -> int:
        return len(self.mapping)

    @classmethod
    def identity(cls, n: int) -> "PartialInjection":
        return cls(tuple(range(n)), n)

    @classmethod
    def empty(cls, m: int, n: int) -> "PartialInjection":
        return cls((None,) * m, n)

    @classmethod
    def from_permutation(cls, p: Permutation) -> "PartialInjection":
        return cls(p.image, len(p))

    def compose(self, other: "PartialInjection") -> "PartialInjection":
        """``self`` after ``other``."""
        if other.cod_size != self.dom_size:
            raise ValueError("size mismatch")
        return PartialInjection(
            tuple(None if j is None else self.mapping[j] for j in other.mapping),
            self.cod_size,
        )

    def dagger(self) -> "PartialInjection":
        back: list[Optional[int]] = [None] * self.cod_size
        for i, j in enumerate(self.mapping):
            if j is not None:
                back[j] = i
        return PartialInjection(tuple(back), self.dom_size)

    def oplus(self, other: "PartialInjection") -> "PartialInjection":
        shifted = tuple(None if j is None else j + self.cod_size for j in other.mapping)
        return PartialInjection(self.mapping + shifted, self.cod_size + other.cod_size)

    def otimes(self, other: "PartialInjection") -> "PartialInjection":
        out = []
        for i in self.mapping:
            for j in other.mapping:
                out.append(None if i is None or j is None else i * other.cod_size + j)
        return PartialInjection(tuple(out), self.cod_size * other.cod_size)


def pinj_compose(g: PartialInjection, f: PartialInjection) -> PartialInjection:
    return g.compose(f)


def pinj_dagger(f: PartialInjection) -> PartialInjection:
    return f.dagger()


def pinj_oplus(f: PartialInjection, g: PartialInjection) -> PartialInjection:
    return f.oplus(g)


def pinj_otimes(f: PartialInjection, g: PartialInjection) -> PartialInjection:
    return f.otimes(g)


# -- total functions ---------------------------------------------------------


@dataclass(frozen=True)
class FinFun:
    table: tuple[int, ...]
    cod_size: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "table", tuple(int(j) for j in self.table))
        if any(not 0 <= j < self.cod_size for j in self.table):
            raise ValueError("function leaves its codomain")

    @property
    def dom_size(self) -> int:
        return len(self.table)

    def __call__(self, k: int) -> int:
        return self.table[k]

    @classmethod
    def from_pairs(cls, pairs: Sequence[tuple[int, int]], dom_size: int, cod_size: int) -> "FinFun":
        table: list[Optional[int]] = [None] * dom_size
        for a, b in pairs:
            table[a] = b
        if None in table:
            raise ValueError("function is not total")
        return cls(tuple(table), cod_size)  # type: ignore[arg-type]

    def compose(self, other: "FinFun") -> "FinFun":
        """``self`` after ``other``."""
        if other.cod_size != self.dom_size:
            raise ValueError("size mismatch")
        return FinFun(tuple(self.table[j] for j in other.table), self.cod_size)


__all__ = [
    "FinFun",
    "PartialInjection",
    "Permutation",
    "adjacent_transposition",
    "canonical_iso",
    "denote",
    "denote_by_eval",
    "denote_derivation",
    "equiv",
    "pinj_compose",
    "pinj_dagger",
    "pinj_oplus",
    "pinj_otimes",
    "synth_iso",
    "synth_nat",
    "synth_perm",
    "transpositions",
]
