"""Coherence equations of the rig groupoid, instantiated at concrete types.

Each function returns ``(lhs, rhs, dom, cod)``; both sides have type
``dom <-> cod`` and must denote the same permutation.
"""

from __future__ import annotations

from typing import NamedTuple

from .syntax import (
    ASSOCL_PLUS,
    ASSOCL_TIMES,
    ASSOCR_PLUS,
    ASSOCR_TIMES,
    DIST,
    ID,
    SWAP_PLUS,
    SWAP_TIMES,
    Comb,
    Prod,
    ProdC,
    Sum,
    SumC,
    ValueType,
    seq,
)


class Law(NamedTuple):
    lhs: Comb
    rhs: Comb
    dom: ValueType
    cod: ValueType


def pentagon_plus(a: ValueType, b: ValueType, c: ValueType, d: ValueType) -> Law:
    return Law(
        seq(ASSOCR_PLUS, ASSOCR_PLUS),
        seq(SumC(ASSOCR_PLUS, ID), ASSOCR_PLUS, SumC(ID, ASSOCR_PLUS)),
        Sum(Sum(Sum(a, b), c), d),
        Sum(a, Sum(b, Sum(c, d))),
    )


def pentagon_times(a: ValueType, b: ValueType, c: ValueType, d: ValueType) -> Law:
    return Law(
        seq(ASSOCR_TIMES, ASSOCR_TIMES),
        seq(ProdC(ASSOCR_TIMES, ID), ASSOCR_TIMES, ProdC(ID, ASSOCR_TIMES)),
        Prod(Prod(Prod(a, b), c), d),
        Prod(a, Prod(b, Prod(c, d))),
    )


def hexagon_plus(a: ValueType, b: ValueType, c: ValueType) -> Law:
    # (a + b) + c  ->  b + (c + a)
    return Law(
        seq(ASSOCR_PLUS, SWAP_PLUS, ASSOCR_PLUS),
        seq(SumC(SWAP_PLUS, ID), ASSOCR_PLUS, SumC(ID, SWAP_PLUS)),
        Sum(Sum(a, b), c),
        Sum(b, Sum(c, a)),
    )


def hexagon_plus_inverse(a: ValueType, b: ValueType, c: ValueType) -> Law:
    # a + (b + c)  ->  (c + a) + b
    return Law(
        seq(ASSOCL_PLUS, SWAP_PLUS, ASSOCL_PLUS),
        seq(SumC(ID, SWAP_PLUS), ASSOCL_PLUS, SumC(SWAP_PLUS, ID)),
        Sum(a, Sum(b, c)),
        Sum(Sum(c, a), b),
    )


def hexagon_times(a: ValueType, b: ValueType, c: ValueType) -> Law:
    return Law(
        seq(ASSOCR_TIMES, SWAP_TIMES, ASSOCR_TIMES),
        seq(ProdC(SWAP_TIMES, ID), ASSOCR_TIMES, ProdC(ID, SWAP_TIMES)),
        Prod(Prod(a, b), c),
        Prod(b, Prod(c, a)),
    )


def hexagon_times_inverse(a: ValueType, b: ValueType, c: ValueType) -> Law:
    return Law(
        seq(ASSOCL_TIMES, SWAP_TIMES, ASSOCL_TIMES),
        seq(ProdC(ID, SWAP_TIMES), ASSOCL_TIMES, ProdC(SWAP_TIMES, ID)),
        Prod(a, Prod(b, c)),
        Prod(Prod(c, a), b),
    )


def swap_times_natural(
    f: Comb, a: ValueType, a2: ValueType, g: Comb, b: ValueType, b2: ValueType
) -> Law:
    """``(f * g) ; swapx = swapx ; (g * f)`` for ``f : a <-> a2``, ``g : b <-> b2``."""
    return Law(
        seq(ProdC(f, g), SWAP_TIMES),
        seq(SWAP_TIMES, ProdC(g, f)),
        Prod(a, b),
        Prod(b2, a2),
    )


def swap_plus_natural(
    f: Comb, a: ValueType, a2: ValueType, g: Comb, b: ValueType, b2: ValueType
) -> Law:
    return Law(
        seq(SumC(f, g), SWAP_PLUS),
        seq(SWAP_PLUS, SumC(g, f)),
        Sum(a, b),
        Sum(b2, a2),
    )


def dist_natural(
    f: Comb, a: ValueType, a2: ValueType,
    g: Comb, b: ValueType, b2: ValueType,
    h: Comb, c: ValueType, c2: ValueType,
) -> Law:
    """``((f + g) * h) ; dist = dist ; (f * h + g * h)``."""
    return Law(
        seq(ProdC(SumC(f, g), h), DIST),
        seq(DIST, SumC(ProdC(f, h), ProdC(g, h))),
        Prod(Sum(a, b), c),
        Sum(Prod(a2, c2), Prod(b2, c2)),
    )
