"""Forward and backward interpretation of Pi, and syntactic inversion."""

from __future__ import annotations

from .syntax import (
    DUALS,
    Ascribe,
    Comb,
    InL,
    InR,
    Inv,
    Pair,
    PiTypeError,
    Prim,
    ProdC,
    Seq,
    SumC,
    Unit,
    Value,
)


class EvalError(PiTypeError):
    """A value reached a combinator whose type it does not inhabit."""


def _stuck(name: str, v: Value):
    raise EvalError(f"{name} cannot act on {v}")


def _prim(name: str, v: Value) -> Value:
    if name == "id":
        return v
    if name == "swap+":
        if isinstance(v, InL):
            return InR(v.value)
        if isinstance(v, InR):
            return InL(v.value)
    elif name == "assocr+":
        if isinstance(v, InL):
            w = v.value
            if isinstance(w, InL):
                return InL(w.value)
            if isinstance(w, InR):
                return InR(InL(w.value))
        elif isinstance(v, InR):
            return InR(InR(v.value))
    elif name == "assocl+":
        if isinstance(v, InL):
            return InL(InL(v.value))
        if isinstance(v, InR):
            w = v.value
            if isinstance(w, InL):
                return InL(InR(w.value))
            if isinstance(w, InR):
                return InR(w.value)
    elif name == "unite+l":
        if isinstance(v, InR):
            return v.value
    elif name == "uniti+l":
        return InR(v)
    elif name == "swapx":
        if isinstance(v, Pair):
            return Pair(v.second, v.first)
    elif name == "assocrx":
        if isinstance(v, Pair) and isinstance(v.first, Pair):
            return Pair(v.first.first, Pair(v.first.second, v.second))
    elif name == "assoclx":
        if isinstance(v, Pair) and isinstance(v.second, Pair):
            return Pair(Pair(v.first, v.second.first), v.second.second)
    elif name == "unitexl":
        if isinstance(v, Pair) and isinstance(v.first, Unit):
            return v.second
    elif name == "unitixl":
        return Pair(Unit(), v)
    elif name == "dist":
        if isinstance(v, Pair):
            if isinstance(v.first, InL):
                return InL(Pair(v.first.value, v.second))
            if isinstance(v.first, InR):
                return InR(Pair(v.first.value, v.second))
    elif name == "factor":
        if isinstance(v, InL) and isinstance(v.value, Pair):
            return Pair(InL(v.value.first), v.value.second)
        if isinstance(v, InR) and isinstance(v.value, Pair):
            return Pair(InR(v.value.first), v.value.second)
    elif name in ("absorbl", "factorzr"):
        # both endpoints contain 0, so no value can ever arrive here
        pass
    else:
        raise EvalError(f"{name} has no classical action")
    _stuck(name, v)


def evaluate(c: Comb, v: Value) -> Value:
    """Run ``c`` forwards on ``v``."""
    if isinstance(c, Prim):
        return _prim(c.name, v)
    if isinstance(c, Seq):
        return evaluate(c.second, evaluate(c.first, v))
    if isinstance(c, SumC):
        if isinstance(v, InL):
            return InL(evaluate(c.left, v.value))
        if isinstance(v, InR):
            return InR(evaluate(c.right, v.value))
        _stuck("+", v)
    if isinstance(c, ProdC):
        if isinstance(v, Pair):
            return Pair(evaluate(c.left, v.first), evaluate(c.right, v.second))
        _stuck("*", v)
    if isinstance(c, Inv):
        return reval(c.body, v)
    if isinstance(c, Ascribe):
        return evaluate(c.body, v)
    raise TypeError(f"not a combinator: {c!r}")


def reval(c: Comb, v: Value) -> Value:
    """Run ``c`` backwards: ``reval(c, evaluate(c, v)) == v``."""
    if isinstance(c, Prim):
        dual = DUALS[c.name]
        if dual is None:
            raise EvalError(f"{c.name} has no classical action")
        return _prim(dual, v)
    if isinstance(c, Seq):
        return reval(c.first, reval(c.second, v))
    if isinstance(c, SumC):
        if isinstance(v, InL):
            return InL(reval(c.left, v.value))
        if isinstance(v, InR):
            return InR(reval(c.right, v.value))
        _stuck("+", v)
    if isinstance(c, ProdC):
        if isinstance(v, Pair):
            return Pair(reval(c.left, v.first), reval(c.right, v.second))
        _stuck("*", v)
    if isinstance(c, Inv):
        return evaluate(c.body, v)
    if isinstance(c, Ascribe):
        return reval(c.body, v)
    raise TypeError(f"not a combinator: {c!r}")


def invert(c: Comb) -> Comb:
    """Syntactic inverse by recursive descent over the term."""
    if isinstance(c, Prim):
        dual = DUALS[c.name]
        return Inv(c) if dual is None else Prim(dual)
    if isinstance(c, Seq):
        return Seq(invert(c.second), invert(c.first))
    if isinstance(c, SumC):
        return SumC(invert(c.left), invert(c.right))
    if isinstance(c, ProdC):
        return ProdC(invert(c.left), invert(c.right))
    if isinstance(c, Inv):
        return c.body
    if isinstance(c, Ascribe):
        return Ascribe(invert(c.body), c.cod, c.dom)
    raise TypeError(f"not a combinator: {c!r}")


def strip_inv(c: Comb) -> Comb:
    """Push every ``Inv`` down to the primitives, leaving an ``Inv``-free term
    (quantum phase gates excepted) that denotes the same isomorphism."""
    if isinstance(c, Prim):
        return c
    if isinstance(c, Seq):
        return Seq(strip_inv(c.first), strip_inv(c.second))
    if isinstance(c, SumC):
        return SumC(strip_inv(c.left), strip_inv(c.right))
    if isinstance(c, ProdC):
        return ProdC(strip_inv(c.left), strip_inv(c.right))
    if isinstance(c, Inv):
        return strip_inv(invert(c.body))
    if isinstance(c, Ascribe):
        return Ascribe(strip_inv(c.body), c.dom, c.cod)
    raise TypeError(f"not a combinator: {c!r}")
