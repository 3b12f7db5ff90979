"""Type inference and checking for Pi combinators by first-order unification.

Each primitive carries a schematic type; :func:`infer` instantiates the
schemas with fresh metavariables and unifies them along the term structure.
:func:`check` additionally fixes the endpoints and returns a derivation in
which every subterm carries its ground type.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence, Set

from .syntax import (
    ONE,
    ZERO,
    Ascribe,
    Comb,
    Inv,
    PiTypeError,
    Prim,
    Prod,
    ProdC,
    Seq,
    Sum,
    SumC,
    TVar,
    ValueType,
    format_type,
    is_ground,
    size,
)


class UnificationError(PiTypeError):
    pass


class OccursCheckError(UnificationError):
    pass


class AmbiguousTypeError(PiTypeError):
    pass


@dataclass(frozen=True)
class CombType:
    dom: ValueType
    cod: ValueType

    def __str__(self) -> str:
        return f"{format_type(self.dom)} <-> {format_type(self.cod)}"


_SCHEMAS = {
    "id": lambda a, b, c: (a, a),
    "swap+": lambda a, b, c: (Sum(a, b), Sum(b, a)),
    "assocr+": lambda a, b, c: (Sum(Sum(a, b), c), Sum(a, Sum(b, c))),
    "unite+l": lambda a, b, c: (Sum(ZERO, a), a),
    "swapx": lambda a, b, c: (Prod(a, b), Prod(b, a)),
    "assocrx": lambda a, b, c: (Prod(Prod(a, b), c), Prod(a, Prod(b, c))),
    "unitexl": lambda a, b, c: (Prod(ONE, a), a),
    "dist": lambda a, b, c: (Prod(Sum(a, b), c), Sum(Prod(a, c), Prod(b, c))),
    "absorbl": lambda a, b, c: (Prod(a, ZERO), ZERO),
    "H": lambda a, b, c: (Sum(ONE, ONE), Sum(ONE, ONE)),
    "S": lambda a, b, c: (Sum(ONE, ONE), Sum(ONE, ONE)),
    "T": lambda a, b, c: (Sum(ONE, ONE), Sum(ONE, ONE)),
}
# the other half of each primitive pair reads its partner's schema backwards
_FLIPPED = {"assocl+": "assocr+", "uniti+l": "unite+l", "assoclx": "assocrx",
            "unitixl": "unitexl", "factor": "dist", "factorzr": "absorbl"}


def _schema(name: str, fresh) -> CombType:
    a, b, c = fresh(), fresh(), fresh()
    if name in _FLIPPED:
        dom, cod = _SCHEMAS[_FLIPPED[name]](a, b, c)
        return CombType(cod, dom)
    dom, cod = _SCHEMAS[name](a, b, c)
    return CombType(dom, cod)


class Unifier:
    """Mutable substitution over metavariables (triangular form)."""

    def __init__(self) -> None:
        self.subst: dict[int, ValueType] = {}
        self._counter = itertools.count()

    def fresh(self) -> TVar:
        return TVar(next(self._counter))

    def resolve(self, b: ValueType) -> ValueType:
        while isinstance(b, TVar) and b.ident in self.subst:
            b = self.subst[b.ident]
        return b

    def zonk(self, b: ValueType, memo: Optional[dict] = None) -> ValueType:
        """Apply the substitution everywhere; ``memo`` caches results by object identity."""
        if memo is not None:
            hit = memo.get(id(b))
            if hit is not None:
                return hit[1]
        r = self.resolve(b)
        if isinstance(r, Sum):
            out = Sum(self.zonk(r.left, memo), self.zonk(r.right, memo))
        elif isinstance(r, Prod):
            out = Prod(self.zonk(r.left, memo), self.zonk(r.right, memo))
        else:
            out = r
        if memo is not None:
            memo[id(b)] = (b, out)  # keep b alive so its id stays unique
        return out

    def occurs(self, v: TVar, b: ValueType) -> bool:
        b = self.resolve(b)
        if b == v:
            return True
        if isinstance(b, (Sum, Prod)):
            return self.occurs(v, b.left) or self.occurs(v, b.right)
        return False

    def unify(self, x: ValueType, y: ValueType) -> None:
        x, y = self.resolve(x), self.resolve(y)
        if x == y:
            return
        if isinstance(x, TVar):
            if self.occurs(x, y):
                raise OccursCheckError(
                    f"occurs check: {x} in {format_type(self.zonk(y))}"
                )
            self.subst[x.ident] = y
        elif isinstance(y, TVar):
            self.unify(y, x)
        elif type(x) is type(y) and isinstance(x, (Sum, Prod)):
            self.unify(x.left, y.left)
            self.unify(x.right, y.right)
        else:
            raise UnificationError(
                f"cannot unify {format_type(self.zonk(x))} with {format_type(self.zonk(y))}"
            )


@dataclass
class Derivation:
    """A combinator annotated with its type; children mirror the term structure."""

    comb: Comb
    dom: ValueType
    cod: ValueType
    children: list["Derivation"] = field(default_factory=list)

    @property
    def type(self) -> CombType:
        return CombType(self.dom, self.cod)


def _walk(c: Comb, u: Unifier, known: Mapping[int, Derivation] = {}) -> Derivation:
    if id(c) in known:
        return known[id(c)]
    try:
        if isinstance(c, Prim):
            t = _schema(c.name, u.fresh)
            return Derivation(c, t.dom, t.cod)
        if isinstance(c, Seq):
            d1, d2 = _walk(c.first, u, known), _walk(c.second, u, known)
            u.unify(d1.cod, d2.dom)
            return Derivation(c, d1.dom, d2.cod, [d1, d2])
        if isinstance(c, SumC):
            d1, d2 = _walk(c.left, u, known), _walk(c.right, u, known)
            return Derivation(c, Sum(d1.dom, d2.dom), Sum(d1.cod, d2.cod), [d1, d2])
        if isinstance(c, ProdC):
            d1, d2 = _walk(c.left, u, known), _walk(c.right, u, known)
            return Derivation(c, Prod(d1.dom, d2.dom), Prod(d1.cod, d2.cod), [d1, d2])
        if isinstance(c, Inv):
            d = _walk(c.body, u, known)
            return Derivation(c, d.cod, d.dom, [d])
        if isinstance(c, Ascribe):
            d = _walk(c.body, u, known)
            u.unify(d.dom, c.dom)
            u.unify(d.cod, c.cod)
            return Derivation(c, d.dom, d.cod, [d])
    except UnificationError as e:
        if getattr(e, "term", None) is None:
            e.term = c
        raise
    raise TypeError(f"not a combinator: {c!r}")


def _zonk_derivation(d: Derivation, u: Unifier, done: Set[int] = frozenset()) -> Derivation:
    # adjacent nodes share type objects, so memoize by identity
    memo: dict = {}

    def go(node: Derivation) -> Derivation:
        if id(node) in done:
            return node
        return Derivation(
            node.comb, u.zonk(node.dom, memo), u.zonk(node.cod, memo), [go(ch) for ch in node.children]
        )

    return go(d)


def _rename(t: CombType) -> CombType:
    # renumber metavariables 0, 1, ... in order of appearance
    names: dict[int, TVar] = {}

    def go(b: ValueType) -> ValueType:
        if isinstance(b, TVar):
            return names.setdefault(b.ident, TVar(len(names)))
        if isinstance(b, Sum):
            return Sum(go(b.left), go(b.right))
        if isinstance(b, Prod):
            return Prod(go(b.left), go(b.right))
        return b

    return CombType(go(t.dom), go(t.cod))


def infer(c: Comb) -> CombType:
    """Principal type schema of ``c`` (metavariables numbered from 0)."""
    u = Unifier()
    d = _walk(c, u)
    return _rename(CombType(u.zonk(d.dom), u.zonk(d.cod)))


def check(
    c: Comb, dom: ValueType, cod: ValueType, reuse: Sequence[Derivation] = ()
) -> Derivation:
    """Check ``c : dom <-> cod`` and return the fully ground derivation.

    ``reuse`` lists ground derivations of subterms (the very same objects
    occurring inside ``c``) that need not be walked again.  Lookup is by
    object identity, so a shared constant may be matched at the wrong
    occurrence; that can only cause a spurious type error, and the check
    is then repeated from scratch.
    """
    if not (is_ground(dom) and is_ground(cod)):
        raise PiTypeError("check requires ground endpoint types")
    if reuse:
        try:
            return _check(c, dom, cod, reuse)
        except PiTypeError:
            pass
    return _check(c, dom, cod, ())


def _check(c: Comb, dom: ValueType, cod: ValueType, reuse: Sequence[Derivation]) -> Derivation:
    u = Unifier()
    known = {id(r.comb): r for r in reuse}
    d = _walk(c, u, known)
    try:
        u.unify(d.dom, dom)
        u.unify(d.cod, cod)
    except UnificationError as e:
        e.term = c
        raise
    done = {id(r) for r in reuse}
    d = _zonk_derivation(d, u, done)
    _assert_ground(d, done)
    if size(dom) != size(cod):  # pragma: no cover - guaranteed by the primitive schemas
        raise AssertionError(f"cardinality not preserved by {c}: {dom} vs {cod}")
    return d


def check_ascribed(c: Comb) -> Derivation:
    """Check a term whose top node is an ascription, using its endpoint types."""
    if not isinstance(c, Ascribe):
        raise AmbiguousTypeError("program needs a top-level ascription 'c : b1 <-> b2'")
    return check(c, c.dom, c.cod)


def _assert_ground(d: Derivation, done: Set[int] = frozenset()) -> None:
    memo: dict[int, bool] = {}

    def ground(b: ValueType) -> bool:
        hit = memo.get(id(b))
        if hit is None:
            if isinstance(b, (Sum, Prod)):
                hit = ground(b.left) and ground(b.right)
            else:
                hit = not isinstance(b, TVar)
            memo[id(b)] = hit
        return hit

    stack = [d]
    while stack:
        node = stack.pop()
        if id(node) in done:
            continue
        if not (ground(node.dom) and ground(node.cod)):
            raise AmbiguousTypeError(
                f"ambiguous middle type at {node.dom} <-> {node.cod}; add an ascription"
            )
        stack.extend(node.children)


def type_of(c: Comb) -> CombType:
    """Ground type of ``c`` when inference alone determines it."""
    t = infer(c)
    if not (is_ground(t.dom) and is_ground(t.cod)):
        raise AmbiguousTypeError(f"type {t} is not ground; add an ascription")
    check(c, t.dom, t.cod)
    return t
