"""Abstract syntax of Pi: value types, combinators and values.

Everything here is an immutable dataclass, so terms can be hashed, shared
and compared structurally.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union


class PiTypeError(Exception):
    """Raised for ill-typed terms, values or type mismatches."""


# -- value types -------------------------------------------------------------


@dataclass(frozen=True)
class Zero:
    def __str__(self) -> str:
        return "0"


@dataclass(frozen=True)
class One:
    def __str__(self) -> str:
        return "1"


class _Binary:
    """Shared behaviour of ``Sum`` and ``Prod``: the hash is computed once,
    which keeps deep types cheap as dictionary keys."""

    left: "ValueType"
    right: "ValueType"

    def __post_init__(self) -> None:
        object.__setattr__(self, "_hash", hash((type(self).__name__, self.left, self.right)))

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if type(other) is not type(self) or self._hash != other._hash:
            return False
        return self.left == other.left and self.right == other.right

    def __str__(self) -> str:
        return format_type(self)


@dataclass(frozen=True, eq=False)
class Sum(_Binary):
    left: "ValueType"
    right: "ValueType"


@dataclass(frozen=True, eq=False)
class Prod(_Binary):
    left: "ValueType"
    right: "ValueType"


@dataclass(frozen=True)
class TVar:
    """Unification metavariable; never appears in a ground type."""

    ident: int

    def __str__(self) -> str:
        return f"?{self.ident}"


ValueType = Union[Zero, One, Sum, Prod, TVar]

ZERO = Zero()
ONE = One()
BOOL = Sum(ONE, ONE)


def format_type(b: "ValueType", prec: int = 0) -> str:
    """Render a type; ``+`` binds looser than ``*`` and both associate left."""
    if isinstance(b, Sum):
        text = f"{format_type(b.left, 1)} + {format_type(b.right, 2)}"
        return f"({text})" if prec > 1 else text
    if isinstance(b, Prod):
        text = f"{format_type(b.left, 3)} * {format_type(b.right, 4)}"
        return f"({text})" if prec > 3 else text
    return str(b)


def is_ground(b: ValueType) -> bool:
    if isinstance(b, TVar):
        return False
    if isinstance(b, (Sum, Prod)):
        return is_ground(b.left) and is_ground(b.right)
    return True


def size(b: ValueType) -> int:
    """Number of inhabitants of a ground type."""
    if isinstance(b, Zero):
        return 0
    if isinstance(b, One):
        return 1
    if isinstance(b, (Sum, Prod)):
        n = b.__dict__.get("_size")
        if n is None:
            n = size(b.left) + size(b.right) if isinstance(b, Sum) else size(b.left) * size(b.right)
            object.__setattr__(b, "_size", n)
        return n
    raise PiTypeError(f"size of non-ground type {b}")


def nat_type(n: int) -> ValueType:
    """The canonical finite type 1 + (1 + (... + 0)) with ``n`` inhabitants."""
    b: ValueType = ZERO
    for _ in range(n):
        b = Sum(ONE, b)
    return b


# -- combinators -------------------------------------------------------------

# name -> name of its dual (each line of the primitive table read both ways);
# None means the inverse is only expressible as ``inv``
DUALS = {
    "id": "id",
    "swap+": "swap+",
    "assocr+": "assocl+",
    "assocl+": "assocr+",
    "unite+l": "uniti+l",
    "uniti+l": "unite+l",
    "swapx": "swapx",
    "assocrx": "assoclx",
    "assoclx": "assocrx",
    "unitexl": "unitixl",
    "unitixl": "unitexl",
    "dist": "factor",
    "factor": "dist",
    "absorbl": "factorzr",
    "factorzr": "absorbl",
    # quantum extension, all monomorphic at 1+1; S and T have no named dual
    "H": "H",
    "S": None,
    "T": None,
}

CLASSICAL_PRIMS = frozenset(n for n in DUALS if n[0].islower())
QUANTUM_PRIMS = frozenset(n for n in DUALS if n[0].isupper())


@dataclass(frozen=True)
class Prim:
    name: str

    def __post_init__(self) -> None:
        if self.name not in DUALS:
            raise ValueError(f"unknown primitive {self.name!r}")


@dataclass(frozen=True)
class Seq:
    first: "Comb"
    second: "Comb"


@dataclass(frozen=True)
class SumC:
    left: "Comb"
    right: "Comb"


@dataclass(frozen=True)
class ProdC:
    left: "Comb"
    right: "Comb"


@dataclass(frozen=True)
class Inv:
    body: "Comb"


@dataclass(frozen=True)
class Ascribe:
    body: "Comb"
    dom: ValueType
    cod: ValueType


Comb = Union[Prim, Seq, SumC, ProdC, Inv, Ascribe]

ID = Prim("id")
SWAP_PLUS = Prim("swap+")
ASSOCR_PLUS = Prim("assocr+")
ASSOCL_PLUS = Prim("assocl+")
UNITE_PLUS = Prim("unite+l")
UNITI_PLUS = Prim("uniti+l")
SWAP_TIMES = Prim("swapx")
ASSOCR_TIMES = Prim("assocrx")
ASSOCL_TIMES = Prim("assoclx")
UNITE_TIMES = Prim("unitexl")
UNITI_TIMES = Prim("unitixl")
DIST = Prim("dist")
FACTOR = Prim("factor")
ABSORBL = Prim("absorbl")
FACTORZR = Prim("factorzr")
HADAMARD = Prim("H")
PHASE_S = Prim("S")
PHASE_T = Prim("T")


def seq(*cs: Comb) -> Comb:
    """Left-to-right composition of one or more combinators."""
    if not cs:
        return ID
    out = cs[0]
    for c in cs[1:]:
        out = Seq(out, c)
    return out


def is_classical(c: Comb) -> bool:
    if isinstance(c, Prim):
        return c.name in CLASSICAL_PRIMS
    if isinstance(c, (Seq,)):
        return is_classical(c.first) and is_classical(c.second)
    if isinstance(c, (SumC, ProdC)):
        return is_classical(c.left) and is_classical(c.right)
    return is_classical(c.body)


def comb_depth(c: Comb) -> int:
    if isinstance(c, Prim):
        return 1
    if isinstance(c, Seq):
        return 1 + max(comb_depth(c.first), comb_depth(c.second))
    if isinstance(c, (SumC, ProdC)):
        return 1 + max(comb_depth(c.left), comb_depth(c.right))
    return 1 + comb_depth(c.body)


# Derived combinators used throughout (right-hand unitors via swap, etc.)

UNITE_PLUS_R = Seq(SWAP_PLUS, UNITE_PLUS)  # b + 0 <-> b
UNITI_PLUS_R = Seq(UNITI_PLUS, SWAP_PLUS)  # b <-> b + 0
UNITE_TIMES_R = Seq(SWAP_TIMES, UNITE_TIMES)  # b x 1 <-> b
UNITI_TIMES_R = Seq(UNITI_TIMES, SWAP_TIMES)  # b <-> b x 1
DISTL = seq(SWAP_TIMES, DIST, SumC(SWAP_TIMES, SWAP_TIMES))  # a x (b+c) <-> a x b + a x c
FACTORL = seq(SumC(SWAP_TIMES, SWAP_TIMES), FACTOR, SWAP_TIMES)


def controlled(c: Comb) -> Comb:
    """``ctrl c : (1+1) x b <-> (1+1) x b``, applying ``c`` when the control is ``inr ()``."""
    return seq(DIST, SumC(ID, ProdC(ID, c)), FACTOR)


CNOT = controlled(SWAP_PLUS)
TOFFOLI = controlled(CNOT)


# -- values ------------------------------------------------------------------


@dataclass(frozen=True)
class Unit:
    def __str__(self) -> str:
        return "()"


@dataclass(frozen=True)
class InL:
    value: "Value"

    def __str__(self) -> str:
        return f"inl {_value_atom(self.value)}"


@dataclass(frozen=True)
class InR:
    value: "Value"

    def __str__(self) -> str:
        return f"inr {_value_atom(self.value)}"


@dataclass(frozen=True)
class Pair:
    first: "Value"
    second: "Value"

    def __str__(self) -> str:
        return f"({self.first}, {self.second})"


Value = Union[Unit, InL, InR, Pair]

UNIT = Unit()


def _value_atom(v: Value) -> str:
    return f"({v})" if isinstance(v, (InL, InR)) else str(v)


def has_type(v: Value, b: ValueType) -> bool:
    if isinstance(v, Unit):
        return isinstance(b, One)
    if isinstance(v, InL):
        return isinstance(b, Sum) and has_type(v.value, b.left)
    if isinstance(v, InR):
        return isinstance(b, Sum) and has_type(v.value, b.right)
    if isinstance(v, Pair):
        return isinstance(b, Prod) and has_type(v.first, b.left) and has_type(v.second, b.right)
    return False


def idx(v: Value, b: ValueType) -> int:
    """Position of ``v`` in the left-biased lexicographic enumeration of ``b``."""
    if isinstance(v, Unit) and isinstance(b, One):
        return 0
    if isinstance(v, InL) and isinstance(b, Sum):
        return idx(v.value, b.left)
    if isinstance(v, InR) and isinstance(b, Sum):
        return size(b.left) + idx(v.value, b.right)
    if isinstance(v, Pair) and isinstance(b, Prod):
        return idx(v.first, b.left) * size(b.right) + idx(v.second, b.right)
    raise PiTypeError(f"value {v} does not have type {b}")


def value_of(b: ValueType, k: int) -> Value:
    """Inverse of :func:`idx`."""
    n = size(b)
    if not 0 <= k < n:
        raise IndexError(f"index {k} out of range for type {b} of size {n}")
    if isinstance(b, One):
        return UNIT
    if isinstance(b, Sum):
        nl = size(b.left)
        return InL(value_of(b.left, k)) if k < nl else InR(value_of(b.right, k - nl))
    if isinstance(b, Prod):
        i, j = divmod(k, size(b.right))
        return Pair(value_of(b.left, i), value_of(b.right, j))
    raise PiTypeError(f"cannot enumerate {b}")


def values(b: ValueType) -> list[Value]:
    return [value_of(b, k) for k in range(size(b))]
