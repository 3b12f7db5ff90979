"""Random well-typed objects for property tests, sweeps and the demos.

Every generator takes a :class:`numpy.random.Generator`, so runs are
reproducible from a seed.
"""

from __future__ import annotations

from typing import Optional

import numpy as np
from scipy.stats import unitary_group

from .effects import AllocTerm, HideTerm, hide_lift
from .evaluate import invert
from .models import FinFun, PartialInjection, Permutation, synth_iso
from .quantum import DiscardStage, IsometryStage, PrepareStage, Stage, UnitaryStage
from .syntax import (
    ONE,
    ZERO,
    Ascribe,
    Comb,
    Inv,
    One,
    Prim,
    Prod,
    ProdC,
    Seq,
    Sum,
    SumC,
    ValueType,
    Zero,
    nat_type,
    size,
)


# -- types ----------------------------------------------------------------------


def random_type(rng: np.random.Generator, max_size: int = 64, depth: int = 5) -> ValueType:
    """A ground type with at most ``max_size`` inhabitants."""
    if depth == 0 or max_size <= 1 or rng.random() < 0.12:
        return ONE if rng.random() < 0.85 else ZERO
    left = random_type(rng, max_size, depth - 1)
    if rng.random() < 0.5:
        right = random_type(rng, max(max_size - size(left), 0), depth - 1)
        if size(left) + size(right) <= max_size:
            return Sum(left, right)
    else:
        budget = max_size // max(size(left), 1)
        right = random_type(rng, budget, depth - 1)
        if size(left) * size(right) <= max_size:
            return Prod(left, right)
    return left


def random_type_of_size(rng: np.random.Generator, n: int, depth: int = 3) -> ValueType:
    """A random ground type with exactly ``n`` inhabitants."""
    if n == 0:
        return ZERO if depth == 0 or rng.random() < 0.6 else Prod(random_type(rng, 4, 1), ZERO)
    if n == 1:
        return ONE if depth == 0 or rng.random() < 0.7 else Sum(ZERO, ONE) if rng.random() < 0.5 else Prod(ONE, ONE)
    if depth == 0:
        return nat_type(n)
    divisors = [d for d in range(2, n) if n % d == 0]
    if divisors and rng.random() < 0.4:
        d = int(rng.choice(divisors))
        return Prod(random_type_of_size(rng, d, depth - 1), random_type_of_size(rng, n // d, depth - 1))
    k = int(rng.integers(1, n))
    return Sum(random_type_of_size(rng, k, depth - 1), random_type_of_size(rng, n - k, depth - 1))


# -- combinators ----------------------------------------------------------------


def _prim_moves(b: ValueType) -> list[tuple[str, ValueType]]:
    """Primitives applicable at domain ``b`` with their codomains."""
    moves = [("id", b), ("uniti+l", Sum(ZERO, b)), ("unitixl", Prod(ONE, b))]
    if isinstance(b, Sum):
        moves.append(("swap+", Sum(b.right, b.left)))
        if isinstance(b.left, Sum):
            moves.append(("assocr+", Sum(b.left.left, Sum(b.left.right, b.right))))
        if isinstance(b.right, Sum):
            moves.append(("assocl+", Sum(Sum(b.left, b.right.left), b.right.right)))
        if isinstance(b.left, Zero):
            moves.append(("unite+l", b.right))
        if isinstance(b.left, Prod) and isinstance(b.right, Prod) and b.left.right == b.right.right:
            moves.append(("factor", Prod(Sum(b.left.left, b.right.left), b.left.right)))
    if isinstance(b, Prod):
        moves.append(("swapx", Prod(b.right, b.left)))
        if isinstance(b.left, Prod):
            moves.append(("assocrx", Prod(b.left.left, Prod(b.left.right, b.right))))
        if isinstance(b.right, Prod):
            moves.append(("assoclx", Prod(Prod(b.left, b.right.left), b.right.right)))
        if isinstance(b.left, One):
            moves.append(("unitexl", b.right))
        if isinstance(b.left, Sum):
            moves.append(("dist", Sum(Prod(b.left.left, b.right), Prod(b.left.right, b.right))))
        if isinstance(b.right, Zero):
            moves.append(("absorbl", ZERO))
    return moves


def random_comb(
    rng: np.random.Generator, dom: ValueType, depth: int = 8
) -> tuple[Comb, ValueType]:
    """A random term with domain ``dom`` and syntax depth at most ``depth``.

    Returns the term and its codomain.  Terms are built forward from the
    domain, so they are well typed by construction; the only primitive whose
    type inference leaves a metavariable (``factorzr``) is ascribed.
    """
    if depth <= 1 or rng.random() < 0.25:
        if depth >= 2 and isinstance(dom, Zero) and rng.random() < 0.3:
            cod = Prod(random_type(rng, 4, 1), ZERO)
            return Ascribe(Prim("factorzr"), dom, cod), cod
        moves = _prim_moves(dom)
        # bias away from the type-growing unit introductions
        weights = np.array([0.3 if n in ("uniti+l", "unitixl") else 1.0 for n, _ in moves])
        name, cod = moves[rng.choice(len(moves), p=weights / weights.sum())]
        return Prim(name), cod

    kinds = ["seq", "seq", "inv", "ascribe"]
    if isinstance(dom, Sum):
        kinds += ["sum", "sum"]
    if isinstance(dom, Prod):
        kinds += ["prod", "prod"]
    kind = kinds[rng.integers(len(kinds))]
    if kind == "seq":
        c1, mid = random_comb(rng, dom, depth - 1)
        c2, cod = random_comb(rng, mid, depth - 1)
        return Seq(c1, c2), cod
    if kind == "sum":
        c1, b1 = random_comb(rng, dom.left, depth - 1)
        c2, b2 = random_comb(rng, dom.right, depth - 1)
        return SumC(c1, c2), Sum(b1, b2)
    if kind == "prod":
        c1, b1 = random_comb(rng, dom.left, depth - 1)
        c2, b2 = random_comb(rng, dom.right, depth - 1)
        return ProdC(c1, c2), Prod(b1, b2)
    if kind == "inv":
        # inv (invert c) has the same type as c
        c, cod = random_comb(rng, dom, depth - 1)
        return Inv(invert(c)), cod
    c, cod = random_comb(rng, dom, depth - 1)
    return Ascribe(c, dom, cod), cod


def random_typed_comb(
    rng: np.random.Generator, max_size: int = 64, depth: int = 8
) -> tuple[Comb, ValueType, ValueType]:
    dom = random_type(rng, max_size)
    c, cod = random_comb(rng, dom, depth)
    return c, dom, cod


def random_permutation(rng: np.random.Generator, n: int) -> Permutation:
    return Permutation(tuple(int(k) for k in rng.permutation(n)))


# -- semantic objects -------------------------------------------------------------


def random_pinj(
    rng: np.random.Generator, dom_size: Optional[int] = None, cod_size: Optional[int] = None, max_size: int = 8
) -> PartialInjection:
    m = int(rng.integers(0, max_size + 1)) if dom_size is None else dom_size
    n = int(rng.integers(0, max_size + 1)) if cod_size is None else cod_size
    k = int(rng.integers(0, min(m, n) + 1))
    sources = rng.choice(m, size=k, replace=False)
    targets = rng.choice(n, size=k, replace=False)
    mapping: list[Optional[int]] = [None] * m
    for s, t in zip(sources, targets):
        mapping[int(s)] = int(t)
    return PartialInjection(tuple(mapping), n)


def random_function(
    rng: np.random.Generator, dom_size: Optional[int] = None, cod_size: Optional[int] = None, max_size: int = 8
) -> FinFun:
    m = int(rng.integers(1, max_size + 1)) if dom_size is None else dom_size
    n = int(rng.integers(1, max_size + 1)) if cod_size is None else cod_size
    return FinFun(tuple(int(j) for j in rng.integers(0, n, size=m)), n)


# -- layer terms ------------------------------------------------------------------


def random_alloc(
    rng: np.random.Generator, dom: ValueType, max_size: int = 8, depth: int = 5
) -> AllocTerm:
    """A random ``dom >-> cod`` with ``|cod| <= max_size`` (and at least ``|dom|``)."""
    extra = int(rng.integers(0, max(max_size - size(dom), 0) + 1))
    hidden = random_type_of_size(rng, extra, depth=2)
    body, cod = random_comb(rng, Sum(dom, hidden), depth)
    return AllocTerm(dom, hidden, cod, body)


def random_hide(
    rng: np.random.Generator, dom: ValueType, max_size: int = 8, depth: int = 4
) -> HideTerm:
    """A random ``dom ~> cod`` whose body lives at size at most ``max_size``."""
    n = size(dom)
    shapes = [(b, g) for b in range(1, max_size + 1) for g in range(1, max_size + 1) if n <= b * g <= max_size]
    b_size, g_size = shapes[rng.integers(len(shapes))]
    out, garbage = random_type_of_size(rng, b_size, 2), random_type_of_size(rng, g_size, 2)
    hidden = random_type_of_size(rng, b_size * g_size - n, 2)
    p = random_permutation(rng, b_size * g_size)
    body, mid = random_comb(rng, Sum(dom, hidden), depth)
    body = Seq(body, synth_iso(p, mid, Prod(out, garbage)))
    return hide_lift(AllocTerm(dom, hidden, Prod(out, garbage), body), garbage)


# -- quantum pipelines ------------------------------------------------------------


def random_unitary(rng: np.random.Generator, n: int) -> np.ndarray:
    if n == 1:
        return np.exp(2j * np.pi * rng.random()).reshape(1, 1)
    return unitary_group.rvs(n, random_state=rng)


def random_isometry(rng: np.random.Generator, n: int, m: int) -> np.ndarray:
    """A random isometry from dimension ``n`` into dimension ``m >= n``."""
    return random_unitary(rng, m)[:, :n]


def random_pipeline(
    rng: np.random.Generator, dom_dim: Optional[int] = None, max_dim: int = 16, stages: int = 4
) -> tuple[int, list[Stage]]:
    """A random sequence of unitary, preparation, isometry and discard stages.

    Every intermediate dimension stays at most ``max_dim``.
    """
    dim = int(rng.integers(1, max_dim + 1)) if dom_dim is None else dom_dim
    start = dim
    out: list[Stage] = []
    for _ in range(stages):
        options = ["unitary"]
        if dim < max_dim:
            options += ["prepare", "isometry"]
        divisors = [g for g in range(2, dim + 1) if dim % g == 0]
        if divisors:
            options.append("discard")
        kind = options[rng.integers(len(options))]
        if kind == "unitary":
            out.append(UnitaryStage(random_unitary(rng, dim)))
        elif kind == "prepare":
            extra = int(rng.integers(1, max_dim - dim + 1))
            out.append(PrepareStage(extra))
            dim += extra
        elif kind == "isometry":
            m = int(rng.integers(dim, max_dim + 1))
            out.append(IsometryStage(random_isometry(rng, dim, m)))
            dim = m
        else:
            g = int(rng.choice(divisors))
            out.append(DiscardStage(g))
            dim //= g
    return start, out


def random_density(rng: np.random.Generator, n: int, rank: Optional[int] = None) -> np.ndarray:
    r = n if rank is None else rank
    a = rng.normal(size=(n, r)) + 1j * rng.normal(size=(n, r))
    rho = a @ a.conj().T
    return rho / np.trace(rho)
