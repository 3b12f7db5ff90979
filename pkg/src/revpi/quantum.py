"""Quantum backend: Pi terms as unitary matrices, isometries, and channels.

Classical combinators map to their permutation matrices; the extension
primitives ``H``, ``S`` and ``T`` act on ``1 + 1``.  Sums of combinators
become direct sums and products become Kronecker products, so the basis
order of every space is the canonical value enumeration.

Channels are kept in Stinespring normal form: the input space is padded
with ``prep_dim`` extra dimensions (a direct-sum injection), a single
unitary acts, and a tensor factor of dimension ``discard_dim`` is traced
out.  Kraus operators are derived from that triple.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np
from scipy.linalg import block_diag, null_space

from .effects import HideTerm, measure_term
from .models import _prim_perm
from .syntax import (
    Ascribe,
    Comb,
    Inv,
    Prim,
    Prod,
    ProdC,
    Seq,
    Sum,
    SumC,
    ValueType,
    nat_type,
    size,
)
from .typecheck import Derivation, check

TOL = 1e-9

H_MATRIX = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
S_MATRIX = np.diag([1, 1j]).astype(complex)
T_MATRIX = np.diag([1, np.exp(1j * np.pi / 4)]).astype(complex)
_GATES = {"H": H_MATRIX, "S": S_MATRIX, "T": T_MATRIX}


class QuantumError(ValueError):
    pass


# -- unitary semantics -----------------------------------------------------------


def denote_q_derivation(d: Derivation) -> np.ndarray:
    c = d.comb
    if isinstance(c, Prim):
        if c.name in _GATES:
            return _GATES[c.name].copy()
        return _prim_perm(c.name, d.dom).matrix()
    if isinstance(c, Seq):
        first, second = d.children
        return denote_q_derivation(second) @ denote_q_derivation(first)
    if isinstance(c, SumC):
        left, right = (denote_q_derivation(ch) for ch in d.children)
        # block_diag drops zero-sized blocks' shape, so handle the empty case
        if left.size == 0:
            return right
        if right.size == 0:
            return left
        return block_diag(left, right)
    if isinstance(c, ProdC):
        left, right = (denote_q_derivation(ch) for ch in d.children)
        return np.kron(left, right)
    if isinstance(c, Inv):
        return denote_q_derivation(d.children[0]).conj().T
    if isinstance(c, Ascribe):
        return denote_q_derivation(d.children[0])
    raise TypeError(f"not a combinator: {c!r}")


def denote_q(c: Comb, dom: ValueType, cod: ValueType) -> np.ndarray:
    """Unitary matrix of ``c : dom <-> cod`` (columns indexed by ``dom``)."""
    u = denote_q_derivation(check(c, dom, cod))
    n = size(dom)
    return u.reshape(n, n)


def is_unitary(u: np.ndarray, tol: float = TOL) -> bool:
    u = np.asarray(u)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        return False
    eye = np.eye(u.shape[0])
    return bool(np.allclose(u.conj().T @ u, eye, atol=tol) and np.allclose(u @ u.conj().T, eye, atol=tol))


def is_isometry(v: np.ndarray, tol: float = TOL) -> bool:
    v = np.asarray(v)
    return v.ndim == 2 and bool(np.allclose(v.conj().T @ v, np.eye(v.shape[1]), atol=tol))


def is_density(rho: np.ndarray, tol: float = TOL) -> bool:
    rho = np.asarray(rho)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        return False
    if not np.allclose(rho, rho.conj().T, atol=tol):
        return False
    if abs(np.trace(rho) - 1) > tol:
        return False
    return bool(np.linalg.eigvalsh((rho + rho.conj().T) / 2).min() >= -tol)


def as_density(rho, tol: float = TOL) -> np.ndarray:
    rho = np.asarray(rho, dtype=complex)
    if not is_density(rho, tol):
        raise QuantumError("not a density matrix (Hermitian, unit trace, positive)")
    return rho


def ket_to_density(psi) -> np.ndarray:
    psi = np.asarray(psi, dtype=complex).reshape(-1)
    return np.outer(psi, psi.conj())


def iso_lift(u: Comb, dom: ValueType, hidden: ValueType, cod: ValueType) -> np.ndarray:
    """Isometry ``dom -> cod`` obtained from ``u : dom + hidden <-> cod`` by
    feeding only the ``dom`` summand."""
    full = denote_q(u, Sum(dom, hidden), cod)
    v = full[:, : size(dom)]
    if not is_isometry(v):  # pragma: no cover - columns of a unitary
        raise AssertionError("lifted map is not an isometry")
    return v


# -- channels ---------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Channel:
    """``rho -> Tr_G(U (rho (+) 0_E) U^dagger)`` with ``U`` unitary on ``dom + E``."""

    dom_dim: int
    prep_dim: int
    unitary: np.ndarray
    discard_dim: int

    def __post_init__(self) -> None:
        total = self.dom_dim + self.prep_dim
        if self.unitary.shape != (total, total):
            raise QuantumError(f"unitary must be {total}x{total}")
        if self.discard_dim <= 0 or total % self.discard_dim:
            raise QuantumError("discarded factor must divide the dilated dimension")
        if not is_unitary(self.unitary):
            raise QuantumError("dilation is not unitary")

    @property
    def cod_dim(self) -> int:
        return (self.dom_dim + self.prep_dim) // self.discard_dim

    @property
    def isometry(self) -> np.ndarray:
        return self.unitary[:, : self.dom_dim]

    def kraus(self) -> list[np.ndarray]:
        """``K_j = (I (x) <j|) V``."""
        v = self.isometry
        g = self.discard_dim
        return [v[j::g, :] for j in range(g)]

    def __call__(self, rho: np.ndarray) -> np.ndarray:
        v = self.isometry
        k, g = self.cod_dim, self.discard_dim
        big = (v @ rho @ v.conj().T).reshape(k, g, k, g)
        return np.einsum("agbg->ab", big)

    def choi(self) -> np.ndarray:
        """``sum_ij |i><j| (x) Lambda(|i><j|)``."""
        n, k = self.dom_dim, self.cod_dim
        j = np.zeros((n * k, n * k), dtype=complex)
        for a in range(n):
            for b in range(n):
                e = np.zeros((n, n), dtype=complex)
                e[a, b] = 1
                j[a * k : (a + 1) * k, b * k : (b + 1) * k] = self(e)
        return j

    def is_trace_preserving(self, tol: float = TOL) -> bool:
        total = sum(kk.conj().T @ kk for kk in self.kraus())
        return bool(np.allclose(total, np.eye(self.dom_dim), atol=tol))

    def choi_min_eigenvalue(self) -> float:
        j = self.choi()
        return float(np.linalg.eigvalsh((j + j.conj().T) / 2).min())

    def is_completely_positive(self, tol: float = TOL) -> bool:
        return self.choi_min_eigenvalue() >= -tol


def complete_isometry(v: np.ndarray) -> np.ndarray:
    """Extend the columns of an isometry to a unitary."""
    if not is_isometry(v):
        raise QuantumError("matrix is not an isometry")
    if v.shape[0] == v.shape[1]:
        return np.array(v, dtype=complex)
    return np.hstack([v, null_space(v.conj().T)]).astype(complex)


def chan_lift(v: np.ndarray, cod_dim: int, discard_dim: int) -> Channel:
    """Channel ``rho -> Tr_G(V rho V^dagger)`` for ``V : n -> cod (x) G``."""
    v = np.asarray(v, dtype=complex)
    if v.shape[0] != cod_dim * discard_dim:
        raise QuantumError(
            f"isometry codomain has dimension {v.shape[0]}, expected {cod_dim}*{discard_dim}"
        )
    n = v.shape[1]
    return Channel(n, v.shape[0] - n, complete_isometry(v), discard_dim)


def apply_channel(channel: Channel, rho) -> np.ndarray:
    rho = as_density(rho)
    if rho.shape[0] != channel.dom_dim:
        raise QuantumError(f"state has dimension {rho.shape[0]}, channel expects {channel.dom_dim}")
    return channel(rho)


def lift_channel(
    u: Comb, dom: ValueType, hidden: ValueType, cod: ValueType, garbage: ValueType
) -> Channel:
    """Channel of ``u : dom + hidden <-> cod * garbage`` with both hidden parts hidden."""
    v = iso_lift(u, dom, hidden, Prod(cod, garbage))
    return chan_lift(v, size(cod), size(garbage))


def hide_channel(t: HideTerm) -> Channel:
    """Quantum reading of a classical hiding term."""
    return lift_channel(t.body.body, t.dom, t.body.hidden, t.cod, t.garbage)


def measure(b: ValueType) -> Channel:
    """Computational-basis measurement ``clone >>> fst`` on ``b``."""
    return hide_channel(measure_term(b))


def born_probabilities(rho) -> np.ndarray:
    """Outcome probabilities of measuring ``rho`` in the computational basis."""
    rho = as_density(rho)
    out = measure_dim(rho.shape[0])(rho)
    return np.real(np.diag(out))


def measure_dim(n: int) -> Channel:
    return measure(nat_type(n))


def channels_equal(a: Channel, b: Channel, tol: float = TOL) -> bool:
    if (a.dom_dim, a.cod_dim) != (b.dom_dim, b.cod_dim):
        return False
    return bool(np.allclose(a.choi(), b.choi(), atol=tol))


# -- pipelines and Stinespring normal form ---------------------------------------


@dataclass(frozen=True)
class UnitaryStage:
    matrix: np.ndarray


@dataclass(frozen=True)
class PrepareStage:
    """Pad the space with ``extra`` dimensions initialised to zero amplitude."""

    extra: int


@dataclass(frozen=True)
class DiscardStage:
    """Trace out the trailing tensor factor of dimension ``garbage``."""

    garbage: int


@dataclass(frozen=True)
class IsometryStage:
    matrix: np.ndarray


Stage = Union[UnitaryStage, PrepareStage, DiscardStage, IsometryStage, Channel]


def _stage_dilation(stage: Stage, dim: int) -> tuple[np.ndarray, int]:
    # (isometry dim -> out * garbage, garbage)
    if isinstance(stage, UnitaryStage):
        m = np.asarray(stage.matrix, dtype=complex)
        if m.shape != (dim, dim) or not is_unitary(m):
            raise QuantumError(f"unitary stage must be a {dim}x{dim} unitary")
        return m, 1
    if isinstance(stage, IsometryStage):
        m = np.asarray(stage.matrix, dtype=complex)
        if m.shape[1] != dim or not is_isometry(m):
            raise QuantumError(f"isometry stage must have {dim} columns")
        return m, 1
    if isinstance(stage, PrepareStage):
        return np.eye(dim + stage.extra, dim, dtype=complex), 1
    if isinstance(stage, DiscardStage):
        if stage.garbage <= 0 or dim % stage.garbage:
            raise QuantumError(f"cannot discard a factor of {stage.garbage} from dimension {dim}")
        return np.eye(dim, dtype=complex), stage.garbage
    if isinstance(stage, Channel):
        if stage.dom_dim != dim:
            raise QuantumError(f"channel stage expects dimension {stage.dom_dim}, got {dim}")
        return stage.isometry, stage.discard_dim
    raise TypeError(f"unknown stage {stage!r}")


def stinespring_normalize(stages: Sequence[Stage], dom_dim: int) -> Channel:
    """Collapse a pipeline into one (prepare, unitary, discard) triple."""
    v = np.eye(dom_dim, dtype=complex)
    garbage = 1
    dim = dom_dim
    for stage in stages:
        w, g = _stage_dilation(stage, dim)
        # existing garbage stays the innermost factor: out (x) g (x) garbage
        v = np.kron(w, np.eye(garbage)) @ v
        dim = w.shape[0] // g
        garbage *= g
    return chan_lift(v, dim, garbage)
