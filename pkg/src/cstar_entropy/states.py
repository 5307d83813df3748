"""States over a block algebra and their unique in-algebra density representatives.

A state is a positive normalized linear functional on the algebra.  On a
finite-dimensional embedded algebra every state is represented by exactly one
density matrix that itself belongs to the algebra; that representative has
the canonical form ``(+)_i p_i (rho_i (x) I_{m_i} / m_i)`` from which purity,
entropy and decompositions are read off.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ._linalg import default_tol, frob, hermitize
from .algebra import (
    AlgebraElement,
    BlockStructure,
    embedded_standard_basis,
    structure_projection,
)
from .errors import InternalError, NotAStateError, ValidationError


def _frozen(arr: np.ndarray) -> np.ndarray:
    out = np.array(arr, dtype=complex, copy=True)
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class DensityMatrix:
    """A Hermitian, positive semidefinite, trace-one matrix."""

    matrix: np.ndarray

    def __post_init__(self):
        mat = np.asarray(self.matrix, dtype=complex)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise ValidationError("density matrix must be square")
        tol = default_tol(mat.shape[0])
        if frob(mat - mat.conj().T) > tol * max(1.0, frob(mat)) * 10:
            raise ValidationError("density matrix is not Hermitian")
        eigs = np.linalg.eigvalsh(hermitize(mat))
        if eigs[0] < -tol * 10:
            raise ValidationError(f"density matrix has negative eigenvalue {eigs[0]:.3e}")
        tr = float(np.trace(mat).real)
        if abs(tr - 1.0) > tol * 10:
            raise ValidationError(f"density matrix has trace {tr!r}, expected 1")
        object.__setattr__(self, "matrix", _frozen(mat))

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


def _as_matrix(rho) -> np.ndarray:
    return rho.matrix if isinstance(rho, DensityMatrix) else np.asarray(rho, dtype=complex)


@dataclass(frozen=True)
class StateFunctional:
    """A state given by its values on the matrix-unit basis of the algebra.

    ``block_values[i][a, b]`` is the value on the (a, b) matrix unit of block
    i.  Normalization (value 1 on the identity) is enforced on construction;
    positivity is checked through the representative density matrix.
    """

    structure: BlockStructure
    block_values: tuple[np.ndarray, ...]

    def __post_init__(self):
        if len(self.block_values) != self.structure.num_blocks:
            raise ValidationError("one value matrix per block required")
        values = []
        unit = 0.0
        for (n, _), v in zip(self.structure.blocks, self.block_values):
            arr = np.asarray(v, dtype=complex)
            if arr.shape != (n, n):
                raise ValidationError("value matrix shape does not match block size")
            unit += np.trace(arr)
            values.append(_frozen(arr))
        tol = default_tol(self.structure.ambient_dim)
        if abs(unit - 1.0) > tol * 100:
            raise NotAStateError(f"functional is not normalized: value {unit!r} on the identity")
        object.__setattr__(self, "block_values", tuple(values))

    def expect(self, a: AlgebraElement) -> complex:
        """Value of the functional on an algebra element."""
        if a.structure.blocks != self.structure.blocks:
            raise ValidationError("element belongs to a different block structure")
        return complex(sum(np.sum(part * v) for part, v in zip(a.parts, self.block_values)))

    def values(self) -> np.ndarray:
        """Values on the standard basis, flattened in block/row-major order."""
        return np.concatenate([v.reshape(-1) for v in self.block_values])

    @classmethod
    def from_canonical(cls, structure: BlockStructure, p: Sequence[float],
                       rhos: Sequence[np.ndarray | None]) -> "StateFunctional":
        """Build from sector weights and per-block density matrices.

        Blocks with zero weight take a None placeholder.
        """
        p = np.asarray(p, dtype=float)
        if p.shape != (structure.num_blocks,) or len(rhos) != structure.num_blocks:
            raise ValidationError("weights and block states must match the block count")
        if np.any(p < -1e-12) or abs(p.sum() - 1.0) > 1e-9:
            raise NotAStateError("sector weights must form a probability vector")
        values = []
        for (n, _), w, rho in zip(structure.blocks, p, rhos):
            if w <= 0 or rho is None:
                values.append(np.zeros((n, n)))
                continue
            rho = np.asarray(rho, dtype=complex)
            if rho.shape != (n, n):
                raise ValidationError("block state shape does not match block size")
            # value on the (a, b) unit is w * rho[b, a]
            values.append(w * rho.T)
        return cls(structure, tuple(values))


def _values_from_ambient(rho_mat: np.ndarray, structure: BlockStructure) -> tuple[np.ndarray, ...]:
    values = []
    for sl, (n, m) in zip(structure.ambient_slices(), structure.blocks):
        block = rho_mat[sl, sl].reshape(n, m, n, m)
        traced = np.einsum("ajbj->ab", block)
        # value on unit E_ab is Tr(rho (E_ab (x) I_m)) = traced[b, a]
        values.append(traced.T)
    return tuple(values)


def state_from_density(rho, structure: BlockStructure, tol: float | None = None) -> StateFunctional:
    """The functional A -> Tr(rho embed(A)) induced by an ambient density matrix.

    Density matrices that agree on the embedded algebra give the same
    functional, so information outside the algebra is deliberately lost here.
    """
    rho = rho if isinstance(rho, DensityMatrix) else DensityMatrix(rho)
    if rho.dim != structure.ambient_dim:
        raise ValidationError(
            f"density matrix dimension {rho.dim} does not match ambient {structure.ambient_dim}")
    return StateFunctional(structure, _values_from_ambient(rho.matrix, structure))


def riesz_representative(basis_mats: Sequence[np.ndarray], values: Sequence[complex]) -> np.ndarray:
    """Solve the Gram system for the element representing a functional.

    Given matrices B_k spanning a subspace and target values f(B_k), returns
    the unique X in the span with Tr(X' B_k) = f(B_k) for all k (X' the
    adjoint), Hermitized.  Raises if the basis is numerically dependent.
    """
    mats = np.stack([np.asarray(b, dtype=complex) for b in basis_mats])
    vals = np.asarray(values, dtype=complex)
    if vals.shape != (len(mats),):
        raise ValidationError("one value per basis element required")
    gram = np.einsum("kab,lab->kl", mats.conj(), mats)
    cond = np.linalg.cond(gram)
    if not np.isfinite(cond) or cond > 1e12:
        raise InternalError("Gram system is numerically singular; basis not independent")
    coeffs = np.linalg.solve(gram, vals.conj())
    return hermitize(np.tensordot(coeffs, mats, axes=1))


def representative_density(omega: StateFunctional, structure: BlockStructure,
                           tol: float | None = None) -> DensityMatrix:
    """The unique density matrix inside the algebra reproducing the functional."""
    if structure.blocks != omega.structure.blocks:
        raise ValidationError("state and structure do not match")
    tol = default_tol(structure.ambient_dim) if tol is None else tol
    basis = embedded_standard_basis(structure)
    rho = riesz_representative(basis, omega.values())
    eigs = np.linalg.eigvalsh(rho)
    if eigs[0] < -tol * 10:
        raise NotAStateError(
            f"functional is not positive: representative has eigenvalue {eigs[0]:.3e}")
    tr = float(np.trace(rho).real)
    if abs(tr - 1.0) > tol * 100:
        raise NotAStateError(f"functional is not normalized: representative trace {tr!r}")
    # clip eigensolver noise so downstream validation sees an exact state
    w, v = np.linalg.eigh(rho)
    w = np.clip(w, 0.0, None)
    rho = (v * (w / w.sum())) @ v.conj().T
    return DensityMatrix(rho)


def state_from_values(structure: BlockStructure, basis_mats: Sequence[np.ndarray],
                      values: Sequence[complex], tol: float | None = None) -> StateFunctional:
    """Build a state from its values on a declared basis of the embedded algebra."""
    rho = riesz_representative(basis_mats, values)
    _, res = structure_projection(rho, structure)
    tol = default_tol(structure.ambient_dim) if tol is None else tol
    if res > max(tol * 100, 1e-7):
        raise ValidationError(
            f"declared basis does not lie in the embedded algebra (residual {res:.3e})")
    eigs = np.linalg.eigvalsh(rho)
    if eigs[0] < -tol * 10:
        raise NotAStateError(
            f"functional is not positive: representative has eigenvalue {eigs[0]:.3e}")
    return StateFunctional(structure, _values_from_ambient(rho, structure))


def canonical_form(rho_omega, structure: BlockStructure,
                   tol: float | None = None) -> tuple[np.ndarray, list[np.ndarray | None]]:
    """Split an in-algebra density matrix into sector weights and block states.

    Returns ``(p, rhos)`` with p_i the trace carried by block i and rhos[i]
    the normalized n_i x n_i density matrix (None when p_i is numerically
    zero).  The input must lie in the embedded algebra.
    """
    mat = _as_matrix(rho_omega)
    if not isinstance(rho_omega, DensityMatrix):
        DensityMatrix(mat)  # validate
    tol = default_tol(structure.ambient_dim) if tol is None else tol
    proj, res = structure_projection(mat, structure)
    if res > max(tol * 100, 1e-7):
        raise ValidationError(f"matrix is outside the algebra span (projection residual {res:.3e})")
    p = np.zeros(structure.num_blocks)
    rhos: list[np.ndarray | None] = []
    for i, (sl, (n, m)) in enumerate(zip(structure.ambient_slices(), structure.blocks)):
        block = proj[sl, sl].reshape(n, m, n, m)
        x = np.einsum("ajbj->ab", block)
        weight = float(np.trace(x).real)
        if weight <= tol:
            p[i] = 0.0
            rhos.append(None)
            continue
        p[i] = weight
        rhos.append(hermitize(x / weight))
    p = p / p.sum()
    return p, rhos


def is_pure(omega: StateFunctional, structure: BlockStructure, tol: float | None = None) -> bool:
    """True iff exactly one sector carries weight and its block state has rank one."""
    tol = default_tol(structure.ambient_dim) if tol is None else tol
    rho = representative_density(omega, structure, tol)
    p, rhos = canonical_form(rho, structure, tol)
    active = [i for i, w in enumerate(p) if w > tol]
    if len(active) != 1:
        return False
    eigs = np.linalg.eigvalsh(rhos[active[0]])
    return bool(eigs[-2] < tol * 100) if eigs.size > 1 else True


def convex_combine(states: Sequence[StateFunctional], weights: Sequence[float]) -> StateFunctional:
    """Value-wise mixture of states over one algebra."""
    if not states:
        raise ValidationError("need at least one state")
    w = np.asarray(weights, dtype=float)
    if w.shape != (len(states),) or np.any(w < -1e-12) or abs(w.sum() - 1.0) > 1e-9:
        raise ValidationError("weights must form a probability vector matching the states")
    structure = states[0].structure
    for s in states[1:]:
        if s.structure.blocks != structure.blocks:
            raise ValidationError("states belong to different block structures")
    values = []
    for i, (n, _) in enumerate(structure.blocks):
        acc = np.zeros((n, n), dtype=complex)
        for wk, s in zip(w, states):
            acc += wk * s.block_values[i]
        values.append(acc)
    return StateFunctional(structure, tuple(values))


@dataclass(frozen=True)
class Decomposition:
    """Convex decomposition of a state into pure states.

    Each component is (weight, block index, unit vector in C^{n_i}); the pure
    state it stands for is the embedded ``|phi><phi| (x) I_m / m`` on its
    block.
    """

    structure: BlockStructure
    components: tuple[tuple[float, int, np.ndarray], ...]

    def __post_init__(self):
        comps = []
        total = 0.0
        for w, i, phi in self.components:
            w = float(w)
            i = int(i)
            if w <= 0:
                raise ValidationError("component weights must be positive")
            if not 0 <= i < self.structure.num_blocks:
                raise ValidationError(f"block index {i} out of range")
            vec = np.asarray(phi, dtype=complex)
            n = self.structure.blocks[i][0]
            if vec.shape != (n,):
                raise ValidationError("component vector does not match its block dimension")
            nrm = float(np.linalg.norm(vec))
            if abs(nrm - 1.0) > 1e-8:
                raise ValidationError(f"component vector norm {nrm!r} is not 1")
            total += w
            comps.append((w, i, _frozen(vec)))
        if not comps:
            raise ValidationError("a decomposition needs at least one component")
        if abs(total - 1.0) > 1e-8:
            raise ValidationError(f"weights sum to {total!r}, expected 1")
        object.__setattr__(self, "components", tuple(comps))

    def weights(self) -> np.ndarray:
        return np.array([w for w, _, _ in self.components])

    def density(self) -> np.ndarray:
        """Ambient density matrix reconstructed from the components."""
        d = self.structure.ambient_dim
        out = np.zeros((d, d), dtype=complex)
        slices = self.structure.ambient_slices()
        for w, i, phi in self.components:
            _, m = self.structure.blocks[i]
            pure = np.outer(phi, phi.conj())
            out[slices[i], slices[i]] += w * np.kron(pure, np.eye(m)) / m
        return out

    def state(self) -> StateFunctional:
        """The mixed state this decomposition prepares."""
        return state_from_density(DensityMatrix(self.density()), self.structure)
