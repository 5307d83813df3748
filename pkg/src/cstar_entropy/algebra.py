"""Finite-dimensional operator algebras as block structures.

A finite-dimensional *-algebra of matrices is, up to a unitary change of
basis, a direct sum of full matrix blocks M_n repeated with multiplicities:
``(+)_i M_{n_i} (x) I_{m_i}``.  This module constructs such algebras
abstractly, embeds them as concrete matrices, closes generated *-algebras
numerically, computes commutants, and recovers the block structure (and the
change-of-basis unitary) of a numerically given matrix *-algebra.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ._linalg import (
    complex_gaussian,
    eigh_clusters,
    frob,
    hermitize,
    null_space_rows,
    orthonormal_extend,
    rng_stream,
)
from .errors import DecompositionError, InternalError, ValidationError


def _frozen(arr: np.ndarray) -> np.ndarray:
    out = np.array(arr, dtype=complex, copy=True)
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class BlockStructure:
    """Ordered list of blocks (n, m): block dimension n with multiplicity m.

    The ambient Hilbert space is ``(+)_i C^{n_i} (x) C^{m_i}`` with the
    algebra acting as ``X_i (x) I_{m_i}`` on block i.
    """

    blocks: tuple[tuple[int, int], ...]

    def __post_init__(self):
        blocks = tuple((int(n), int(m)) for n, m in self.blocks)
        if not blocks:
            raise ValidationError("a block structure needs at least one block")
        for n, m in blocks:
            if n < 1 or m < 1:
                raise ValidationError(f"block dimensions must be positive, got ({n}, {m})")
        object.__setattr__(self, "blocks", blocks)

    @property
    def num_blocks(self) -> int:
        return len(self.blocks)

    @property
    def ambient_dim(self) -> int:
        return sum(n * m for n, m in self.blocks)

    @property
    def algebra_dim(self) -> int:
        return sum(n * n for n, m in self.blocks)

    def multiplicity_free(self) -> "BlockStructure":
        """The companion structure with every multiplicity set to 1."""
        return BlockStructure(tuple((n, 1) for n, _ in self.blocks))

    def ambient_slices(self) -> list[slice]:
        """Slice of the ambient space occupied by each block."""
        out, off = [], 0
        for n, m in self.blocks:
            out.append(slice(off, off + n * m))
            off += n * m
        return out


def make_algebra(blocks: Sequence[tuple[int, int]]) -> BlockStructure:
    """Validate and build a BlockStructure from (n, m) pairs."""
    return BlockStructure(tuple(tuple(b) for b in blocks))


@dataclass(frozen=True)
class AlgebraElement:
    """One complex n_i x n_i matrix per block of a BlockStructure."""

    structure: BlockStructure
    parts: tuple[np.ndarray, ...]

    def __post_init__(self):
        if len(self.parts) != self.structure.num_blocks:
            raise ValidationError("one part per block required")
        parts = []
        for (n, _), part in zip(self.structure.blocks, self.parts):
            arr = np.asarray(part, dtype=complex)
            if arr.shape != (n, n):
                raise ValidationError(f"part of shape {arr.shape} does not match block size {n}")
            parts.append(_frozen(arr))
        object.__setattr__(self, "parts", tuple(parts))

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._check_same(other)
        return AlgebraElement(self.structure, tuple(a + b for a, b in zip(self.parts, other.parts)))

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._check_same(other)
        return AlgebraElement(self.structure, tuple(a - b for a, b in zip(self.parts, other.parts)))

    def __mul__(self, scalar: complex) -> "AlgebraElement":
        return AlgebraElement(self.structure, tuple(scalar * a for a in self.parts))

    __rmul__ = __mul__

    def __matmul__(self, other: "AlgebraElement") -> "AlgebraElement":
        """Algebra product, computed blockwise."""
        self._check_same(other)
        return AlgebraElement(self.structure, tuple(a @ b for a, b in zip(self.parts, other.parts)))

    def adjoint(self) -> "AlgebraElement":
        return AlgebraElement(self.structure, tuple(a.conj().T for a in self.parts))

    def is_selfadjoint(self, tol: float = 1e-9) -> bool:
        return all(frob(a - a.conj().T) <= tol * max(1.0, frob(a)) for a in self.parts)

    def _check_same(self, other: "AlgebraElement") -> None:
        if other.structure.blocks != self.structure.blocks:
            raise ValidationError("elements belong to different block structures")


def identity(structure: BlockStructure) -> AlgebraElement:
    return AlgebraElement(structure, tuple(np.eye(n) for n, _ in structure.blocks))


def random_element(structure: BlockStructure, rng: np.random.Generator,
                   hermitian: bool = False) -> AlgebraElement:
    parts = []
    for n, _ in structure.blocks:
        x = complex_gaussian((n, n), rng)
        parts.append(hermitize(x) if hermitian else x)
    return AlgebraElement(structure, tuple(parts))


def embed(a: AlgebraElement) -> np.ndarray:
    """Embed an element as the block matrix ``(+)_i X_i (x) I_{m_i}``."""
    d = a.structure.ambient_dim
    out = np.zeros((d, d), dtype=complex)
    for sl, (part, (n, m)) in zip(a.structure.ambient_slices(),
                                  zip(a.parts, a.structure.blocks)):
        out[sl, sl] = np.kron(part, np.eye(m))
    return out


def standard_basis(structure: BlockStructure) -> list[AlgebraElement]:
    """Matrix-unit basis of the abstract algebra, block by block, row-major."""
    out = []
    for i, (n, _) in enumerate(structure.blocks):
        for a in range(n):
            for b in range(n):
                parts = [np.zeros((nn, nn)) for nn, _ in structure.blocks]
                parts[i] = np.zeros((n, n))
                parts[i][a, b] = 1.0
                out.append(AlgebraElement(structure, tuple(parts)))
    return out


def embedded_standard_basis(structure: BlockStructure) -> np.ndarray:
    """Embedded matrix units, shape (algebra_dim, d, d)."""
    d = structure.ambient_dim
    out = np.zeros((structure.algebra_dim, d, d), dtype=complex)
    k = 0
    for sl, (n, m) in zip(structure.ambient_slices(), structure.blocks):
        eye_m = np.eye(m)
        for a in range(n):
            for b in range(n):
                unit = np.zeros((n, n))
                unit[a, b] = 1.0
                out[k, sl, sl] = np.kron(unit, eye_m)
                k += 1
    return out


def structure_projection(mat: np.ndarray, structure: BlockStructure) -> tuple[np.ndarray, float]:
    """Orthogonal projection of a matrix onto the embedded algebra.

    Returns the nearest matrix of the form ``(+)_i X_i (x) I_{m_i}`` in the
    Hilbert-Schmidt sense, together with the Frobenius residual.
    """
    mat = np.asarray(mat, dtype=complex)
    d = structure.ambient_dim
    if mat.shape != (d, d):
        raise ValidationError(f"matrix shape {mat.shape} does not match ambient dimension {d}")
    proj = np.zeros_like(mat)
    for sl, (n, m) in zip(structure.ambient_slices(), structure.blocks):
        block = mat[sl, sl].reshape(n, m, n, m)
        x = np.einsum("ajbj->ab", block) / m
        proj[sl, sl] = np.kron(x, np.eye(m))
    return proj, frob(mat - proj)


def block_restrictions(mat: np.ndarray, structure: BlockStructure) -> list[np.ndarray]:
    """The n_i x n_i compressions X_i of a matrix in the embedded algebra."""
    mat = np.asarray(mat, dtype=complex)
    out = []
    for sl, (n, m) in zip(structure.ambient_slices(), structure.blocks):
        block = mat[sl, sl].reshape(n, m, n, m)
        out.append(np.einsum("ajbj->ab", block) / m)
    return out


@dataclass(frozen=True)
class SubalgebraBasis:
    """Hilbert-Schmidt-orthonormal basis of a matrix *-algebra on C^d.

    ``discovered`` optionally carries the block structure and change-of-basis
    unitary found by :func:`block_decompose`.
    """

    ambient_dim: int
    basis: tuple[np.ndarray, ...]
    discovered: tuple[BlockStructure, np.ndarray] | None = None

    def __post_init__(self):
        d = int(self.ambient_dim)
        mats = []
        for b in self.basis:
            arr = np.asarray(b, dtype=complex)
            if arr.shape != (d, d):
                raise ValidationError("basis matrices must be square of the ambient dimension")
            mats.append(_frozen(arr))
        if not mats:
            raise ValidationError("a subalgebra basis cannot be empty")
        rows = np.stack([m.reshape(-1) for m in mats])
        gram = rows @ rows.conj().T
        if frob(gram - np.eye(len(mats))) > 1e-7 * len(mats):
            raise ValidationError("basis is not orthonormal under the Hilbert-Schmidt inner product")
        object.__setattr__(self, "ambient_dim", d)
        object.__setattr__(self, "basis", tuple(mats))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def span_projector(self) -> np.ndarray:
        """Projector onto the span, as a d^2 x d^2 matrix on vectorized space."""
        rows = np.stack([m.reshape(-1) for m in self.basis])
        return rows.conj().T @ rows

    def closure_defect(self) -> float:
        """Largest residual of products and adjoints of basis elements against the span."""
        rows = np.stack([m.reshape(-1) for m in self.basis])
        worst = 0.0
        for a in self.basis:
            cand = [a.conj().T] + [a @ b for b in self.basis]
            cmat = np.stack([c.reshape(-1) for c in cand])
            res = cmat - (cmat @ rows.conj().T) @ rows
            worst = max(worst, float(np.max(np.linalg.norm(res, axis=1))))
        return worst


def generate_subalgebra(generators: Sequence[np.ndarray], tol: float = 1e-9) -> SubalgebraBasis:
    """Orthonormal basis of the smallest unital *-algebra containing the generators.

    Alternates two steps until the span stabilizes: adjoin adjoints and all
    pairwise products, then re-orthonormalize with a rank cutoff of
    ``tol * (largest generator norm)``.
    """
    if not len(generators):
        raise ValidationError("generator set must be nonempty")
    mats = [np.asarray(g, dtype=complex) for g in generators]
    d = mats[0].shape[0]
    for g in mats:
        if g.ndim != 2 or g.shape != (d, d):
            raise ValidationError("generators must be square matrices of equal size")
    cutoff = tol * max(1.0, max(frob(g) for g in mats))

    seed = [np.eye(d, dtype=complex)] + mats + [g.conj().T for g in mats]
    basis = orthonormal_extend(np.zeros((0, d * d), dtype=complex),
                               np.stack([s.reshape(-1) for s in seed]), cutoff)
    fresh = basis
    rounds = 0
    while fresh.shape[0]:
        rounds += 1
        if rounds > d * d:
            raise InternalError("subalgebra closure failed to stabilize; check tol")
        all_mats = basis.reshape(-1, d, d)
        new_mats = fresh.reshape(-1, d, d)
        prods_a = np.einsum("aij,bjk->abik", new_mats, all_mats).reshape(-1, d * d)
        prods_b = np.einsum("aij,bjk->abik", all_mats, new_mats).reshape(-1, d * d)
        adjs = np.conj(np.swapaxes(new_mats, 1, 2)).reshape(-1, d * d)
        extended = orthonormal_extend(basis, np.concatenate([prods_a, prods_b, adjs]), cutoff)
        fresh = extended[basis.shape[0]:]
        basis = extended
    return SubalgebraBasis(d, tuple(basis.reshape(-1, d, d)))


def commutant(sub: SubalgebraBasis, tol: float = 1e-9) -> SubalgebraBasis:
    """Orthonormal basis of {X : X B = B X for every basis element B}.

    Solves the stacked commutator map by SVD; the result is itself a
    *-algebra (the input span need not even be one).
    """
    d = sub.ambient_dim
    eye = np.eye(d)
    stacked = np.concatenate(
        [np.kron(b, eye) - np.kron(eye, b.T) for b in sub.basis], axis=0)
    rows = null_space_rows(stacked, max(tol, 1e-12))
    if rows.shape[0] == 0:
        raise InternalError("commutant is empty; the identity should always commute")
    return SubalgebraBasis(d, tuple(rows.reshape(-1, d, d)))


class _Retry(Exception):
    def __init__(self, residual=None):
        self.residual = residual


def _combo(mats: np.ndarray, rng: np.random.Generator, hermitian: bool) -> np.ndarray:
    coeffs = complex_gaussian(len(mats), rng)
    x = np.tensordot(coeffs, mats, axes=1)
    return hermitize(x) if hermitian else x


def _identity_in_span(bmats: np.ndarray, d: int, tol: float) -> bool:
    rows = bmats.reshape(len(bmats), -1)
    vec_id = np.eye(d, dtype=complex).reshape(-1)
    res = vec_id - (rows.conj() @ vec_id) @ rows
    return float(np.linalg.norm(res)) <= max(tol, 1e-9) * 10 * np.sqrt(d)


def _split_attempt(bmats: np.ndarray, d: int, tol: float,
                   rng: np.random.Generator) -> tuple[BlockStructure, np.ndarray]:
    num = len(bmats)

    # Center of the algebra: elements of the span commuting with two generic
    # self-adjoint elements.  Generically that intersection is exactly the
    # center; any unlucky draw is caught by the verification below.
    g1 = _combo(bmats, rng, hermitian=True)
    g2 = _combo(bmats, rng, hermitian=True)
    constraint_cols = []
    for g in (g1, g2):
        comm = bmats @ g - g @ bmats
        constraint_cols.append(comm.reshape(num, d * d).T)
    center_coeffs = null_space_rows(np.concatenate(constraint_cols, axis=0), max(tol, 1e-12))
    n_center = center_coeffs.shape[0]
    if n_center == 0:
        raise _Retry()
    center_mats = np.tensordot(center_coeffs, bmats, axes=1)

    # A random self-adjoint center element is a distinct scalar on each
    # central sector; its eigenvalue clusters are the sectors.
    z = _combo(center_mats, rng, hermitian=True)
    clusters = eigh_clusters(z, tol)
    if len(clusters) != n_center:
        raise _Retry()

    sectors = []
    for z_value, q in clusters:
        ds = q.shape[1]
        comp = np.einsum("pi,kpq,qj->kij", q.conj(), bmats, q)
        for _ in range(4):
            # A generic self-adjoint element of the restricted algebra looks
            # like X (x) I_m, so each of its n eigenvalues repeats m times.
            g = _combo(comp, rng, hermitian=True)
            eig_groups = eigh_clusters(g, tol)
            dims = [u.shape[1] for _, u in eig_groups]
            n_s, m_s = len(eig_groups), dims[0]
            if any(dd != m_s for dd in dims) or n_s * m_s != ds:
                continue
            # Align the multiplicity spaces: compressions of a generic algebra
            # element between eigenspaces are proportional to unitaries.
            b = _combo(comp, rng, hermitian=False)
            u_first = eig_groups[0][1]
            cols, ok = [], True
            for _, u_a in eig_groups:
                r_a = u_a.conj().T @ b @ u_first
                scale = np.sqrt(max(float(np.trace(r_a.conj().T @ r_a).real), 0.0) / m_s)
                if scale < 1e-8:
                    ok = False
                    break
                t_a = r_a / scale
                if frob(t_a.conj().T @ t_a - np.eye(m_s)) > 1e-6:
                    ok = False
                    break
                cols.append(u_a @ t_a)
            if not ok:
                continue
            sectors.append((n_s, m_s, z_value, q @ np.concatenate(cols, axis=1)))
            break
        else:
            raise _Retry()

    # Deterministic output order: big blocks first, eigenvalue fingerprint as
    # the tiebreak (fixed for a fixed seed).
    sectors.sort(key=lambda s: (-s[0], -s[1], s[2]))
    blocks = tuple((n, m) for n, m, _, _ in sectors)
    if sum(n * n for n, m in blocks) != num or sum(n * m for n, m in blocks) != d:
        raise _Retry()
    w = np.concatenate([cols for *_, cols in sectors], axis=1)
    if frob(w.conj().T @ w - np.eye(d)) > 1e-8 * d:
        raise _Retry()

    structure = BlockStructure(blocks)
    residual = 0.0
    for bk in bmats:
        _, res = structure_projection(w.conj().T @ bk @ w, structure)
        residual = max(residual, res)
    if residual > max(1e-6, 100.0 * tol):
        raise _Retry(residual)
    return structure, w


def block_decompose(sub: SubalgebraBasis, tol: float = 1e-9,
                    seed: int = 0) -> tuple[BlockStructure, np.ndarray]:
    """Recover the block structure of a matrix *-algebra.

    Returns ``(structure, W)`` with W unitary such that conjugating the span
    by W gives ``(+)_i M_{n_i} (x) I_{m_i}``.  The algorithm splits central
    sectors by eigenvalue clustering of a random center element and resolves
    multiplicities inside each sector from the eigenspaces of a random
    restricted algebra element; degenerate random draws are retried a bounded
    number of times, and the result is verified against the dimension laws
    and the projection residual before being returned.
    """
    d = sub.ambient_dim
    bmats = np.stack(sub.basis)
    if not _identity_in_span(bmats, d, tol):
        raise ValidationError("subalgebra must contain the identity (unital closure)")
    last_residual = None
    for attempt in range(8):
        rng = rng_stream(seed, 2, attempt)
        try:
            return _split_attempt(bmats, d, tol, rng)
        except _Retry as sig:
            if sig.residual is not None:
                last_residual = sig.residual
    raise DecompositionError(
        "block decomposition failed verification after retries", residual=last_residual)
