"""Convex decompositions into pure states and the infimum oracle.

Any decomposition of a density matrix into vector states arises from a
unitary mixing of its spectral decomposition; the induced weight vector is a
doubly stochastic image of the spectrum and is therefore majorized by it.
The infimum oracle samples random decompositions of a state, block by block,
to certify numerically that none beats the closed-form entropy.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._linalg import complex_gaussian, default_tol, rng_stream
from .algebra import BlockStructure, make_algebra
from .entropy import minimal_decomposition, shannon
from .errors import ValidationError
from .states import Decomposition, DensityMatrix, StateFunctional, canonical_form, representative_density

__all__ = [
    "Decomposition",
    "MajorizationVerdict",
    "schrodinger_decomposition",
    "doubly_stochastic_from_unitary",
    "majorizes",
    "decomposition_entropy",
    "decomposition_entropy_split",
    "infimum_oracle",
]

_WEIGHT_FLOOR = 1e-12  # components below this are dropped and the rest renormalized


def _check_unitary(u: np.ndarray, tol: float) -> np.ndarray:
    u = np.asarray(u, dtype=complex)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        raise ValidationError("unitary must be a square matrix")
    defect = float(np.linalg.norm(u.conj().T @ u - np.eye(u.shape[0])))
    if defect > tol * max(1.0, np.sqrt(u.shape[0])):
        raise ValidationError(f"matrix is not unitary (defect {defect:.3e})")
    return u


def _spectral(rho_mat: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (descending, clipped at 0) and matching eigenvectors."""
    eigs, vecs = np.linalg.eigh(rho_mat)
    return np.clip(eigs[::-1], 0.0, None), vecs[:, ::-1]


def _mixed_vectors(lam: np.ndarray, psi: np.ndarray, u: np.ndarray):
    """Weights and vectors of the decomposition induced by a unitary.

    ``p_i = sum_j |u_ij|^2 lam_j`` over the retained spectrum, with vectors
    proportional to ``sum_j u_ij sqrt(lam_j) psi_j``.
    """
    rank = int(np.sum(lam > _WEIGHT_FLOOR))
    r = u.shape[0]
    if r < rank:
        raise ValidationError(f"unitary size {r} is below the rank {rank}")
    amp = psi[:, :rank] * np.sqrt(lam[:rank])
    tilde = amp @ u[:, :rank].T
    weights = np.linalg.norm(tilde, axis=0) ** 2
    keep = weights > _WEIGHT_FLOOR
    return weights[keep], tilde[:, keep] / np.sqrt(weights[keep])


def schrodinger_decomposition(rho, u: np.ndarray, tol: float = 1e-8) -> Decomposition:
    """Decomposition of a density matrix induced by a unitary mixing matrix.

    With the identity this is the spectral decomposition; any unitary of size
    at least the rank yields another preparation of the same matrix, with
    weights ``p = |u|^2 lam``.
    """
    rho = rho if isinstance(rho, DensityMatrix) else DensityMatrix(rho)
    u = _check_unitary(u, tol)
    lam, psi = _spectral(rho.matrix)
    weights, vectors = _mixed_vectors(lam, psi, u)
    total = weights.sum()
    structure = make_algebra([(rho.dim, 1)])
    comps = tuple((float(w / total), 0, vectors[:, k]) for k, w in enumerate(weights))
    return Decomposition(structure, comps)


def doubly_stochastic_from_unitary(u: np.ndarray, tol: float = 1e-8) -> np.ndarray:
    """Entrywise squared moduli of a unitary: a doubly stochastic matrix."""
    u = _check_unitary(u, tol)
    return np.abs(u) ** 2


@dataclass(frozen=True)
class MajorizationVerdict:
    """Outcome of comparing two probability vectors in the majorization order."""

    relation: str  # "majorizes" | "majorized" | "equal" | "incomparable"
    partial_sums: tuple[np.ndarray, np.ndarray]


def majorizes(p, q, tol: float = 1e-9) -> MajorizationVerdict:
    """Compare sorted cumulative sums of two probability vectors.

    Shorter vectors are zero-padded.  ``relation`` reports which side
    dominates at every prefix, within tol.
    """
    vecs = []
    for name, v in (("p", p), ("q", q)):
        arr = np.asarray(v, dtype=float)
        if arr.ndim != 1 or arr.size == 0:
            raise ValidationError(f"{name} must be a nonempty vector")
        if np.any(arr < -tol) or abs(arr.sum() - 1.0) > max(tol, 1e-12) * arr.size:
            raise ValidationError(f"{name} is not a probability vector")
        vecs.append(np.clip(arr, 0.0, None))
    size = max(len(vecs[0]), len(vecs[1]))
    padded = [np.pad(v, (0, size - len(v))) for v in vecs]
    cp, cq = (np.cumsum(np.sort(v)[::-1]) for v in padded)
    if np.allclose(cp, cq, atol=tol):
        relation = "equal"
    elif np.all(cp >= cq - tol):
        relation = "majorizes"
    elif np.all(cq >= cp - tol):
        relation = "majorized"
    else:
        relation = "incomparable"
    return MajorizationVerdict(relation, (cp, cq))


def decomposition_entropy(dec: Decomposition) -> float:
    """Shannon entropy of the weight vector of a decomposition."""
    return shannon(dec.weights())


def decomposition_entropy_split(dec: Decomposition) -> tuple[float, float]:
    """Split of the decomposition entropy into sector mixing and within-block parts.

    Returns ``(H(p), sum_i p_i H(v_i))`` where p groups the weights by block;
    the two parts add up to the total entropy.
    """
    by_block: dict[int, list[float]] = {}
    for w, i, _ in dec.components:
        by_block.setdefault(i, []).append(w)
    p = np.array([sum(ws) for ws in by_block.values()])
    sector = float(-(p * np.log(p)).sum())
    within = 0.0
    for ws in by_block.values():
        v = np.array(ws) / sum(ws)
        within += sum(ws) * float(-(v * np.log(v)).sum())
    return sector, within


def _active_blocks(p: np.ndarray, rhos, structure: BlockStructure, tol: float):
    """Spectral data of the blocks that carry weight."""
    active = []
    for i, (w, rho) in enumerate(zip(p, rhos)):
        if w <= tol or rho is None:
            continue
        lam, psi = _spectral(rho)
        active.append((i, structure.blocks[i][0], float(w), lam, psi))
    return active


def _sample_draws(rng: np.random.Generator, active):
    """Sizes and Gaussian matrices for one sample, in fixed block order.

    Kept separate so the batched scan and the single-sample rebuild consume
    the per-sample stream identically.
    """
    draws = []
    for i, n, *_ in active:
        r = int(rng.integers(n, 2 * n + 1))
        draws.append((i, r, complex_gaussian((r, r), rng)))
    return draws


def _phase_fixed_qr(stack: np.ndarray) -> np.ndarray:
    q, r = np.linalg.qr(stack)
    d = np.einsum("...ii->...i", r)
    return q * (d / np.abs(d))[..., None, :]


def _entropy_of_weights(weights: np.ndarray) -> float:
    w = weights[weights > _WEIGHT_FLOOR]
    w = w / w.sum()
    return float(-(w * np.log(w)).sum())


def infimum_oracle(omega: StateFunctional, structure: BlockStructure, samples: int = 1000,
                   seed: int = 0, tol: float | None = None) -> tuple[float, Decomposition]:
    """Randomized search for the lowest-entropy decomposition of a state.

    Sample 0 is always the minimal decomposition, so the reported minimum
    never exceeds the closed-form entropy; samples 1..samples draw per-block
    decomposition sizes in [n_i, 2 n_i] and Haar unitaries, and mix each
    block state accordingly.  Per-sample randomness is derived from
    (seed, sample index), so the result does not depend on evaluation order;
    ties resolve to the lowest sample index.
    """
    if samples < 1:
        raise ValidationError("samples must be at least 1")
    tol = default_tol(structure.ambient_dim) if tol is None else tol
    base = minimal_decomposition(omega, structure, tol)
    best_entropy = _entropy_of_weights(base.weights())
    best_index = 0

    rho = representative_density(omega, structure, tol)
    p, rhos = canonical_form(rho, structure, tol)
    active = _active_blocks(p, rhos, structure, tol)

    chunk_size = 1024
    for chunk_start in range(1, samples + 1, chunk_size):
        indices = range(chunk_start, min(chunk_start + chunk_size, samples + 1))
        per_sample_weights: dict[int, list[np.ndarray]] = {s: [] for s in indices}
        buckets: dict[tuple[int, int], tuple[list[int], list[np.ndarray]]] = {}
        for s in indices:
            rng = rng_stream(seed, 1, s)
            for pos, (i, r, g) in enumerate(_sample_draws(rng, active)):
                owners, mats = buckets.setdefault((pos, r), ([], []))
                owners.append(s)
                mats.append(g)
        for (pos, r), (owners, mats) in buckets.items():
            _, _, w_block, lam, _ = active[pos]
            rank = int(np.sum(lam > _WEIGHT_FLOOR))
            u = _phase_fixed_qr(np.stack(mats))
            probs = np.einsum("sij,j->si", np.abs(u[:, :, :rank]) ** 2, lam[:rank])
            for s, row in zip(owners, probs):
                per_sample_weights[s].append(w_block * row)
        for s in indices:
            h = _entropy_of_weights(np.concatenate(per_sample_weights[s]))
            # strict comparison in ascending order keeps the lowest index on ties
            if h < best_entropy:
                best_entropy, best_index = h, s

    if best_index == 0:
        return best_entropy, base
    return best_entropy, _rebuild_sample(seed, best_index, active, structure)


def _rebuild_sample(seed: int, index: int, active, structure: BlockStructure) -> Decomposition:
    """Recompute one sample fully (with vectors) from its stream."""
    rng = rng_stream(seed, 1, index)
    comps = []
    for pos, (i, r, g) in enumerate(_sample_draws(rng, active)):
        _, _, w_block, lam, psi = active[pos]
        u = _phase_fixed_qr(g)
        weights, vectors = _mixed_vectors(lam, psi, u)
        for k, w in enumerate(weights):
            weight = w_block * float(w)
            if weight > _WEIGHT_FLOOR:
                comps.append((weight, i, vectors[:, k]))
    total = sum(w for w, _, _ in comps)
    return Decomposition(structure, tuple((w / total, i, v) for w, i, v in comps))
