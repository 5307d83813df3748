"""Shannon entropy, von Neumann entropy, and the closed-form state entropy.

The entropy of a state over a block algebra decomposes as the mixing entropy
of the sector weights plus the average von Neumann entropy of the block
states; on multiplicity-free structures this equals the von Neumann entropy
of the representative density matrix, and in general the two differ by the
multiplicity term ``sum_i p_i log m_i``.  All entropies are in nats.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._linalg import default_tol
from .algebra import BlockStructure
from .errors import ValidationError
from .states import (
    Decomposition,
    DensityMatrix,
    StateFunctional,
    canonical_form,
    representative_density,
)


def _entropy_of(p: np.ndarray) -> float:
    """-sum p log p over the positive entries (0 log 0 = 0)."""
    pos = p[p > 0.0]
    return float(-(pos * np.log(pos)).sum())


def shannon(p, tol: float = 1e-9) -> float:
    """Shannon entropy of a probability vector, in nats.

    Entries within tol below zero are clamped and the vector renormalized;
    anything worse is a validation error.
    """
    arr = np.asarray(p, dtype=float)
    if arr.ndim != 1 or arr.size == 0:
        raise ValidationError("probability vector must be one-dimensional and nonempty")
    if np.any(arr < -tol):
        raise ValidationError(f"negative probability {arr.min()!r}")
    if abs(arr.sum() - 1.0) > max(tol, 1e-12) * arr.size:
        raise ValidationError(f"probabilities sum to {arr.sum()!r}, expected 1")
    arr = np.clip(arr, 0.0, None)
    return _entropy_of(arr / arr.sum())


def von_neumann(rho, tol: float | None = None) -> float:
    """Von Neumann entropy: the Shannon entropy of the spectrum, in nats."""
    rho = rho if isinstance(rho, DensityMatrix) else DensityMatrix(rho)
    tol = default_tol(rho.dim) if tol is None else tol
    eigs = np.linalg.eigvalsh(rho.matrix)
    eigs = np.clip(eigs, 0.0, None)
    return _entropy_of(eigs / eigs.sum())


@dataclass(frozen=True)
class EntropyReport:
    """Entropy of a state together with its constituents.

    state_entropy = sector_entropy + mean_block_entropy, and the von Neumann
    entropy of the representative exceeds it by the multiplicity term.
    """

    state_entropy: float
    sector_entropy: float
    mean_block_entropy: float
    vn_of_representative: float
    multiplicity_term: float


def state_entropy(omega: StateFunctional, structure: BlockStructure,
                  tol: float | None = None) -> EntropyReport:
    """Entropy of a state from the canonical form of its representative."""
    tol = default_tol(structure.ambient_dim) if tol is None else tol
    rho = representative_density(omega, structure, tol)
    p, rhos = canonical_form(rho, structure, tol)
    sector = _entropy_of(p)
    mean = 0.0
    mult = 0.0
    for w, block_rho, (_, m) in zip(p, rhos, structure.blocks):
        if w <= tol or block_rho is None:
            continue
        mean += w * von_neumann(DensityMatrix(block_rho), tol)
        mult += w * np.log(m)
    return EntropyReport(
        state_entropy=sector + mean,
        sector_entropy=sector,
        mean_block_entropy=mean,
        vn_of_representative=von_neumann(rho, tol),
        multiplicity_term=mult,
    )


def minimal_decomposition(omega: StateFunctional, structure: BlockStructure,
                          tol: float | None = None) -> Decomposition:
    """The decomposition into pure states attaining the state entropy.

    Weights are ``p_i lambda_j`` with lambda_j the spectrum of the block
    states; the components are the corresponding eigenvectors, one sector at
    a time.
    """
    tol = default_tol(structure.ambient_dim) if tol is None else tol
    rho = representative_density(omega, structure, tol)
    p, rhos = canonical_form(rho, structure, tol)
    comps = []
    for i, (w, block_rho) in enumerate(zip(p, rhos)):
        if w <= tol or block_rho is None:
            continue
        eigs, vecs = np.linalg.eigh(block_rho)
        for lam, vec in zip(eigs[::-1], vecs[:, ::-1].T):
            weight = w * float(lam)
            if weight < 1e-12:
                continue
            comps.append((weight, i, vec / np.linalg.norm(vec)))
    total = sum(w for w, _, _ in comps)
    comps = [(w / total, i, v) for w, i, v in comps]
    return Decomposition(structure, tuple(comps))
