"""Seeded randomness and small dense linear-algebra helpers."""

from __future__ import annotations

import numpy as np


def default_tol(dim: int) -> float:
    """Absolute tolerance for trace/positivity checks; scaled above dimension 64."""
    return 1e-9 if dim <= 64 else 1e-9 * dim / 64.0


def rng_stream(seed: int, *key: int) -> np.random.Generator:
    """Counter-based generator for (seed, key...).

    The seed selects the Philox key and the stream key parts select a
    disjoint counter block, so streams with distinct keys never overlap and
    draws are reproducible regardless of evaluation order.  That is what
    makes sampled results bit-identical under any scheduling.
    """
    if len(key) > 3:
        raise ValueError("at most three stream key parts are supported")
    counter = np.zeros(4, dtype=np.uint64)
    for i, k in enumerate(reversed(key)):
        counter[3 - i] = np.uint64(int(k) & 0xFFFF_FFFF_FFFF_FFFF)
    bitgen = np.random.Philox(key=int(seed) & ((1 << 128) - 1), counter=counter)
    return np.random.Generator(bitgen)


def hermitize(mat: np.ndarray) -> np.ndarray:
    return 0.5 * (mat + mat.conj().T)


def frob(mat: np.ndarray) -> float:
    return float(np.linalg.norm(mat))


def complex_gaussian(shape, rng: np.random.Generator) -> np.ndarray:
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def haar_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed unitary via QR of a complex Gaussian matrix.

    The R-diagonal phase fix makes the distribution exactly Haar and the draw
    a deterministic function of the stream state.
    """
    q, r = np.linalg.qr(complex_gaussian((dim, dim), rng))
    d = np.diag(r)
    return q * (d / np.abs(d))


def random_isometry(rows: int, cols: int, rng: np.random.Generator) -> np.ndarray:
    """rows x cols matrix with orthonormal columns (rows >= cols)."""
    if rows < cols:
        raise ValueError("isometry needs rows >= cols")
    q, r = np.linalg.qr(complex_gaussian((rows, cols), rng))
    d = np.diag(r)
    return q * (d / np.abs(d))


def null_space_rows(mat: np.ndarray, tol: float) -> np.ndarray:
    """Orthonormal rows spanning {x : mat @ x = 0}.

    The rank cutoff is tol relative to the largest singular value.
    """
    mat = np.asarray(mat, dtype=complex)
    if mat.shape[0] < mat.shape[1]:
        # pad so the SVD exposes the full right null space
        pad = np.zeros((mat.shape[1] - mat.shape[0], mat.shape[1]), dtype=complex)
        mat = np.concatenate([mat, pad], axis=0)
    _, s, vh = np.linalg.svd(mat, full_matrices=False)
    cutoff = tol * max(float(s[0]) if s.size else 0.0, 1.0)
    rank = int(np.sum(s > cutoff))
    return vh[rank:].conj()


def orthonormal_extend(basis: np.ndarray, candidates: np.ndarray, cutoff: float) -> np.ndarray:
    """Extend orthonormal rows by modified Gram-Schmidt with column pivoting.

    Candidates whose residual against the current span falls below the
    absolute cutoff are discarded.  Returns the enlarged row basis; the input
    rows come first and are unchanged.
    """
    basis = np.asarray(basis, dtype=complex)
    work = np.asarray(candidates, dtype=complex).copy()
    if basis.size:
        work -= (work @ basis.conj().T) @ basis
    rows = [basis] if basis.size else []
    current = basis
    while work.shape[0]:
        norms = np.linalg.norm(work, axis=1)
        keep = norms > cutoff
        work, norms = work[keep], norms[keep]
        if not work.shape[0]:
            break
        j = int(np.argmax(norms))
        v = work[j]
        # one re-orthogonalization pass against the full basis curbs drift
        if current is not None and current.size:
            v = v - (v @ current.conj().T) @ current
        nv = np.linalg.norm(v)
        if nv <= cutoff:
            work = np.delete(work, j, axis=0)
            continue
        v = v / nv
        rows.append(v[None, :])
        current = np.concatenate(rows, axis=0) if len(rows) > 1 else rows[0]
        work = np.delete(work, j, axis=0)
        work -= np.outer(work @ v.conj(), v)
    if not rows:
        return np.zeros((0, candidates.shape[1]), dtype=complex)
    return np.concatenate(rows, axis=0) if len(rows) > 1 else rows[0]


def eigh_clusters(mat: np.ndarray, rel_tol: float):
    """Eigen-decompose a Hermitian matrix, grouping numerically equal eigenvalues.

    Two adjacent (sorted) eigenvalues belong to one cluster iff their gap is
    below rel_tol times the spectral scale.  Returns [(mean eigenvalue,
    isometry onto the cluster eigenspace), ...] in ascending eigenvalue order.
    """
    w, v = np.linalg.eigh(mat)
    scale = max(float(np.max(np.abs(w))), 1e-300)
    boundaries = np.nonzero(np.diff(w) > rel_tol * scale)[0] + 1
    out = []
    start = 0
    for stop in list(boundaries) + [len(w)]:
        out.append((float(np.mean(w[start:stop])), v[:, start:stop]))
        start = stop
    return out
