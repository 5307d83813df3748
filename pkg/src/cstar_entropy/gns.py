"""The GNS representation of a state and the entropy computed through it.

The state defines an inner product ``<A, B> = omega(A* B)`` on the algebra;
quotienting out its null space gives a Hilbert space on which the algebra
acts by left multiplication, with the class of the identity as cyclic
vector.  Decomposing that representation into blocks and reducing the cyclic
vector onto the multiplicity factors reproduces the state entropy by a
second, independent route.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._linalg import (
    default_tol,
    frob,
    hermitize,
    orthonormal_extend,
    random_isometry,
    rng_stream,
)
from .algebra import BlockStructure, SubalgebraBasis, block_decompose
from .entropy import EntropyReport, _entropy_of
from .errors import NotAStateError, ValidationError
from .states import StateFunctional

__all__ = [
    "GnsData",
    "GnsSectors",
    "IdentityDecomposition",
    "gns_construct",
    "resolve_sectors",
    "gns_commutant_functional",
    "identity_decomposition_random",
    "identity_decomposition_weights",
    "gns_state_entropy",
    "is_irreducible",
]


def _frozen(arr: np.ndarray) -> np.ndarray:
    out = np.array(arr, dtype=complex, copy=True)
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class GnsData:
    """The GNS representation of a state.

    ``rep_ops[k]`` is the represented k-th matrix unit, ``cyclic`` the class
    of the identity, ``gram`` the matrix of the state inner product on the
    matrix units, and ``embedding`` the (state-inner-product) isometry taking
    GNS coordinates back to coefficient-space representatives.
    """

    structure: BlockStructure
    dim: int
    rep_ops: tuple[np.ndarray, ...]
    cyclic: np.ndarray
    gram: np.ndarray
    embedding: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "rep_ops", tuple(_frozen(t) for t in self.rep_ops))
        object.__setattr__(self, "cyclic", _frozen(self.cyclic))
        object.__setattr__(self, "gram", _frozen(self.gram))
        object.__setattr__(self, "embedding", _frozen(self.embedding))

    def represent(self, coeffs: np.ndarray) -> np.ndarray:
        """Represented operator for an abstract element given by basis coefficients."""
        return np.tensordot(np.asarray(coeffs, dtype=complex), np.stack(self.rep_ops), axes=1)


def _gram_matrix(omega: StateFunctional, structure: BlockStructure) -> np.ndarray:
    """omega(B_k* B_l) over the matrix units; block-diagonal by construction."""
    dim = structure.algebra_dim
    gram = np.zeros((dim, dim), dtype=complex)
    off = 0
    for (n, _), values in zip(structure.blocks, omega.block_values):
        # unit products give <E_ab, E_cd> = delta_ac omega(E_bd)
        gram[off:off + n * n, off:off + n * n] = np.kron(np.eye(n), values)
        off += n * n
    return gram


def _left_mult_apply(structure: BlockStructure, mat: np.ndarray) -> list[np.ndarray]:
    """For every matrix unit b, the coefficient-space action of left multiplication.

    Returns ``L_b @ mat`` for all units b in basis order; each action just
    relocates coefficient rows inside its own block.
    """
    out = []
    off = 0
    for n, _ in structure.blocks:
        block_rows = mat[off:off + n * n]
        for a in range(n):
            for b in range(n):
                moved = np.zeros_like(mat)
                moved[off + a * n: off + (a + 1) * n] = block_rows[b * n:(b + 1) * n]
                out.append(moved)
        off += n * n
    return out


def gns_construct(omega: StateFunctional, structure: BlockStructure,
                  tol: float | None = None) -> GnsData:
    """Build the GNS Hilbert space, represented operators and cyclic vector."""
    if omega.structure.blocks != structure.blocks:
        raise ValidationError("state and structure do not match")
    tol = default_tol(structure.ambient_dim) if tol is None else tol
    gram = _gram_matrix(omega, structure)
    eigs, vecs = np.linalg.eigh(hermitize(gram))
    scale = max(float(eigs[-1]), 0.0)
    if eigs[0] < -tol * max(1.0, scale) * 10:
        raise NotAStateError(f"state inner product is not positive (eigenvalue {eigs[0]:.3e})")
    keep = eigs > tol * max(scale, 1e-300)
    lam = eigs[keep]
    v = vecs[:, keep]
    dim = int(keep.sum())
    if dim == 0:
        raise NotAStateError("state inner product vanishes identically")
    quotient = (v * np.sqrt(lam)).conj().T      # coefficient space -> GNS coordinates
    embedding = v / np.sqrt(lam)                # GNS coordinates -> representatives
    rep_ops = [quotient @ moved for moved in _left_mult_apply(structure, embedding)]

    identity_coeffs = np.zeros(structure.algebra_dim, dtype=complex)
    off = 0
    for n, _ in structure.blocks:
        identity_coeffs[off:off + n * n][:: n + 1] = 1.0
        off += n * n
    cyclic = quotient @ identity_coeffs
    return GnsData(structure=structure, dim=dim, rep_ops=tuple(rep_ops),
                   cyclic=cyclic, gram=gram, embedding=embedding)


def _rep_span_basis(g: GnsData, tol: float) -> SubalgebraBasis:
    rows = np.stack([t.reshape(-1) for t in g.rep_ops])
    cutoff = tol * max(1.0, float(np.max(np.linalg.norm(rows, axis=1))))
    basis = orthonormal_extend(np.zeros((0, rows.shape[1]), dtype=complex), rows, cutoff)
    return SubalgebraBasis(g.dim, tuple(basis.reshape(-1, g.dim, g.dim)))


@dataclass(frozen=True)
class GnsSectors:
    """Block data of the represented algebra on the GNS space.

    Weights are the squared norms of the cyclic vector's sector projections;
    ``block_states`` are the reduced states on the irreducible factors and
    ``multiplicity_states`` the reduced states on the multiplicity factors.
    """

    structure: BlockStructure
    unitary: np.ndarray
    weights: np.ndarray
    block_states: tuple[np.ndarray, ...]
    multiplicity_states: tuple[np.ndarray, ...]


def resolve_sectors(g: GnsData, tol: float | None = None, seed: int = 0) -> GnsSectors:
    """Block-decompose the represented algebra and reduce the cyclic vector."""
    tol = default_tol(g.dim) if tol is None else tol
    structure, w = block_decompose(_rep_span_basis(g, tol), tol=tol, seed=seed)
    rotated = w.conj().T @ g.cyclic
    weights, blocks, mults = [], [], []
    for sl, (n, m) in zip(structure.ambient_slices(), structure.blocks):
        part = rotated[sl]
        p = float(np.linalg.norm(part) ** 2)
        weights.append(p)
        psi = part.reshape(n, m) / np.sqrt(p)
        blocks.append(psi @ psi.conj().T)
        mults.append(psi.T @ psi.conj())
    return GnsSectors(structure=structure, unitary=w, weights=np.array(weights),
                      block_states=tuple(blocks), multiplicity_states=tuple(mults))


def gns_commutant_functional(g: GnsData, t: np.ndarray,
                             tol: float | None = None) -> tuple[float, StateFunctional]:
    """Sub-state carved out by a positive commutant operator T with ||T|| <= 1.

    Returns ``(weight, state)`` where ``weight * state(A) = <Omega| T pi(A)
    Omega>``; the leftover ``omega - weight * state`` is again positive.
    """
    tol = default_tol(g.dim) if tol is None else tol
    t = np.asarray(t, dtype=complex)
    if t.shape != (g.dim, g.dim):
        raise ValidationError("operator shape does not match the GNS dimension")
    if frob(t - t.conj().T) > tol * max(1.0, frob(t)) * 10:
        raise ValidationError("operator is not self-adjoint")
    eigs = np.linalg.eigvalsh(hermitize(t))
    if eigs[0] < -tol * 10 or eigs[-1] > 1.0 + tol * 10:
        raise ValidationError(f"operator spectrum [{eigs[0]:.3e}, {eigs[-1]:.3e}] not within [0, 1]")
    for op in g.rep_ops:
        if frob(t @ op - op @ t) > max(tol * 100, 1e-7):
            raise ValidationError("operator does not commute with the represented algebra")
    weight = float((g.cyclic.conj() @ (t @ g.cyclic)).real)
    if weight <= tol:
        raise ValidationError("operator annihilates the cyclic vector; no sub-state")
    raw = np.array([g.cyclic.conj() @ (t @ (op @ g.cyclic)) for op in g.rep_ops])
    values = raw / weight
    block_values, off = [], 0
    for n, _ in g.structure.blocks:
        block_values.append(values[off:off + n * n].reshape(n, n))
        off += n * n
    return weight, StateFunctional(g.structure, tuple(block_values))


@dataclass(frozen=True)
class IdentityDecomposition:
    """Per-block resolutions of the identity into weighted rank-one terms.

    ``items`` holds (t, block index, unit vector v in the multiplicity
    factor); within each block the terms satisfy ``sum_j t_j |v_j><v_j| =
    I_m``.
    """

    items: tuple[tuple[float, int, np.ndarray], ...]

    def __post_init__(self):
        by_block: dict[int, list[tuple[float, np.ndarray]]] = {}
        items = []
        for t, i, v in self.items:
            t, i = float(t), int(i)
            vec = np.asarray(v, dtype=complex)
            if not 0.0 < t <= 1.0 + 1e-9:
                raise ValidationError(f"weight {t!r} outside (0, 1]")
            if abs(np.linalg.norm(vec) - 1.0) > 1e-8:
                raise ValidationError("vectors must be unit norm")
            by_block.setdefault(i, []).append((t, vec))
            items.append((t, i, _frozen(vec)))
        for i, terms in by_block.items():
            m = len(terms[0][1])
            acc = np.zeros((m, m), dtype=complex)
            for t, vec in terms:
                acc += t * np.outer(vec, vec.conj())
            if frob(acc - np.eye(m)) > 1e-8 * m:
                raise ValidationError(f"block {i} terms do not resolve the identity")
        object.__setattr__(self, "items", tuple(items))


def identity_decomposition_random(g: GnsData, seed: int = 0,
                                  sectors: GnsSectors | None = None,
                                  sizes: dict[int, int] | None = None) -> IdentityDecomposition:
    """Random per-block resolutions of the identity on the multiplicity factors.

    Each block i gets M_i terms with M_i drawn in [m_i, 2 m_i] (overridable
    through ``sizes``), built from the rows of a random isometry so the
    resolution is exact.  With M_i = m_i the rows form an orthonormal basis
    and every weight is 1.
    """
    sectors = resolve_sectors(g, seed=seed) if sectors is None else sectors
    rng = rng_stream(seed, 3)
    items = []
    for i, (_, m) in enumerate(sectors.structure.blocks):
        count = sizes.get(i) if sizes else None
        if count is None:
            count = int(rng.integers(m, 2 * m + 1))
        if count < m:
            raise ValidationError(f"block {i} needs at least {m} terms")
        iso = random_isometry(count, m, rng)
        for row in iso.conj():
            t = float(np.linalg.norm(row) ** 2)
            if t <= 1e-12:
                continue
            items.append((t, i, row / np.sqrt(t)))
    return IdentityDecomposition(tuple(items))


def identity_decomposition_weights(g: GnsData, idec: IdentityDecomposition,
                                   sectors: GnsSectors | None = None,
                                   seed: int = 0) -> np.ndarray:
    """Weights ``t_j <Omega| P_j Omega>`` of the pure decomposition induced by idec."""
    sectors = resolve_sectors(g, seed=seed) if sectors is None else sectors
    out = []
    for t, i, v in idec.items:
        sigma = sectors.multiplicity_states[i]
        out.append(t * sectors.weights[i] * float((v.conj() @ (sigma @ v)).real))
    return np.array(out)


def gns_state_entropy(omega: StateFunctional, structure: BlockStructure,
                      tol: float | None = None, seed: int = 0) -> EntropyReport:
    """State entropy recomputed through the GNS representation.

    The sector weights come from the cyclic vector's projections and the
    block entropies from its reduced states on the multiplicity factors; the
    result must agree with the closed-form entropy.
    """
    tol = default_tol(structure.ambient_dim) if tol is None else tol
    g = gns_construct(omega, structure, tol)
    sectors = resolve_sectors(g, tol=tol, seed=seed)
    p = sectors.weights
    sector_entropy = _entropy_of(p)
    mean = 0.0
    vn = 0.0
    mult = 0.0
    for w, sigma, block_rho, (_, m) in zip(p, sectors.multiplicity_states,
                                           sectors.block_states, sectors.structure.blocks):
        spec_m = np.clip(np.linalg.eigvalsh(sigma), 0.0, None)
        spec_b = np.clip(np.linalg.eigvalsh(block_rho), 0.0, None)
        mean += w * _entropy_of(spec_m / spec_m.sum())
        vn += w * (_entropy_of(spec_b / spec_b.sum()) + np.log(m))
        mult += w * np.log(m)
    return EntropyReport(
        state_entropy=sector_entropy + mean,
        sector_entropy=sector_entropy,
        mean_block_entropy=mean,
        vn_of_representative=sector_entropy + vn,
        multiplicity_term=mult,
    )


def is_irreducible(g: GnsData, tol: float | None = None) -> bool:
    """True iff the represented algebra has a trivial commutant.

    Equivalent test: an irreducibly acting *-algebra is the full matrix
    algebra, so the represented operators must span all of dim^2 dimensions.
    """
    tol = default_tol(g.dim) if tol is None else tol
    rows = np.stack([t.reshape(-1) for t in g.rep_ops])
    svals = np.linalg.svd(rows, compute_uv=False)
    rank = int(np.sum(svals > max(tol, 1e-12) * max(float(svals[0]), 1.0)))
    return rank == g.dim * g.dim
