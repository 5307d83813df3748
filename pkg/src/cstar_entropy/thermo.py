"""Thermodynamic accounting: definite values, Zeno rotations, gas entropy.

Pure states inside one sector can be rotated into each other by a sequence
of frequent projective steps with success probability approaching one, so
they carry a common entropy; separating and isothermally compressing the
components of a mixed ensemble then prices its entropy in exchanged heat.
Pure states in different sectors admit no such connecting operation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._linalg import default_tol
from .algebra import AlgebraElement, BlockStructure, identity
from .entropy import von_neumann
from .errors import DisconnectedSectorsError, ValidationError
from .states import StateFunctional, canonical_form, is_pure, representative_density


@dataclass(frozen=True)
class GasAccount:
    """Bookkeeping for an ensemble of boxed copies at fixed temperature.

    ``sector_entropies`` assigns a per-copy entropy (in nats) to the pure
    states of each sector; they default to zero since nothing inside the
    theory connects the sectors.
    """

    copies: int
    temperature: float
    sector_entropies: np.ndarray
    boltzmann: float = 1.0

    def __post_init__(self):
        if int(self.copies) < 1:
            raise ValidationError("need at least one copy")
        if not self.temperature > 0:
            raise ValidationError("temperature must be positive")
        if not self.boltzmann > 0:
            raise ValidationError("boltzmann constant must be positive")
        s = np.array(self.sector_entropies, dtype=float)
        if s.ndim != 1:
            raise ValidationError("sector entropies must be a vector")
        s.setflags(write=False)
        object.__setattr__(self, "copies", int(self.copies))
        object.__setattr__(self, "sector_entropies", s)


def has_definite_value(omega: StateFunctional, a: AlgebraElement,
                       tol: float | None = None) -> tuple[bool, float]:
    """Whether every measurement of a self-adjoint observable returns one number.

    Returns ``(definite, value)`` with value = omega(a); definite means the
    variance omega((a - value)^2) vanishes within tol.
    """
    tol = default_tol(a.structure.ambient_dim) if tol is None else tol
    if not a.is_selfadjoint(tol * 100):
        raise ValidationError("observable must be self-adjoint")
    value = omega.expect(a).real
    shifted = a - value * identity(a.structure)
    variance = omega.expect(shifted @ shifted).real
    return bool(variance < max(tol * 100, 1e-10)), float(value)


def zeno_sequence(phi: np.ndarray, psi: np.ndarray, k: int, tol: float = 1e-9,
                  block_phi: int = 0, block_psi: int = 0) -> tuple[list[np.ndarray], list[float]]:
    """Stepwise rotation from phi to psi through k intermediate measurements.

    The nu-th vector is ``cos(pi nu / 2k) phi + sin(pi nu / 2k) psi`` and
    each step succeeds with probability ``cos^2(pi / 2k)``.  Both vectors
    must be unit, mutually orthogonal, and live in the same sector.
    """
    if k < 1:
        raise ValidationError("k must be at least 1")
    if block_phi != block_psi:
        raise DisconnectedSectorsError(
            f"vectors live in disconnected sectors {block_phi} and {block_psi}")
    phi = np.asarray(phi, dtype=complex)
    psi = np.asarray(psi, dtype=complex)
    if phi.shape != psi.shape or phi.ndim != 1:
        raise ValidationError("vectors must be one-dimensional and of equal length")
    for name, v in (("phi", phi), ("psi", psi)):
        if abs(np.linalg.norm(v) - 1.0) > tol * 100:
            raise ValidationError(f"{name} is not a unit vector")
    overlap = abs(np.vdot(phi, psi))
    if overlap > tol * 100:
        raise ValidationError(f"vectors are not orthogonal (overlap {overlap:.3e})")
    angles = np.pi * np.arange(k + 1) / (2 * k)
    vectors = [np.cos(t) * phi + np.sin(t) * psi for t in angles]
    step = float(np.cos(np.pi / (2 * k)) ** 2)
    return vectors, [step] * k


def zeno_success_probability(k: int) -> float:
    """Probability ``cos^{2k}(pi / 2k)`` that all k steps succeed; -> 1 as k grows."""
    if k < 1:
        raise ValidationError("k must be at least 1")
    return float(np.cos(np.pi / (2 * k)) ** (2 * k))


def compression_heat(weight: float, acct: GasAccount) -> float:
    """Heat exchanged when one separated component is compressed back isothermally.

    ``Q = k_B w M T log w`` for a component of total weight w; zero or
    negative, since compression releases heat.
    """
    weight = float(weight)
    if not 0.0 < weight <= 1.0:
        raise ValidationError(f"weight {weight!r} outside (0, 1]")
    return acct.boltzmann * weight * acct.copies * acct.temperature * float(np.log(weight))


def gas_entropy(omega: StateFunctional, structure: BlockStructure, acct: GasAccount,
                tol: float | None = None) -> float:
    """Per-copy thermodynamic entropy of the boxed ensemble, in nats.

    Equals the von Neumann entropy of the representative plus the average of
    the assigned sector entropies; with all of them zero and no
    multiplicities this is exactly the state entropy.
    """
    if len(acct.sector_entropies) != structure.num_blocks:
        raise ValidationError("one sector entropy per block required")
    tol = default_tol(structure.ambient_dim) if tol is None else tol
    rho = representative_density(omega, structure, tol)
    p, _ = canonical_form(rho, structure, tol)
    return von_neumann(rho, tol) + float(np.dot(p, acct.sector_entropies))


def sectors_connectable(omega_a: StateFunctional, omega_b: StateFunctional,
                        structure: BlockStructure, tol: float | None = None) -> bool:
    """Whether two pure states can be transformed into each other physically.

    True iff their supporting sectors coincide; pure states of different
    sectors are separated by a superselection rule.
    """
    tol = default_tol(structure.ambient_dim) if tol is None else tol
    supports = []
    for name, omega in (("first", omega_a), ("second", omega_b)):
        if not is_pure(omega, structure, tol):
            raise ValidationError(f"{name} state is not pure")
        p, _ = canonical_form(representative_density(omega, structure, tol), structure, tol)
        supports.append(int(np.argmax(p)))
    return supports[0] == supports[1]
