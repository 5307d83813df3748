"""Shared generators for randomized tests."""

import numpy as np

import cstar_entropy as ce
from cstar_entropy._linalg import haar_unitary, rng_stream


def random_structure(rng, max_ambient=12, max_blocks=3, multiplicities=True):
    """A random block structure with ambient dimension bounded by max_ambient."""
    blocks = []
    total = 0
    for _ in range(int(rng.integers(1, max_blocks + 1))):
        n = int(rng.integers(1, 4))
        m = int(rng.integers(1, 3)) if multiplicities else 1
        if total + n * m > max_ambient:
            break
        blocks.append((n, m))
        total += n * m
    if not blocks:
        blocks = [(int(rng.integers(1, 4)), 1)]
    return ce.make_algebra(blocks)


def random_block_density(rng, n):
    a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    rho = a @ a.conj().T
    return rho / np.trace(rho)


def random_state(rng, structure, min_weight=0.0):
    """A random faithful-ish state; sector weights can be bounded from below."""
    k = structure.num_blocks
    p = rng.dirichlet(np.ones(k))
    if min_weight:
        p = (1.0 - k * min_weight) * p + min_weight
    rhos = [random_block_density(rng, n) for n, _ in structure.blocks]
    return ce.StateFunctional.from_canonical(structure, p, rhos)


def random_pure_state(rng, structure, block=None):
    k = structure.num_blocks
    i = int(rng.integers(k)) if block is None else block
    n = structure.blocks[i][0]
    v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    v = v / np.linalg.norm(v)
    p = np.zeros(k)
    p[i] = 1.0
    rhos = [None] * k
    rhos[i] = np.outer(v, v.conj())
    return ce.StateFunctional.from_canonical(structure, p, rhos)


def random_ambient_density(rng, d):
    a = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    rho = a @ a.conj().T
    return rho / np.trace(rho)


def conjugated_algebra_generators(rng, structure, count=2):
    """Generators of a unitarily rotated copy of the embedded algebra."""
    v = haar_unitary(structure.ambient_dim, rng)
    return [v @ ce.embed(ce.random_element(structure, rng)) @ v.conj().T
            for _ in range(count)]


__all__ = [
    "haar_unitary",
    "rng_stream",
    "random_structure",
    "random_block_density",
    "random_state",
    "random_pure_state",
    "random_ambient_density",
    "conjugated_algebra_generators",
]
