"""Discovering the block structure of a numerically given operator algebra.

A finite-dimensional *-algebra of matrices always looks, in the right basis,
like a direct sum of full matrix blocks repeated with multiplicities.  This
script hides such an algebra behind a random change of basis, rebuilds it
from two generators, and recovers the hidden structure.
"""

import numpy as np

import cstar_entropy as ce
from cstar_entropy._linalg import haar_unitary, rng_stream

rng = rng_stream(2024)

# ----------------------------------------------------------------------
# Build a hidden algebra: one 2x2 block repeated twice, plus a 1x1 block.
# ----------------------------------------------------------------------
hidden = ce.make_algebra([(2, 2), (1, 1)])
print("hidden structure:    ", hidden.blocks)
print("ambient dimension:   ", hidden.ambient_dim)   # 2*2 + 1*1 = 5
print("algebra dimension:   ", hidden.algebra_dim)   # 4 + 1 = 5

# Conjugate two random elements by a random unitary so nothing is visibly
# block diagonal anymore.
scrambler = haar_unitary(hidden.ambient_dim, rng)
generators = [scrambler @ ce.embed(ce.random_element(hidden, rng)) @ scrambler.conj().T
              for _ in range(2)]
print("\na generator, rounded (no visible structure):")
print(np.round(generators[0], 2))

# ----------------------------------------------------------------------
# Close the generators into a *-algebra and discover its structure.
# ----------------------------------------------------------------------
sub = ce.generate_subalgebra(generators, tol=1e-9)
print("\nclosed *-algebra dimension:", sub.dim)

blocks, w = ce.block_decompose(sub, tol=1e-9, seed=0)
print("recovered structure:", blocks.blocks)

# The change-of-basis unitary makes every element block diagonal again.
worst = max(ce.structure_projection(w.conj().T @ b @ w, blocks)[1] for b in sub.basis)
print("largest off-structure residual after the change of basis: %.2e" % worst)

# Dimension laws: sum n^2 = algebra dimension, sum n*m = ambient dimension.
print("sum n_i^2 =", sum(n * n for n, _ in blocks.blocks), "== span dim", sub.dim)
print("sum n_i m_i =", sum(n * m for n, m in blocks.blocks), "== ambient", sub.ambient_dim)

# ----------------------------------------------------------------------
# The commutant sees the multiplicities mirrored: sum m_i^2 dimensions.
# ----------------------------------------------------------------------
com = ce.commutant(sub)
print("\ncommutant dimension:", com.dim, "(expected", sum(m * m for _, m in blocks.blocks), ")")

double = ce.commutant(com)
print("double commutant dimension:", double.dim, "(matches the algebra span)")
