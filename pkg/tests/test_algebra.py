"""Tests for block structures, embeddings, closures, commutants and discovery."""

import numpy as np
import pytest

import cstar_entropy as ce
from cstar_entropy.errors import DecompositionError, ValidationError

from helpers import conjugated_algebra_generators, haar_unitary, random_structure, rng_stream


class TestMakeAlgebra:
    def test_single_full_block(self):
        st = ce.make_algebra([(2, 1)])
        assert st.ambient_dim == 2
        assert st.algebra_dim == 4

    def test_diagonal_algebra(self):
        st = ce.make_algebra([(1, 1)] * 4)
        assert st.ambient_dim == 4
        assert st.algebra_dim == 4

    def test_mixed_blocks_dimensions(self):
        # dim H = 2*2 + 3*1 = 7 and dim A = 4 + 9 = 13
        st = ce.make_algebra([(2, 2), (3, 1)])
        assert st.ambient_dim == 7
        assert st.algebra_dim == 13

    def test_multiplicity_free_companion(self):
        st = ce.make_algebra([(2, 2), (3, 1)])
        assert st.multiplicity_free().blocks == ((2, 1), (3, 1))

    @pytest.mark.parametrize("blocks", [[(0, 1)], [(1, 0)], [(-2, 1)], []])
    def test_rejects_bad_blocks(self, blocks):
        with pytest.raises(ValidationError):
            ce.make_algebra(blocks)


class TestEmbed:
    def test_identity_embeds_to_identity(self):
        st = ce.make_algebra([(2, 2), (3, 1)])
        assert np.allclose(ce.embed(ce.identity(st)), np.eye(7))

    def test_kron_ordering(self):
        # the multiplicity factor is the fast index: diag(1,0) -> diag(1,1,0,0)
        st = ce.make_algebra([(2, 2)])
        a = ce.AlgebraElement(st, (np.diag([1.0, 0.0]),))
        assert np.allclose(ce.embed(a), np.diag([1.0, 1.0, 0.0, 0.0]))

    def test_two_scalar_blocks(self):
        st = ce.make_algebra([(1, 1), (1, 1)])
        a = ce.AlgebraElement(st, (np.array([[2.0]]), np.array([[3.0]])))
        assert np.allclose(ce.embed(a), np.diag([2.0, 3.0]))

    def test_shape_mismatch_rejected(self):
        st = ce.make_algebra([(2, 1)])
        with pytest.raises(ValidationError):
            ce.AlgebraElement(st, (np.eye(3),))

    def test_star_homomorphism_on_random_elements(self):
        rng = rng_stream(5)
        st = random_structure(rng)
        for _ in range(20):
            a = ce.random_element(st, rng)
            b = ce.random_element(st, rng)
            assert np.allclose(ce.embed(a @ b), ce.embed(a) @ ce.embed(b), atol=1e-9)
            assert np.allclose(ce.embed(a.adjoint()), ce.embed(a).conj().T)
            assert np.allclose(ce.embed(a + 2.5 * b), ce.embed(a) + 2.5 * ce.embed(b))

    def test_faithful(self):
        rng = rng_stream(6)
        st = random_structure(rng)
        a = ce.random_element(st, rng)
        assert np.linalg.norm(ce.embed(a)) > 0


class TestGenerateSubalgebra:
    def test_identity_generator(self):
        sub = ce.generate_subalgebra([np.eye(3)])
        assert sub.dim == 1
        assert np.allclose(sub.basis[0], np.eye(3) / np.sqrt(3))

    def test_matrix_units_give_full_algebra(self):
        units = [np.zeros((2, 2)) for _ in range(4)]
        for k, (i, j) in enumerate([(0, 0), (0, 1), (1, 0), (1, 1)]):
            units[k][i, j] = 1.0
        assert ce.generate_subalgebra(units).dim == 4

    def test_nondegenerate_diagonal_spans_all_diagonals(self):
        sub = ce.generate_subalgebra([np.diag([1.0, 2.0, 3.0])])
        assert sub.dim == 3

    def test_single_nilpotent_generates_m2(self):
        # the adjoint is adjoined, so one nilpotent already generates M_2
        sub = ce.generate_subalgebra([np.array([[0.0, 1.0], [0.0, 0.0]])])
        assert sub.dim == 4

    def test_closure_defect_small(self):
        rng = rng_stream(9)
        st = random_structure(rng, max_ambient=8)
        sub = ce.generate_subalgebra(conjugated_algebra_generators(rng, st))
        assert sub.closure_defect() < 1e-8

    def test_rejects_bad_input(self):
        with pytest.raises(ValidationError):
            ce.generate_subalgebra([])
        with pytest.raises(ValidationError):
            ce.generate_subalgebra([np.ones((2, 3))])
        with pytest.raises(ValidationError):
            ce.generate_subalgebra([np.eye(2), np.eye(3)])


class TestCommutant:
    def test_full_matrix_algebra_has_scalar_commutant(self):
        sub = ce.generate_subalgebra([np.array([[0.0, 1.0], [0.0, 0.0]])])
        assert ce.commutant(sub).dim == 1

    def test_diagonal_algebra_is_own_commutant(self):
        sub = ce.generate_subalgebra([np.diag([1.0, 2.0, 3.0])])
        com = ce.commutant(sub)
        assert com.dim == 3
        for mat in com.basis:
            assert np.allclose(mat, np.diag(np.diag(mat)))

    def test_embedded_block_commutant_dimension(self):
        # commutant of (+) M_n (x) I_m is (+) I_n (x) M_m with dimension sum m^2
        rng = rng_stream(12)
        st = ce.make_algebra([(2, 2), (1, 3)])
        sub = ce.generate_subalgebra([ce.embed(ce.random_element(st, rng)) for _ in range(2)])
        assert ce.commutant(sub).dim == 4 + 9

    def test_double_commutant_recovers_span(self):
        rng = rng_stream(13)
        for trial in range(3):
            st = random_structure(rng, max_ambient=6)
            sub = ce.generate_subalgebra(conjugated_algebra_generators(rng, st))
            double = ce.commutant(ce.commutant(sub))
            assert double.dim == sub.dim
            dist = np.linalg.norm(double.span_projector() - sub.span_projector())
            assert dist < 1e-8


class TestBlockDecompose:
    def test_full_m3(self):
        rng = rng_stream(21)
        g = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
        blocks, w = ce.block_decompose(ce.generate_subalgebra([g]), seed=1)
        assert blocks.blocks == ((3, 1),)
        assert np.allclose(w @ w.conj().T, np.eye(3), atol=1e-9)

    def test_conjugated_block_with_multiplicity(self):
        rng = rng_stream(22)
        st = ce.make_algebra([(2, 2)])
        sub = ce.generate_subalgebra(conjugated_algebra_generators(rng, st))
        blocks, _ = ce.block_decompose(sub, seed=2)
        assert blocks.blocks == ((2, 2),)

    def test_conjugated_diagonal(self):
        rng = rng_stream(23)
        v = haar_unitary(3, rng)
        sub = ce.generate_subalgebra([v @ np.diag([1.0, 2.0, 3.0]).astype(complex) @ v.conj().T])
        blocks, _ = ce.block_decompose(sub, seed=2)
        assert blocks.blocks == ((1, 1), (1, 1), (1, 1))

    def test_transformed_basis_is_block_diagonal(self):
        rng = rng_stream(24)
        st = ce.make_algebra([(2, 1), (1, 2)])
        sub = ce.generate_subalgebra(conjugated_algebra_generators(rng, st))
        blocks, w = ce.block_decompose(sub, seed=4)
        assert sorted(blocks.blocks) == sorted(st.blocks)
        for mat in sub.basis:
            _, res = ce.structure_projection(w.conj().T @ mat @ w, blocks)
            assert res < 1e-8

    def test_roundtrip_recovers_multiset(self):
        rng = rng_stream(25)
        for trial in range(8):
            st = random_structure(rng, max_ambient=10)
            sub = ce.generate_subalgebra(conjugated_algebra_generators(rng, st))
            blocks, _ = ce.block_decompose(sub, seed=trial)
            assert sorted(blocks.blocks) == sorted(st.blocks)
            assert blocks.algebra_dim == sub.dim
            assert blocks.ambient_dim == sub.ambient_dim

    def test_scalars_are_one_block_with_multiplicity(self):
        sub = ce.generate_subalgebra([np.eye(4)])
        blocks, _ = ce.block_decompose(sub, seed=0)
        assert blocks.blocks == ((1, 4),)

    def test_non_unital_span_rejected(self):
        # an orthonormal non-unital set is not a valid algebra basis here
        mat = np.zeros((2, 2), dtype=complex)
        mat[0, 1] = 1.0
        sub = ce.SubalgebraBasis(2, (mat,))
        with pytest.raises(ValidationError):
            ce.block_decompose(sub)

    def test_absurd_tolerance_fails(self):
        # a huge tolerance merges every eigenvalue cluster, so no attempt
        # can match the center dimension and discovery must give up
        rng = rng_stream(26)
        st = ce.make_algebra([(2, 1), (1, 1)])
        sub = ce.generate_subalgebra(conjugated_algebra_generators(rng, st))
        with pytest.raises(DecompositionError):
            ce.block_decompose(sub, tol=100.0, seed=0)

    def test_deterministic_given_seed(self):
        rng = rng_stream(27)
        st = ce.make_algebra([(2, 2), (1, 1)])
        sub = ce.generate_subalgebra(conjugated_algebra_generators(rng, st))
        b1, w1 = ce.block_decompose(sub, seed=7)
        b2, w2 = ce.block_decompose(sub, seed=7)
        assert b1.blocks == b2.blocks
        assert np.array_equal(w1, w2)
