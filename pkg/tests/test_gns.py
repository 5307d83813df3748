"""Tests for the GNS construction and the entropy computed through it."""

import numpy as np
import pytest

import cstar_entropy as ce
from cstar_entropy.errors import NotAStateError, ValidationError

from helpers import (
    random_ambient_density,
    random_pure_state,
    random_state,
    random_structure,
    rng_stream,
)


def _coeffs(a):
    return np.concatenate([part.reshape(-1) for part in a.parts])


class TestGnsConstruct:
    def test_pure_state_on_full_block(self):
        st = ce.make_algebra([(3, 1)])
        psi = np.zeros(3, dtype=complex)
        psi[0] = 1.0
        om = ce.StateFunctional.from_canonical(st, [1.0], [np.outer(psi, psi.conj())])
        g = ce.gns_construct(om, st)
        assert g.dim == 3

    def test_faithful_state_on_full_block(self):
        rng = rng_stream(70)
        st = ce.make_algebra([(3, 1)])
        om = ce.state_from_density(random_ambient_density(rng, 3), st)
        assert ce.gns_construct(om, st).dim == 9

    def test_diagonal_algebra_rep_ops_diagonal(self):
        st = ce.make_algebra([(1, 1)] * 3)
        om = ce.StateFunctional.from_canonical(
            st, [0.2, 0.3, 0.5], [np.eye(1)] * 3)
        g = ce.gns_construct(om, st)
        assert g.dim == 3
        for op in g.rep_ops:
            assert np.allclose(op, np.diag(np.diag(op)), atol=1e-10)

    def test_reproduces_functional(self):
        rng = rng_stream(71)
        for _ in range(3):
            st = random_structure(rng, max_ambient=8)
            om = random_state(rng, st)
            g = ce.gns_construct(om, st)
            for _ in range(100):
                a = ce.random_element(st, rng)
                lhs = g.cyclic.conj() @ (g.represent(_coeffs(a)) @ g.cyclic)
                assert abs(lhs - om.expect(a)) < 1e-9

    def test_representation_is_star_homomorphism(self):
        rng = rng_stream(72)
        st = random_structure(rng, max_ambient=8)
        om = random_state(rng, st)
        g = ce.gns_construct(om, st)
        for _ in range(10):
            a, b = ce.random_element(st, rng), ce.random_element(st, rng)
            pa, pb = g.represent(_coeffs(a)), g.represent(_coeffs(b))
            assert np.linalg.norm(g.represent(_coeffs(a @ b)) - pa @ pb) < 1e-8
            assert np.linalg.norm(g.represent(_coeffs(a.adjoint())) - pa.conj().T) < 1e-8

    def test_cyclic_vector_is_cyclic(self):
        rng = rng_stream(73)
        st = random_structure(rng, max_ambient=8)
        om = random_state(rng, st)
        g = ce.gns_construct(om, st)
        orbit = np.stack([op @ g.cyclic for op in g.rep_ops])
        assert np.linalg.matrix_rank(orbit) == g.dim

    def test_dim_equals_gram_rank(self):
        rng = rng_stream(74)
        st = random_structure(rng, max_ambient=8)
        om = random_state(rng, st)
        g = ce.gns_construct(om, st)
        assert g.dim == np.linalg.matrix_rank(g.gram, tol=1e-10)

    def test_non_positive_gram_rejected(self):
        st = ce.make_algebra([(2, 1)])
        om = ce.StateFunctional(st, (np.array([[1.5, 0.0], [0.0, -0.5]], dtype=complex),))
        with pytest.raises(NotAStateError):
            ce.gns_construct(om, st)


class TestIrreducibility:
    def test_pure_states_are_irreducible(self):
        rng = rng_stream(75)
        for _ in range(5):
            st = random_structure(rng, max_ambient=8)
            om = random_pure_state(rng, st)
            assert ce.is_irreducible(ce.gns_construct(om, st))

    def test_maximally_mixed_is_reducible(self):
        st = ce.make_algebra([(3, 1)])
        om = ce.state_from_density(np.eye(3) / 3, st)
        assert not ce.is_irreducible(ce.gns_construct(om, st))

    def test_two_sector_mixture_is_reducible(self):
        st = ce.make_algebra([(1, 1), (1, 1)])
        om = ce.StateFunctional.from_canonical(st, [0.5, 0.5], [np.eye(1), np.eye(1)])
        assert not ce.is_irreducible(ce.gns_construct(om, st))

    def test_purity_iff_irreducibility(self):
        rng = rng_stream(76)
        for trial in range(10):
            st = random_structure(rng, max_ambient=6)
            om = random_pure_state(rng, st) if trial % 2 else random_state(rng, st)
            g = ce.gns_construct(om, st)
            assert ce.is_irreducible(g) == ce.is_pure(om, st)


class TestCommutantFunctional:
    def test_identity_returns_the_state(self):
        rng = rng_stream(77)
        st = random_structure(rng, max_ambient=6)
        om = random_state(rng, st)
        g = ce.gns_construct(om, st)
        lam, sub = ce.gns_commutant_functional(g, np.eye(g.dim))
        assert lam == pytest.approx(1.0, abs=1e-10)
        assert np.allclose(sub.values(), om.values(), atol=1e-9)

    def test_half_identity_scalar_case(self):
        rng = rng_stream(78)
        st = random_structure(rng, max_ambient=6)
        om = random_state(rng, st)
        g = ce.gns_construct(om, st)
        lam, sub = ce.gns_commutant_functional(g, np.eye(g.dim) / 2)
        assert lam == pytest.approx(0.5, abs=1e-10)
        assert np.allclose(sub.values(), om.values(), atol=1e-9)

    def test_sector_projection_gives_pure_substate(self):
        # projecting onto one sector of a two-sector mixture leaves a pure state
        st = ce.make_algebra([(1, 1), (1, 1)])
        om = ce.StateFunctional.from_canonical(st, [0.25, 0.75], [np.eye(1), np.eye(1)])
        g = ce.gns_construct(om, st)
        # rep ops are diagonal here; the first sector projector is diag(1, 0)
        proj = np.zeros((2, 2))
        k = np.argmax([abs(op[0, 0]) for op in g.rep_ops])
        proj = np.round(np.abs(g.rep_ops[k])).real
        lam, sub = ce.gns_commutant_functional(g, proj)
        assert ce.is_pure(sub, st)
        assert lam == pytest.approx(0.25, abs=1e-9) or lam == pytest.approx(0.75, abs=1e-9)

    def test_leftover_functional_is_positive(self):
        # omega - lam * omega_T must still be a positive functional
        st = ce.make_algebra([(2, 1), (1, 1)])
        rng = rng_stream(79)
        om = random_state(rng, st)
        g = ce.gns_construct(om, st)
        t = np.eye(g.dim) * 0.6
        lam, sub = ce.gns_commutant_functional(g, t)
        rest = (om.values() - lam * sub.values()) / (1 - lam)
        block_values, off = [], 0
        for n, _ in st.blocks:
            block_values.append(rest[off:off + n * n].reshape(n, n))
            off += n * n
        leftover = ce.StateFunctional(st, tuple(block_values))
        ce.representative_density(leftover, st)  # raises if not positive

    def test_non_commuting_operator_rejected(self):
        st = ce.make_algebra([(2, 1)])
        rng = rng_stream(80)
        om = random_state(rng, st)
        g = ce.gns_construct(om, st)
        t = np.zeros((g.dim, g.dim))
        t[0, 0] = 1.0
        with pytest.raises(ValidationError):
            ce.gns_commutant_functional(g, t)

    def test_operator_above_identity_rejected(self):
        st = ce.make_algebra([(2, 1)])
        rng = rng_stream(81)
        om = random_state(rng, st)
        g = ce.gns_construct(om, st)
        with pytest.raises(ValidationError):
            ce.gns_commutant_functional(g, 2.0 * np.eye(g.dim))


class TestIdentityDecomposition:
    def test_multiplicity_one_gives_single_unit_term(self):
        st = ce.make_algebra([(2, 1)])
        rng = rng_stream(82)
        om = random_state(rng, st)
        g = ce.gns_construct(om, st)
        sectors = ce.resolve_sectors(g, seed=1)
        idec = ce.identity_decomposition_random(
            g, seed=1, sectors=sectors,
            sizes={i: m for i, (_, m) in enumerate(sectors.structure.blocks) if m == 1})
        for t, _, v in idec.items:
            if len(v) == 1:
                assert t == pytest.approx(1.0, abs=1e-12)

    def test_orthonormal_choice_has_unit_weights(self):
        # with exactly m terms the isometry is unitary and every weight is 1
        st = ce.make_algebra([(2, 1)])
        rng = rng_stream(83)
        om = ce.state_from_density(random_ambient_density(rng, 2), st)
        g = ce.gns_construct(om, st)
        sectors = ce.resolve_sectors(g, seed=2)
        sizes = {i: m for i, (_, m) in enumerate(sectors.structure.blocks)}
        idec = ce.identity_decomposition_random(g, seed=2, sectors=sectors, sizes=sizes)
        assert all(abs(t - 1.0) < 1e-9 for t, _, _ in idec.items)

    def test_random_resolution_sums_to_identity(self):
        rng = rng_stream(84)
        st = ce.make_algebra([(2, 2), (1, 1)])
        om = random_state(rng, st)
        g = ce.gns_construct(om, st)
        sectors = ce.resolve_sectors(g, seed=3)
        idec = ce.identity_decomposition_random(g, seed=3, sectors=sectors)
        # constructor already validates the resolution; check grouping by block
        for i, (_, m) in enumerate(sectors.structure.blocks):
            acc = sum(t * np.outer(v, v.conj())
                      for t, j, v in idec.items if j == i)
            assert np.allclose(acc, np.eye(m), atol=1e-9)

    def test_weight_formula_sums_to_one_and_bounds_entropy(self):
        rng = rng_stream(85)
        st = ce.make_algebra([(2, 2), (1, 2)])
        om = random_state(rng, st)
        g = ce.gns_construct(om, st)
        sectors = ce.resolve_sectors(g, seed=4)
        s = ce.state_entropy(om, st).state_entropy
        for trial in range(5):
            idec = ce.identity_decomposition_random(g, seed=trial, sectors=sectors)
            lam = ce.identity_decomposition_weights(g, idec, sectors=sectors)
            assert lam.sum() == pytest.approx(1.0, abs=1e-9)
            assert ce.shannon(lam) >= s - 1e-9


class TestGnsStateEntropy:
    def test_pure_state_zero(self):
        rng = rng_stream(86)
        st = random_structure(rng, max_ambient=6)
        om = random_pure_state(rng, st)
        assert ce.gns_state_entropy(om, st).state_entropy < 1e-9

    def test_faithful_m2_hand_value(self):
        st = ce.make_algebra([(2, 1)])
        om = ce.state_from_density(np.diag([0.25, 0.75]).astype(complex), st)
        assert ce.gns_state_entropy(om, st).state_entropy == pytest.approx(
            0.5623351446188083, abs=1e-9)

    def test_matches_closed_form_on_random_states(self):
        rng = rng_stream(87)
        for trial in range(10):
            st = random_structure(rng, max_ambient=10)
            om = random_state(rng, st)
            via_gns = ce.gns_state_entropy(om, st, seed=trial).state_entropy
            closed = ce.state_entropy(om, st).state_entropy
            assert via_gns == pytest.approx(closed, abs=1e-9)

    def test_report_invariants(self):
        rng = rng_stream(88)
        st = ce.make_algebra([(2, 2), (1, 1)])
        om = random_state(rng, st)
        rep = ce.gns_state_entropy(om, st)
        assert rep.state_entropy == pytest.approx(
            rep.sector_entropy + rep.mean_block_entropy, abs=1e-9)
        assert rep.vn_of_representative == pytest.approx(
            rep.state_entropy + rep.multiplicity_term, abs=1e-9)
