import itertools

import numpy as np
import pytest

from symrig.classify import TypeAssignment, identity_type
from symrig.errors import NotAHomomorphism, NotAnAutomorphism, SamplingExhausted
from symrig.graphs import Graph, Permutation, parse_cycles
from symrig.groups import schoenflies_group
from symrig.problem import load_fixture
from symrig.symspace import (
    class_is_empty,
    config_space_basis,
    constraint_residual,
    draw_samples,
    orbit_sample,
    orbit_structure,
    sample_config,
    sym_generic_verdict,
    symmetry_constraint_matrix,
)

C2 = schoenflies_group("C2", 2)
C3 = schoenflies_group("C3", 2)


def fixture_parts(name):
    prob = load_fixture(name)
    return prob.graph, prob.group, prob.phi


def basis_for(name):
    graph, group, phi = fixture_parts(name)
    return graph, group, phi, config_space_basis(graph, group, phi)


class TestConstraintMatrix:
    def test_half_turn_swap_block(self):
        phi = TypeAssignment((Permutation.identity(2), Permutation((1, 0))))
        block = symmetry_constraint_matrix(C2, phi, 1, 2)
        expected = np.array(
            [
                [-1.0, 0.0, -1.0, 0.0],
                [0.0, -1.0, 0.0, -1.0],
                [-1.0, 0.0, -1.0, 0.0],
                [0.0, -1.0, 0.0, -1.0],
            ]
        )
        assert block.shape == (4, 4)
        assert np.allclose(block, expected)

    def test_solutions_are_antipodal_pairs(self):
        phi = TypeAssignment((Permutation.identity(2), Permutation((1, 0))))
        block = symmetry_constraint_matrix(C2, phi, 1, 2)
        good = np.array([0.3, -0.7, -0.3, 0.7])
        assert np.max(np.abs(block @ good)) < 1e-12
        bad = np.array([0.3, -0.7, 0.3, -0.7])
        assert np.max(np.abs(block @ bad)) > 0.1


class TestBasis:
    FROZEN_K = {
        "c4_gadget": 4,
        "c9_c3": 2,
        "gbp_xi_a": 5,
        "gbp_xi_b": 5,
        "gtp_psi_a": 6,
        "gtp_psi_b": 6,
        "k2_c2_identity": 0,
        "k2_c2_swap": 2,
        "k2_c3_identity": 0,
        "k3_c2_swap": 2,
        "k33_c2v": 3,
        "k33_phi_a": 6,
        "k33_phi_b": 6,
        "k4_upsilon_a": 7,
        "k4_upsilon_b": 8,
    }

    @pytest.mark.parametrize("name,expected_k", sorted(FROZEN_K.items()))
    def test_dimension_table(self, name, expected_k):
        _, _, _, basis = basis_for(name)
        assert basis.k == expected_k

    @pytest.mark.parametrize("name", sorted(FROZEN_K))
    def test_rows_orthonormal_and_feasible(self, name):
        graph, group, phi, basis = basis_for(name)
        if basis.k:
            gram = basis.basis @ basis.basis.T
            assert np.max(np.abs(gram - np.eye(basis.k))) < 1e-12
        for row in basis.basis:
            assert constraint_residual(basis, group, phi, row) < 1e-9

    def test_gt_auto_type_resolves(self):
        # the shipped problem declares mode "auto"; resolve the base type here
        from symrig.classify import find_base_type

        prob = load_fixture("gt_c2")
        phi = find_base_type(prob.graph, prob.coords, prob.group)
        basis = config_space_basis(prob.graph, prob.group, phi)
        assert basis.k == 2

    def test_declared_coords_inside_space(self):
        graph, group, phi = fixture_parts("k33_phi_a")
        prob = load_fixture("k33_phi_a")
        flat = prob.coords.reshape(-1)
        basis = config_space_basis(graph, group, phi)
        # projection onto the row space reproduces the configuration
        proj = basis.basis.T @ (basis.basis @ flat)
        assert np.max(np.abs(proj - flat)) < 1e-9

    def test_identity_image_gives_full_space(self):
        graph = Graph.complete(3)
        c1 = schoenflies_group("C1", 2)
        basis = config_space_basis(graph, c1, identity_type(c1, 3))
        assert basis.k == 6

    def test_non_automorphism_rejected(self):
        graph = Graph.make(3, [(0, 1)])
        phi = TypeAssignment((Permutation.identity(3), Permutation((2, 1, 0))))
        with pytest.raises(NotAnAutomorphism):
            config_space_basis(graph, C2, phi)


class TestEmptiness:
    def test_forced_identity_on_half_turn(self):
        graph, _, _, basis = basis_for("k2_c2_identity")
        empty, offending = class_is_empty(graph, basis)
        assert empty
        assert offending == [(0, 1)]

    def test_swap_class_not_empty(self):
        graph, _, _, basis = basis_for("k2_c2_swap")
        empty, offending = class_is_empty(graph, basis)
        assert not empty
        assert offending == []

    def test_all_third_turn_classes_empty(self):
        # every normalized type of a single bar under a third turn is empty
        graph = Graph.make(2, [(0, 1)])
        choices = [Permutation.identity(2), Permutation((1, 0))]
        for a, b in itertools.product(choices, repeat=2):
            phi = TypeAssignment((Permutation.identity(2), a, b))
            basis = config_space_basis(graph, C3, phi)
            empty, offending = class_is_empty(graph, basis)
            assert empty
            assert offending == [(0, 1)]

    def test_gadget_class_not_empty(self):
        graph, _, _, basis = basis_for("c4_gadget")
        empty, _ = class_is_empty(graph, basis)
        assert not empty


class TestSampling:
    def test_empty_class_raises(self):
        _, _, _, basis = basis_for("k2_c2_identity")
        with pytest.raises(SamplingExhausted):
            sample_config(basis)

    def test_deterministic_per_seed(self):
        _, _, _, basis = basis_for("k33_phi_a")
        a = sample_config(basis, seed=7)
        b = sample_config(basis, seed=7)
        c = sample_config(basis, seed=8)
        assert np.array_equal(a.coords, b.coords)
        assert not np.array_equal(a.coords, c.coords)

    def test_unit_box_and_residual(self):
        graph, group, phi, basis = basis_for("gtp_psi_a")
        f = sample_config(basis, seed=3)
        assert np.isclose(np.max(np.abs(f.coords)), 1.0)
        assert constraint_residual(basis, group, phi, f.coords) < 1e-9
        assert not f.edge_violations()

    def test_draw_samples_stream(self):
        _, _, _, basis = basis_for("k33_phi_a")
        batch = draw_samples(basis, 5, seed=11)
        assert len(batch) == 5
        # one stream, so consecutive draws differ
        assert not np.array_equal(batch[0].coords, batch[1].coords)
        again = draw_samples(basis, 5, seed=11)
        for f, g in zip(batch, again):
            assert np.array_equal(f.coords, g.coords)

    @pytest.mark.parametrize(
        "name", ["k33_phi_b", "gbp_xi_b", "k4_upsilon_b", "k3_c2_swap", "c9_c3", "c4_gadget"]
    )
    def test_samples_satisfy_constraints(self, name):
        graph, group, phi, basis = basis_for(name)
        for f in draw_samples(basis, 4, seed=2):
            assert constraint_residual(basis, group, phi, f.coords) < 1e-9


class TestOrbits:
    def test_free_action_structure(self):
        graph, group, phi = fixture_parts("gtp_psi_a")
        structure = orbit_structure(graph, group, phi)
        assert structure.orbits == ((0, 3), (1, 5), (2, 4))
        assert structure.representatives == (0, 1, 2)
        assert [s.dim for s in structure.fixed_spaces] == [2, 2, 2]
        assert structure.degrees_of_freedom() == 6

    def test_mirror_fixed_vertices_pinned_to_line(self):
        graph, group, phi = fixture_parts("k33_phi_a")
        structure = orbit_structure(graph, group, phi)
        # orbits: {v1, v2}, {v3}, {v4}, {v5, v6}
        assert structure.orbits == ((0, 1), (2,), (3,), (4, 5))
        assert [s.dim for s in structure.fixed_spaces] == [2, 1, 1, 2]
        assert structure.degrees_of_freedom() == 6

    def test_dof_matches_kernel_dimension(self):
        for name in ["k33_phi_a", "gtp_psi_a", "gtp_psi_b", "k4_upsilon_a", "k33_c2v"]:
            graph, group, phi, basis = basis_for(name)
            structure = orbit_structure(graph, group, phi)
            assert structure.degrees_of_freedom() == basis.k

    def test_non_homomorphic_type_rejected(self):
        graph, group, phi = fixture_parts("c4_gadget")
        with pytest.raises(NotAHomomorphism):
            orbit_structure(graph, group, phi)

    def test_orbit_sample_matches_class(self):
        graph, group, phi = fixture_parts("gtp_psi_a")
        structure = orbit_structure(graph, group, phi)
        f = orbit_sample(structure, group, phi, seed=5)
        assert constraint_residual(graph, group, phi, f.coords) < 1e-8
        assert not f.edge_violations()
        again = orbit_sample(structure, group, phi, seed=5)
        assert np.array_equal(f.coords, again.coords)

    def test_orbit_sample_mirror_class(self):
        graph, group, phi = fixture_parts("k33_phi_a")
        structure = orbit_structure(graph, group, phi)
        f = orbit_sample(structure, group, phi, seed=9)
        assert constraint_residual(graph, group, phi, f.coords) < 1e-8


class TestVerdicts:
    def test_empty_class_short_circuits(self):
        graph, group, phi = fixture_parts("k2_c2_identity")
        report = sym_generic_verdict(graph, group, phi)
        assert report.empty
        assert report.samples_drawn == 0
        assert report.offending_edges == ((0, 1),)
        assert not report.isostatic
        assert report.witness is None

    def test_isostatic_class_carries_witness(self):
        graph, group, phi = fixture_parts("k33_phi_a")
        report = sym_generic_verdict(graph, group, phi, trials=10, seed=1)
        assert not report.empty
        assert report.k == 6
        assert len(report.ranks) == 10
        assert report.max_rank == 9
        assert report.isostatic and report.infinitesimally_rigid and report.independent
        assert report.witness is not None
        assert constraint_residual(graph, group, phi, report.witness) < 1e-9

    def test_degenerate_conic_class(self):
        graph, group, phi = fixture_parts("k33_phi_b")
        report = sym_generic_verdict(graph, group, phi, trials=10, seed=1)
        assert report.max_rank == 8
        assert not report.infinitesimally_rigid
        assert not report.isostatic
        assert report.witness is not None

    def test_to_dict_labels(self):
        graph, group, phi = fixture_parts("k2_c2_identity")
        d = sym_generic_verdict(graph, group, phi).to_dict(graph.labels)
        assert d["empty"] is True
        assert d["offending_edges"] == [["v1", "v2"]]
        assert "witness" not in d
