import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from symrig.errors import (
    BadParam,
    NonOrthogonalGenerator,
    NotClosedWithinBound,
    OrderBoundExceeded,
    UnknownName,
    UnsupportedDim,
)
from symrig.groups import (
    OrthogonalOp,
    SymmetryGroup,
    close_group,
    element_order,
    fixed_subspace,
    mirror2,
    mirror3,
    rot2,
    rot3,
    schoenflies_group,
    validate_group,
)

CATALOG_2D = ["C1", "Cs", "C2", "C5", "C2v", "C6v"]
CATALOG_3D = ["C1", "Cs", "Ci", "C3", "C4v", "C3h", "D4", "D3h", "D2d", "S4", "S6",
              "T", "Td", "Th", "O", "Oh", "I", "Ih"]


class TestBuilders:
    def test_rot2(self):
        m = rot2(math.pi / 2)
        assert np.allclose(m, [[0, -1], [1, 0]])

    def test_mirror2_x_axis(self):
        assert np.allclose(mirror2(0.0), [[1, 0], [0, -1]])

    def test_mirror2_y_axis(self):
        assert np.allclose(mirror2(math.pi / 2), [[-1, 0], [0, 1]])

    def test_mirror2_is_involution(self):
        m = mirror2(0.7)
        assert np.allclose(m @ m, np.eye(2))

    def test_rot3_axis_fixed(self):
        axis = np.array([1.0, 2.0, -0.5])
        m = rot3(axis, 1.1)
        assert np.allclose(m @ axis, axis)
        assert np.allclose(m @ m.T, np.eye(3))
        assert np.isclose(np.linalg.det(m), 1.0)

    def test_mirror3(self):
        m = mirror3((0.0, 1.0, 0.0))
        assert np.allclose(m, np.diag([1.0, -1.0, 1.0]))

    def test_op_rejects_non_orthogonal(self):
        with pytest.raises(NonOrthogonalGenerator):
            OrthogonalOp(np.array([[1.0, 0.1], [0.0, 1.0]]), "bad")

    def test_op_rejects_4d(self):
        with pytest.raises(UnsupportedDim):
            OrthogonalOp(np.eye(4), "bad")

    def test_element_order(self):
        assert element_order(OrthogonalOp(rot2(2 * math.pi / 5), "r")) == 5
        assert element_order(OrthogonalOp(mirror2(0.3), "s")) == 2
        with pytest.raises(OrderBoundExceeded):
            element_order(OrthogonalOp(rot2(1.0), "r"), bound=50)

    def test_fixed_subspace_dims(self):
        assert fixed_subspace(OrthogonalOp(mirror2(0.0), "s")).dim == 1
        assert fixed_subspace(OrthogonalOp(rot2(1.0), "r")).dim == 0
        assert fixed_subspace(OrthogonalOp(mirror3((0, 1, 0)), "s")).dim == 2
        assert fixed_subspace(OrthogonalOp(rot3((0, 0, 1), 1.0), "r")).dim == 1
        assert fixed_subspace(OrthogonalOp(-np.eye(3), "i")).dim == 0


class TestCatalog:
    @pytest.mark.parametrize("name", CATALOG_2D)
    def test_2d_valid(self, name):
        validate_group(schoenflies_group(name, 2))

    @pytest.mark.parametrize("name", CATALOG_3D)
    def test_3d_valid(self, name):
        validate_group(schoenflies_group(name, 3))

    def test_sizes_2d(self):
        assert len(schoenflies_group("C1", 2)) == 1
        assert len(schoenflies_group("Cs", 2)) == 2
        for m in range(2, 9):
            assert len(schoenflies_group(f"C{m}", 2)) == m
            assert len(schoenflies_group(f"C{m}v", 2)) == 2 * m

    def test_sizes_3d(self):
        assert len(schoenflies_group("Ci", 3)) == 2
        for m in range(2, 7):
            assert len(schoenflies_group(f"C{m}", 3)) == m
            assert len(schoenflies_group(f"C{m}v", 3)) == 2 * m
            assert len(schoenflies_group(f"C{m}h", 3)) == 2 * m
            assert len(schoenflies_group(f"D{m}", 3)) == 2 * m
            assert len(schoenflies_group(f"D{m}h", 3)) == 4 * m
            assert len(schoenflies_group(f"D{m}d", 3)) == 4 * m
            assert len(schoenflies_group(f"S{2 * m}", 3)) == 2 * m

    def test_polyhedral_sizes(self):
        for name, want in [("T", 12), ("Td", 24), ("Th", 24), ("O", 24),
                           ("Oh", 48), ("I", 60), ("Ih", 120)]:
            assert len(schoenflies_group(name, 3)) == want, name

    def test_template_names(self):
        g = schoenflies_group("Cmv", 2, m=3)
        assert g.name == "C3v"
        assert len(g) == 6
        assert len(schoenflies_group("Dmd", 3, m=4)) == 16
        assert len(schoenflies_group("S2m", 3, m=3)) == 6

    def test_labels(self):
        assert schoenflies_group("Cs", 2).labels == ("Id", "s")
        assert schoenflies_group("C2v", 2).labels == ("Id", "C2", "s(0)", "s(90)")
        assert schoenflies_group("C3", 2).labels == ("Id", "C3", "C3^2")
        assert schoenflies_group("Ci", 3).labels == ("Id", "i")
        labels4 = schoenflies_group("S4", 3).labels
        assert labels4[0] == "Id" and "C2" in labels4
        assert "sh" in schoenflies_group("C2h", 3).labels

    def test_identity_first(self):
        for name in CATALOG_3D:
            g = schoenflies_group(name, 3)
            assert g.elements[0].is_identity(), name


class TestNameParsing:
    def test_unknown_name(self):
        with pytest.raises(UnknownName):
            schoenflies_group("Q7", 2)

    def test_3d_only_families_rejected_in_2d(self):
        for name in ("Ci", "C3h", "D3", "S4", "T"):
            with pytest.raises(UnknownName):
                schoenflies_group(name, 2)

    def test_m_required_for_templates(self):
        with pytest.raises(BadParam):
            schoenflies_group("Cmv", 2)

    def test_m_too_small(self):
        with pytest.raises(BadParam):
            schoenflies_group("C1v", 2)

    def test_s_family_must_be_even(self):
        with pytest.raises(BadParam):
            schoenflies_group("S3", 3)
        with pytest.raises(BadParam):
            schoenflies_group("S2", 3)

    def test_inapplicable_params_rejected(self):
        with pytest.raises(BadParam):
            schoenflies_group("C3", 2, mirror_angle=0.1)
        with pytest.raises(BadParam):
            schoenflies_group("C2", 2, axis=(0, 0, 1))
        with pytest.raises(BadParam):
            schoenflies_group("D4", 3, mirror_angle=0.1)
        with pytest.raises(BadParam):
            schoenflies_group("Td", 3, axis=(1, 0, 0))
        with pytest.raises(BadParam):
            schoenflies_group("C4", 3, secondary_axis=(1, 0, 0))

    def test_order_bound(self):
        with pytest.raises(BadParam):
            schoenflies_group("Cmv", 3, m=150)


class TestOrientationConventions:
    def test_cs_default_mirror_fixes_x_axis(self):
        g = schoenflies_group("Cs", 2)
        assert np.allclose(g.elements[1].matrix, [[1, 0], [0, -1]])

    def test_cs_mirror_angle(self):
        g = schoenflies_group("Cs", 2, mirror_angle=math.pi / 2)
        assert np.allclose(g.elements[1].matrix, [[-1, 0], [0, 1]])

    def test_cs_3d_default_normal_y(self):
        g = schoenflies_group("Cs", 3)
        assert np.allclose(g.elements[1].matrix, np.diag([1, -1, 1]))

    def test_cs_3d_mirror_normal(self):
        g = schoenflies_group("Cs", 3, mirror_normal=(0, 0, 1))
        assert np.allclose(g.elements[1].matrix, np.diag([1, 1, -1]))

    def test_principal_axis_is_z(self):
        g = schoenflies_group("C4", 3)
        rot = g.elements[g.label_index("C4")]
        assert np.allclose(rot.matrix @ np.array([0, 0, 1.0]), [0, 0, 1.0])

    def test_d2_secondary_axis_is_x(self):
        g = schoenflies_group("D2", 3)
        ex = np.array([1.0, 0, 0])
        fixed = [op for op in g.elements if not op.is_identity()
                 and np.allclose(op.matrix @ ex, ex)]
        assert len(fixed) == 1

    def test_dmd_diagonal_mirror_bisects(self):
        # default diagonal mirror plane contains the bisector direction pi/(2m)
        m = 2
        g = schoenflies_group("D2d", 3)
        theta = math.pi / (2 * m)
        direction = np.array([math.cos(theta), math.sin(theta), 0.0])
        held = [op for op in g.elements if op.det < 0
                and np.allclose(op.matrix @ direction, direction)]
        assert held, "no diagonal mirror holds the bisector"

    def test_axis_conjugation(self):
        g = schoenflies_group("C3", 3, axis=(1.0, 0.0, 0.0))
        ex = np.array([1.0, 0.0, 0.0])
        for op in g.elements:
            assert np.allclose(op.matrix @ ex, ex)
        validate_group(g)

    def test_frame_rejects_parallel_secondary(self):
        with pytest.raises(BadParam):
            schoenflies_group("D3", 3, axis=(0, 0, 1), secondary_axis=(0, 0, 1))


class TestClosure:
    def test_close_c4(self):
        g = close_group([rot2(math.pi / 2)])
        assert len(g) == 4
        validate_group(g)

    def test_close_dihedral(self):
        g = close_group([rot2(2 * math.pi / 3), mirror2(0.0)])
        assert len(g) == 6
        validate_group(g)

    def test_close_not_closing(self):
        with pytest.raises(NotClosedWithinBound):
            close_group([rot2(1.0)], max_order=50)

    def test_close_mixed_dims(self):
        with pytest.raises(Exception):
            close_group([rot2(1.0), np.eye(3)])

    def test_icosahedral_closure_size(self):
        phi = (1 + math.sqrt(5)) / 2
        g = close_group([rot3((0, 1, phi), 2 * math.pi / 5),
                         np.diag([-1.0, -1.0, 1.0])])
        assert len(g) == 60


class TestGroupMachinery:
    def test_multiply_matches_matrices(self):
        g = schoenflies_group("C4v", 2)
        for i in range(len(g)):
            for j in range(len(g)):
                k = g.multiply(i, j)
                assert np.allclose(g.elements[i].matrix @ g.elements[j].matrix,
                                   g.elements[k].matrix, atol=1e-9)

    def test_inverse_index(self):
        g = schoenflies_group("C6", 2)
        for i in range(len(g)):
            assert g.multiply(i, g.inverse_index(i)) == 0

    def test_label_index(self):
        g = schoenflies_group("C2v", 2)
        assert g.label_index("s(90)") == 3
        with pytest.raises(UnknownName):
            g.label_index("zzz")

    def test_validator_catches_missing_inverse(self):
        ops = (OrthogonalOp(np.eye(2), "Id"), OrthogonalOp(rot2(2 * math.pi / 3), "C3"))
        broken = SymmetryGroup(dim=2, elements=ops, name="broken")
        with pytest.raises(ValueError):
            validate_group(broken)

    def test_validator_catches_duplicate(self):
        ops = (OrthogonalOp(np.eye(2), "Id"), OrthogonalOp(np.eye(2), "Id2"))
        broken = SymmetryGroup(dim=2, elements=ops, name="broken")
        with pytest.raises(ValueError):
            validate_group(broken)

    @settings(max_examples=25, deadline=None)
    @given(st.sampled_from(["C3", "C4v", "C6", "Cs"]), st.data())
    def test_cayley_closure_property(self, name, data):
        g = schoenflies_group(name, 2)
        i = data.draw(st.integers(0, len(g) - 1))
        j = data.draw(st.integers(0, len(g) - 1))
        k = data.draw(st.integers(0, len(g) - 1))
        assert g.multiply(g.multiply(i, j), k) == g.multiply(i, g.multiply(j, k))
