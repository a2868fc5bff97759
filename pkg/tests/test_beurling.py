"""Basis construction: factors, products, damping, and the sup bound."""

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from ballinterp import (
    BallPoint,
    BeurlingSystem,
    GeneratorSpec,
    PointSequence,
    build_system,
    damping_coefficient,
    generate,
    interpolation_bound,
    pseudohyperbolic,
    sort_by_norm,
)
from ballinterp.beurling import (
    basis_matrix,
    beurling_function,
    blaschke_factor,
    blaschke_product,
    exponent_matrix,
    exponent_series,
    kernel_bound,
    kernel_bound_matrix,
    kernel_factor,
    kernel_matrix,
)
from ballinterp.interpolation import sample_ball_array

deltas = st.floats(min_value=1e-6, max_value=1.0, allow_nan=False)


class TestDamping:
    def test_unit_separation(self):
        assert damping_coefficient(1.0) == 1.0

    def test_half_at_exp_minus_half(self):
        assert damping_coefficient(math.exp(-0.5)) == pytest.approx(0.5, abs=1e-15)

    def test_fifth_at_exp_minus_two(self):
        assert damping_coefficient(math.exp(-2.0)) == pytest.approx(0.2, abs=1e-15)

    @pytest.mark.parametrize("bad", [0.0, -0.5, 1.5, float("nan")])
    def test_domain(self, bad):
        with pytest.raises(ValueError, match="must lie in"):
            damping_coefficient(bad)

    @given(deltas, deltas)
    def test_monotone_increasing(self, a, b):
        lo, hi = sorted((a, b))
        assert damping_coefficient(lo) <= damping_coefficient(hi)


class TestInterpolationBound:
    def test_value_at_unit_separation(self):
        assert interpolation_bound(1.0) == pytest.approx(128.0 / math.e, abs=1e-13)

    def test_value_at_exp_minus_half(self):
        expected = 256.0 / math.sqrt(math.e)
        assert interpolation_bound(math.exp(-0.5)) == pytest.approx(expected, rel=1e-14)

    @pytest.mark.parametrize("bad", [0.0, -1.0, 2.0])
    def test_domain(self, bad):
        with pytest.raises(ValueError, match="must lie in"):
            interpolation_bound(bad)

    @given(deltas, deltas)
    def test_monotone_nonincreasing(self, a, b):
        lo, hi = sorted((a, b))
        assert interpolation_bound(lo) >= interpolation_bound(hi)


class TestSortByNorm:
    def test_orders_by_nondecreasing_norm(self):
        seq = PointSequence([BallPoint([0.7]), BallPoint([0.1]), BallPoint([0.4])])
        sorted_seq, perm = sort_by_norm(seq)
        assert np.all(np.diff(sorted_seq.norms) >= 0.0)
        assert perm == (1, 2, 0)

    def test_perm_indexes_the_input(self):
        seq = PointSequence([BallPoint([0.7]), BallPoint([0.1]), BallPoint([0.4])])
        sorted_seq, perm = sort_by_norm(seq)
        for i, src in enumerate(perm):
            assert np.all(sorted_seq.points[i].coords == seq.points[src].coords)

    def test_stable_for_equal_norms(self):
        seq = PointSequence([BallPoint([0.5]), BallPoint([0.5j]), BallPoint([0.2])])
        _, perm = sort_by_norm(seq)
        assert perm == (2, 0, 1)


class TestSystemConstruction:
    def test_golden_delta(self, golden_system):
        assert golden_system.delta == pytest.approx(0.2205959748577081, rel=1e-13)
        assert golden_system.n_points == 5
        assert golden_system.dim == 2

    def test_rebuild_is_bit_identical(self, golden_seq):
        a = build_system(golden_seq)
        b = build_system(golden_seq)
        assert a.delta == b.delta
        np.testing.assert_array_equal(a.blaschke_diag, b.blaschke_diag)
        np.testing.assert_array_equal(a.exponent_diag, b.exponent_diag)

    def test_bound_consistency(self, golden_system):
        expected = 128.0 / (
            math.e * golden_system.delta * damping_coefficient(golden_system.delta)
        )
        assert golden_system.bound == pytest.approx(expected, rel=1e-15)

    def test_rejects_unsorted_points(self):
        seq = PointSequence([BallPoint([0.7]), BallPoint([0.1])])
        with pytest.raises(ValueError, match="sorted by nondecreasing norm"):
            BeurlingSystem(seq, (0, 1))

    def test_rejects_bad_permutation(self):
        seq = PointSequence([BallPoint([0.1]), BallPoint([0.7])])
        with pytest.raises(ValueError, match="permutation"):
            BeurlingSystem(seq, (0, 2))

    def test_rejects_coincident_nodes(self):
        seq = PointSequence([BallPoint([0.3]), BallPoint([0.3])])
        with pytest.raises(ValueError, match="Carleson constant zero"):
            BeurlingSystem(seq, (0, 1))

    def test_single_node_system(self):
        system = build_system(PointSequence([BallPoint([0.5])]))
        assert system.delta == 1.0
        assert beurling_function(system, 0, [0.5]) == pytest.approx(1.0, abs=1e-15)


class TestFactors:
    def test_factor_at_its_own_node_matches_squared_distance(self, golden_system):
        pts = golden_system.points.points
        got = blaschke_factor(golden_system, 3, 1, pts[1])
        want = pseudohyperbolic(pts[3], pts[1]) ** 2
        assert got == pytest.approx(want, abs=1e-14)

    def test_factor_vanishes_at_the_removed_node(self, golden_system):
        pts = golden_system.points.points
        assert abs(blaschke_factor(golden_system, 3, 1, pts[3])) < 1e-14

    def test_factor_rejects_equal_indices(self, golden_system):
        with pytest.raises(ValueError, match="must differ"):
            blaschke_factor(golden_system, 2, 2, [0.0, 0.0])

    def test_product_diagonal_reuses_the_scalar_path(self, golden_system):
        pts = golden_system.points.points
        for j in range(golden_system.n_points):
            assert blaschke_product(golden_system, j, pts[j]) == golden_system.blaschke_diag[j]

    def test_product_vanishes_at_other_nodes(self, golden_system):
        pts = golden_system.points.points
        for j in range(golden_system.n_points):
            for m in range(golden_system.n_points):
                if m != j:
                    assert abs(blaschke_product(golden_system, j, pts[m])) < 1e-14

    def test_kernel_factor_is_one_at_its_node(self, golden_system):
        pts = golden_system.points.points
        for j in range(golden_system.n_points):
            assert kernel_factor(golden_system, j, pts[j]) == pytest.approx(1.0, abs=1e-14)

    def test_kernel_factor_at_origin(self, golden_system):
        # q_j(0) = (1 - ||x_j||^2)^2
        mu = 1.0 - golden_system.sq_norms
        for j in range(golden_system.n_points):
            got = kernel_factor(golden_system, j, [0.0, 0.0])
            assert got == pytest.approx(mu[j] ** 2, rel=1e-15)

    def test_kernel_bound_at_its_node(self, golden_system):
        for k in range(golden_system.n_points):
            s = golden_system.sq_norms[k]
            got = kernel_bound(golden_system, k, golden_system.points.points[k])
            assert got == pytest.approx(1.0 / (1.0 + s), rel=1e-14)

    def test_kernel_bound_at_origin(self, golden_system):
        for k in range(golden_system.n_points):
            s = golden_system.sq_norms[k]
            assert kernel_bound(golden_system, k, [0.0, 0.0]) == 1.0 - s

    def test_kernel_bound_range(self, golden_system):
        X = sample_ball_array(2, 100, seed=3)
        for k in range(golden_system.n_points):
            for x in X:
                b = kernel_bound(golden_system, k, x)
                assert 0.0 < b <= 1.0

    def test_exponent_series_is_one_at_the_last_node(self, golden_system):
        last = golden_system.n_points - 1
        x = golden_system.points.points[last]
        assert exponent_series(golden_system, last, x) == pytest.approx(1.0, abs=1e-14)

    def test_exponent_diagonal_real_parts_start_at_one(self, golden_system):
        assert np.all(golden_system.exponent_diag.real >= 1.0 - 1e-12)


class TestBeurlingFunctions:
    def test_nodes_reproduce_the_kronecker_delta(self, golden_system):
        pts = golden_system.points.points
        n = golden_system.n_points
        for j in range(n):
            for m in range(n):
                got = beurling_function(golden_system, j, pts[m])
                assert got == pytest.approx(1.0 if m == j else 0.0, abs=1e-12)

    def test_batch_matches_scalar(self, golden_system):
        X = sample_ball_array(2, 50, seed=21)
        F = basis_matrix(golden_system, X)
        assert F.shape == (50, golden_system.n_points)
        for t in (0, 17, 49):
            for j in range(golden_system.n_points):
                scalar = beurling_function(golden_system, j, X[t])
                assert F[t, j] == pytest.approx(scalar, rel=1e-12, abs=1e-13)

    def test_node_matrix_is_the_identity(self, golden_system):
        F = basis_matrix(golden_system, golden_system.coords)
        np.testing.assert_allclose(F, np.eye(golden_system.n_points), atol=1e-9)

    def test_absolute_sum_respects_the_bound(self, golden_system):
        X = sample_ball_array(2, 2000, seed=8, boundary_fraction=0.5)
        sums = np.abs(basis_matrix(golden_system, X)).sum(axis=1)
        assert sums.max() <= golden_system.bound * (1.0 + 1e-6)

    def test_helper_matrices_match_scalar_paths(self, golden_system):
        X = sample_ball_array(2, 20, seed=5)
        A = exponent_matrix(golden_system, X)
        Q = kernel_matrix(golden_system, X)
        B = kernel_bound_matrix(golden_system, X)
        for t in (0, 7, 19):
            for j in range(golden_system.n_points):
                assert A[t, j] == pytest.approx(
                    exponent_series(golden_system, j, X[t]), rel=1e-12
                )
                assert Q[t, j] == pytest.approx(
                    kernel_factor(golden_system, j, X[t]), rel=1e-12
                )
                assert B[t, j] == pytest.approx(
                    kernel_bound(golden_system, j, X[t]), rel=1e-12
                )

    def test_evaluation_rejects_wrong_width(self, golden_system):
        with pytest.raises(ValueError, match=r"shape \(m, 2\)"):
            basis_matrix(golden_system, np.zeros((3, 4), dtype=complex))

    def test_evaluation_rejects_outside_points(self, golden_system):
        X = np.array([[1.2 + 0.0j, 0.0j]])
        with pytest.raises(ValueError, match="strictly inside"):
            basis_matrix(golden_system, X)

    def test_evaluation_rejects_non_finite(self, golden_system):
        X = np.array([[np.nan + 0.0j, 0.0j]])
        with pytest.raises(ValueError, match="finite"):
            basis_matrix(golden_system, X)

    def test_scalar_point_dimension_check(self, golden_system):
        with pytest.raises(ValueError, match="dimension mismatch"):
            beurling_function(golden_system, 0, [0.1])


class TestSystemSerialization:
    def test_round_trip(self, golden_system):
        back = BeurlingSystem.from_dict(golden_system.to_dict())
        assert back.delta == golden_system.delta
        assert back.perm == golden_system.perm
        np.testing.assert_array_equal(back.coords, golden_system.coords)
        np.testing.assert_array_equal(back.blaschke_diag, golden_system.blaschke_diag)

    def test_dict_contract_keys(self, golden_system):
        d = golden_system.to_dict()
        assert set(d) == {
            "dim", "delta", "C_delta", "bound", "perm", "points", "B_diag", "A_diag",
        }

    def test_tampered_delta_is_rejected(self, golden_system):
        d = golden_system.to_dict()
        d["delta"] = d["delta"] * 1.001
        with pytest.raises(ValueError, match="inconsistent with its points"):
            BeurlingSystem.from_dict(d)

    def test_tampered_diagonal_is_rejected(self, golden_system):
        d = golden_system.to_dict()
        d["B_diag"][0][0] *= 1.01
        with pytest.raises(ValueError, match="inconsistent with its points"):
            BeurlingSystem.from_dict(d)

    def test_missing_keys_are_reported(self, golden_system):
        d = golden_system.to_dict()
        del d["perm"]
        with pytest.raises(ValueError, match="missing keys"):
            BeurlingSystem.from_dict(d)

    def test_non_object_is_rejected(self):
        with pytest.raises(ValueError, match="JSON object"):
            BeurlingSystem.from_dict([1, 2])


def test_deep_radial_chain_keeps_node_exactness():
    # the stiffest generator the radius schedule supports in doubles
    system = build_system(generate(GeneratorSpec("radial", n=31, dim=1, c=0.3)))
    F = basis_matrix(system, system.coords)
    assert np.abs(F - np.eye(31)).max() < 1e-9
