"""Inner product, ball points, projections, and the ball automorphism."""

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from ballinterp import (
    BallPoint,
    ConditioningError,
    ball_automorphism,
    inner,
    mobius_shift,
    norm,
    project_complement,
    project_onto,
)


def ball_vectors(dim, max_radius=0.9):
    """Strategy for complex vectors strictly inside the ball."""
    coord = st.complex_numbers(
        max_magnitude=1.0, allow_nan=False, allow_infinity=False
    )

    def squeeze(coords):
        # norm maps to max_radius * n / (1 + n), always below max_radius
        v = np.asarray(coords, dtype=complex)
        return v * (max_radius / (1.0 + np.linalg.norm(v)))

    return st.lists(coord, min_size=dim, max_size=dim).map(squeeze)


class TestInner:
    def test_scalars_promote_to_one_dim(self):
        assert inner(0.5, 0.3j) == -0.15j

    def test_linear_in_first_argument(self):
        x = np.array([0.1 + 0.2j, -0.3j])
        y = np.array([0.4, 0.1 - 0.1j])
        z = np.array([0.2 - 0.5j, 0.3])
        a, b = 2.0 - 1.0j, -0.5 + 0.25j
        lhs = inner(a * x + b * y, z)
        rhs = a * inner(x, z) + b * inner(y, z)
        assert lhs == pytest.approx(rhs, abs=1e-15)

    def test_conjugate_linear_in_second_argument(self):
        x = np.array([0.1 + 0.2j])
        y = np.array([0.4 - 0.3j])
        c = 0.7 + 0.2j
        assert inner(x, c * y) == pytest.approx(np.conj(c) * inner(x, y), abs=1e-15)

    @given(ball_vectors(3))
    def test_self_inner_is_real_nonnegative(self, v):
        p = inner(v, v)
        assert p.imag == 0.0
        assert p.real >= 0.0

    @given(ball_vectors(2), ball_vectors(2))
    def test_hermitian_symmetry_is_exact(self, x, y):
        # elementwise products commute in IEEE, so no tolerance is needed
        assert inner(x, y) == np.conj(inner(y, x))

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError, match="dimension mismatch"):
            inner([0.1, 0.2], [0.3])


def test_norm_of_pythagorean_vector():
    assert norm([0.6, 0.8j]) == 1.0


class TestBallPoint:
    def test_caches_squared_norm(self):
        p = BallPoint([0.3, 0.4j])
        assert p.sq_norm == pytest.approx(0.25, abs=1e-16)
        assert p.norm == pytest.approx(0.5, abs=1e-16)
        assert p.dim == 2

    def test_accepts_scalar(self):
        assert BallPoint(0.5).dim == 1

    def test_coords_are_write_protected(self):
        p = BallPoint([0.1, 0.2])
        with pytest.raises(ValueError):
            p.coords[0] = 0.9

    @pytest.mark.parametrize("bad", [[1.0, 0.0], [0.8, 0.8], 1.0])
    def test_rejects_points_on_or_outside_the_sphere(self, bad):
        with pytest.raises(ValueError, match="outside the open unit ball"):
            BallPoint(bad)

    def test_rejects_non_finite(self):
        with pytest.raises(ValueError, match="finite"):
            BallPoint([0.1, np.nan])

    def test_rejects_empty(self):
        with pytest.raises(ValueError, match="nonempty"):
            BallPoint([])


class TestProjections:
    def test_projection_onto_zero_center_is_zero(self):
        x = np.array([0.1 + 0.2j, 0.3])
        assert np.all(project_onto([0.0, 0.0], x) == 0.0)

    def test_projection_is_idempotent(self):
        a = [0.3, 0.1j]
        x = np.array([0.2 - 0.1j, 0.4j])
        p = project_onto(a, x)
        np.testing.assert_allclose(project_onto(a, p), p, atol=1e-15)

    def test_split_reassembles_the_vector(self):
        a = [0.3, 0.1j, 0.0]
        x = np.array([0.2 - 0.1j, 0.4j, -0.25])
        np.testing.assert_allclose(
            project_onto(a, x) + project_complement(a, x), x, atol=1e-15
        )

    def test_complement_is_orthogonal_to_center(self):
        a = [0.3, 0.1j]
        x = np.array([0.2 - 0.1j, 0.4j])
        assert abs(inner(project_complement(a, x), a)) < 1e-15


class TestAutomorphism:
    def test_zero_center_negates(self):
        x = [0.3 + 0.1j, -0.2]
        img = ball_automorphism(BallPoint([0.0, 0.0]), x)
        np.testing.assert_array_equal(img.coords, -np.asarray(x, dtype=complex))

    def test_swaps_center_and_origin(self):
        a = BallPoint([0.4, 0.2j])
        assert np.all(ball_automorphism(a, a).coords == 0.0)
        np.testing.assert_allclose(
            ball_automorphism(a, [0.0, 0.0]).coords, a.coords, atol=1e-16
        )

    def test_mobius_shift_vanishes_at_center(self):
        a = [0.4, 0.2j]
        assert np.all(mobius_shift(a, a) == 0.0)

    @pytest.mark.parametrize(
        "a, x",
        [
            ([0.5], [-0.3]),
            ([0.7j], [0.2 + 0.2j]),
            ([0.3, 0.4j], [0.1 - 0.2j, 0.5]),
            ([0.9, 0.0, 0.0], [0.0, 0.85j, 0.1]),
        ],
    )
    def test_involution(self, a, x):
        center = BallPoint(a)
        once = ball_automorphism(center, x)
        twice = ball_automorphism(center, once)
        np.testing.assert_allclose(twice.coords, np.asarray(x, dtype=complex), atol=1e-14)

    @pytest.mark.parametrize(
        "a, x",
        [
            ([0.5], [-0.3]),
            ([0.3, 0.4j], [0.1 - 0.2j, 0.5]),
        ],
    )
    def test_norm_transformation_identity(self, a, x):
        # 1 - ||phi_a(x)||^2 = (1 - ||a||^2)(1 - ||x||^2) / |1 - <x, a>|^2
        img = ball_automorphism(BallPoint(a), x)
        lhs = 1.0 - img.sq_norm
        rhs = (
            (1.0 - BallPoint(a).sq_norm)
            * (1.0 - BallPoint(x).sq_norm)
            / abs(1.0 - inner(x, a)) ** 2
        )
        assert lhs == pytest.approx(rhs, rel=1e-13)

    def test_reports_escape_as_conditioning_error(self):
        # with center and point this close to the sphere the image rounds
        # onto the boundary, which the BallPoint constructor rejects
        edge = 1.0 - 2.0**-52
        with pytest.raises(ConditioningError, match="left the open ball"):
            ball_automorphism(BallPoint([edge]), [-edge])

    def test_conditioning_error_is_arithmetic(self):
        assert issubclass(ConditioningError, ArithmeticError)

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError, match="dimension mismatch"):
            ball_automorphism(BallPoint([0.1, 0.2]), [0.3])
