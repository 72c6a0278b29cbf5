import numpy as np
import pytest
import scipy.linalg
from hypothesis import given, settings, strategies as st

from conftest import cnormal, random_unitary
from gff import ClosedSubspace, DimensionMismatch, image_under, projection, projection_swap_residual
from gff.linalg import DEFAULT_TOL, max_abs

EQ = DEFAULT_TOL.eq_tol


def random_subspace(rng, n, r):
    return ClosedSubspace.span(cnormal(rng, n, r))


class TestProjection:
    def test_first_axis(self):
        v = ClosedSubspace(np.array([[1], [0]]))
        np.testing.assert_array_equal(projection(v), np.diag([1, 0]))

    def test_full_space(self):
        np.testing.assert_array_equal(projection(ClosedSubspace.full(2)), np.eye(2))

    def test_diagonal_line(self):
        # outer product of (1,1)/sqrt2 with itself, worked by hand
        v = ClosedSubspace(np.array([[1], [1]]) / np.sqrt(2))
        np.testing.assert_allclose(projection(v), np.full((2, 2), 0.5), atol=1e-15)

    def test_zero_subspace(self):
        z = ClosedSubspace.zero(3)
        assert z.rank == 0 and z.ambient_dim == 3
        np.testing.assert_array_equal(projection(z), np.zeros((3, 3)))

    def test_rejects_non_orthonormal_basis(self):
        with pytest.raises(ValueError):
            ClosedSubspace(np.array([[2.0], [0.0]]))

    def test_basis_is_read_only_copy(self):
        b = np.eye(2, dtype=complex)
        v = ClosedSubspace(b)
        b[0, 0] = 5
        assert v.basis[0, 0] == 1
        with pytest.raises(ValueError):
            v.basis[0, 0] = 3

    @settings(max_examples=50, deadline=None)
    @given(seed=st.integers(0, 2**32 - 1), n=st.integers(1, 8), r=st.integers(1, 8))
    def test_projector_properties(self, seed, n, r):
        v = random_subspace(np.random.default_rng(seed), n, min(r, n))
        p = v.projection
        assert max_abs(p @ p - p) <= 10 * EQ
        assert max_abs(p - p.conj().T) <= 10 * EQ
        assert max_abs(p @ v.basis - v.basis) <= 10 * EQ
        assert np.trace(p).real == pytest.approx(v.rank, abs=1e-10)


class TestImageUnder:
    def test_identity(self, rng):
        v = random_subspace(rng, 4, 2)
        assert image_under(np.eye(4), v).same_as(v)

    def test_zero_operator(self, rng):
        w = image_under(np.zeros((3, 4)), random_subspace(rng, 4, 2))
        assert w.rank == 0 and w.ambient_dim == 3

    def test_rank_drop_against_svd(self):
        t = np.array([[1, 1], [0, 0]])
        w = image_under(t, ClosedSubspace.full(2))
        q = scipy.linalg.orth(t.astype(complex))
        assert w.rank == 1
        assert max_abs(w.projection - q @ q.conj().T) <= EQ
        np.testing.assert_allclose(w.projection, np.diag([1, 0]), atol=1e-15)

    def test_rectangular_operator(self, rng):
        w = image_under(cnormal(rng, 5, 3), random_subspace(rng, 3, 2))
        assert (w.ambient_dim, w.rank) == (5, 2)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            image_under(np.eye(3), ClosedSubspace.full(2))

    @settings(max_examples=50, deadline=None)
    @given(seed=st.integers(0, 2**32 - 1), n=st.integers(1, 8), r=st.integers(1, 8))
    def test_composition(self, seed, n, r):
        rng = np.random.default_rng(seed)
        v = random_subspace(rng, n, min(r, n))
        s, t = cnormal(rng, n, n), cnormal(rng, n, n)
        two_step = image_under(t, image_under(s, v))
        assert two_step.same_as(image_under(t @ s, v), tol=10 * EQ)


class TestProjectionSwap:
    def test_identity(self, rng):
        general, unitary = projection_swap_residual(np.eye(3), random_subspace(rng, 3, 2))
        assert general == pytest.approx(0, abs=1e-14) and unitary == pytest.approx(0, abs=1e-14)

    def test_unitary(self, rng):
        t = random_unitary(rng, 5)
        v = random_subspace(rng, 5, 2)
        # both sides by direct matrix arithmetic
        p_v, p_tv = v.projection, image_under(t, v).projection
        assert max_abs(p_tv @ t - t @ p_v) <= 10 * EQ
        general, unitary = projection_swap_residual(t, v)
        assert general <= 10 * EQ and unitary is not None and unitary <= 10 * EQ

    def test_non_unitary_suppresses_second_identity(self, rng):
        t = cnormal(rng, 4, 4)
        general, unitary = projection_swap_residual(t, random_subspace(rng, 4, 2))
        assert general <= 10 * EQ
        assert unitary is None

    def test_non_unitary_breaks_second_identity(self):
        # P_{TV} T = T P_V needs unitarity: shear e_2 into span{e_1, e_2}
        t = np.array([[1.0, 1.0], [0.0, 1.0]])
        v = ClosedSubspace(np.array([[1.0], [0.0]]))
        p_tv = image_under(t, v).projection
        assert max_abs(p_tv @ t - t @ v.projection) > 0.5

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            projection_swap_residual(np.ones((2, 3)), ClosedSubspace.full(3))

    def test_holds_for_200_random_pairs(self):
        rng = np.random.default_rng(7)
        worst = 0.0
        for _ in range(200):
            n = int(rng.integers(1, 9))
            v = random_subspace(rng, n, int(rng.integers(1, n + 1)))
            general, _ = projection_swap_residual(cnormal(rng, n, n), v)
            worst = max(worst, general)
        assert worst <= 10 * EQ
