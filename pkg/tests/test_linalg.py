"""Matrix kernel tests.

Closed-form 2x2 eigenvalues serve as the independent reference for the
Jacobi solver; everything else is checked against hand-expanded small
cases or numpy's own primitives where those are not the unit under test.
"""

import math
import warnings

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cohdet.errors import NotHermitianError, ShapeError, SizeError
from cohdet.linalg import (
    JACOBI_MAX_SWEEPS,
    MAX_DIMENSION,
    as_matrix,
    frobenius_norm_sq,
    hermitian_eigenvalues,
    lambda_min,
    partial_trace,
    partial_transpose,
    tensor_product,
    trace_product,
)

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
KET_PLUS_STATE = np.full((2, 2), 0.5, dtype=complex)
BELL_PLUS = np.zeros((4, 4), dtype=complex)
BELL_PLUS[np.ix_([0, 3], [0, 3])] = 0.5


def closed_form_2x2(m):
    """Eigenvalues of a Hermitian 2x2 from the quadratic formula."""
    a = m[0, 0].real
    d = m[1, 1].real
    half_gap = math.hypot((a - d) / 2.0, abs(m[0, 1]))
    mid = (a + d) / 2.0
    return mid - half_gap, mid + half_gap


def random_hermitian(rng, n):
    g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return (g + g.conj().T) / 2.0


class TestTensorProduct:
    def test_identity_times_identity(self):
        assert np.array_equal(tensor_product(np.eye(2), np.eye(2)), np.eye(4))

    def test_projector_times_bell_fills_upper_block(self):
        ket0 = np.zeros((2, 2), dtype=complex)
        ket0[0, 0] = 1.0
        big = tensor_product(ket0, BELL_PLUS)
        assert big.shape == (8, 8)
        expected = np.zeros((8, 8), dtype=complex)
        expected[np.ix_([0, 3], [0, 3])] = 0.5
        assert np.array_equal(big, expected)

    def test_sigma_x_squared_indices(self):
        both = tensor_product(SIGMA_X, SIGMA_X)
        assert both[0, 3] == 1.0
        assert both[3, 0] == 1.0
        assert np.count_nonzero(both) == 4

    def test_trace_multiplicativity(self):
        rng = np.random.default_rng(11)
        for _ in range(100):
            a = random_hermitian(rng, 3)
            b = random_hermitian(rng, 4)
            left = np.trace(tensor_product(a, b))
            assert abs(left - np.trace(a) * np.trace(b)) < 1e-12

    def test_size_cap(self):
        side = int(math.isqrt(MAX_DIMENSION)) + 1
        block = np.eye(side)
        with pytest.raises(SizeError):
            tensor_product(block, block)


class TestPartialTrace:
    def test_bell_marginal_is_maximally_mixed(self):
        reduced = partial_trace(BELL_PLUS, (2, 2), keep=(1,))
        np.testing.assert_allclose(reduced, np.eye(2) / 2, atol=1e-15)

    def test_trace_preserved(self):
        rng = np.random.default_rng(5)
        rho = random_hermitian(rng, 12)
        for keep in ((0,), (1,), (0, 1), (1, 2), (0, 2)):
            reduced = partial_trace(rho, (2, 2, 3), keep=keep)
            assert abs(np.trace(reduced) - np.trace(rho)) < 1e-12

    def test_product_state_factor_recovery(self):
        rng = np.random.default_rng(6)
        a = random_hermitian(rng, 2)
        b = random_hermitian(rng, 3)
        big = tensor_product(a, b)
        np.testing.assert_allclose(
            partial_trace(big, (2, 3), keep=(0,)), a * np.trace(b), atol=1e-10
        )

    def test_dims_mismatch_rejected(self):
        with pytest.raises(ShapeError):
            partial_trace(np.eye(6), (2, 2), keep=(0,))
        with pytest.raises(ShapeError):
            partial_trace(np.eye(4), (2, 2), keep=())
        with pytest.raises(ShapeError):
            partial_trace(np.eye(4), (2, 2), keep=(2,))


class TestPartialTranspose:
    def test_product_state_stays_psd(self):
        rng = np.random.default_rng(7)
        g = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
        b = g @ g.conj().T
        rho = tensor_product(np.diag([0.3, 0.7]).astype(complex), b / np.trace(b))
        pt = partial_transpose(rho, (2, 3), subsystem="B")
        assert np.linalg.eigvalsh(pt)[0] > -1e-12

    def test_bell_min_eigenvalue(self):
        pt = partial_transpose(BELL_PLUS, (2, 2), subsystem="B")
        assert abs(np.linalg.eigvalsh(pt)[0] + 0.5) < 1e-12

    def test_involution_and_symmetry(self):
        rng = np.random.default_rng(8)
        rho = random_hermitian(rng, 6)
        for sub in ("A", "B"):
            pt = partial_transpose(rho, (2, 3), subsystem=sub)
            assert np.array_equal(partial_transpose(pt, (2, 3), subsystem=sub), rho)
            assert np.array_equal(pt, pt.conj().T)
            assert np.trace(pt) == np.trace(rho)

    def test_transposing_both_factors_is_full_transpose(self):
        rng = np.random.default_rng(9)
        rho = random_hermitian(rng, 6)
        double = partial_transpose(
            partial_transpose(rho, (2, 3), subsystem="A"), (2, 3), subsystem="B"
        )
        assert np.array_equal(double, rho.T)

    def test_bad_dims(self):
        with pytest.raises(ShapeError):
            partial_transpose(np.eye(6), (2, 2))
        with pytest.raises(ShapeError):
            partial_transpose(np.eye(4), (2, 2), subsystem="C")


class TestHermitianEigenvalues:
    def test_half_projector(self):
        result = hermitian_eigenvalues(np.diag([0.5, 0.0]))
        np.testing.assert_allclose(result.eigenvalues, [0.0, 0.5], atol=1e-15)
        assert result.converged

    def test_identity(self):
        result = hermitian_eigenvalues(np.eye(5))
        np.testing.assert_allclose(result.eigenvalues, np.ones(5), atol=1e-15)

    def test_rank_one_half_matrix(self):
        result = hermitian_eigenvalues(KET_PLUS_STATE)
        np.testing.assert_allclose(result.eigenvalues, [0.0, 1.0], atol=1e-15)

    def test_rejects_non_hermitian(self):
        with pytest.raises(NotHermitianError):
            hermitian_eigenvalues(np.array([[0.0, 1.0], [0.0, 0.0]]))

    def test_matches_closed_form_on_1000_random(self):
        rng = np.random.default_rng(101)
        for _ in range(1000):
            m = random_hermitian(rng, 2)
            low, high = closed_form_2x2(m)
            got = hermitian_eigenvalues(m).eigenvalues
            assert abs(got[0] - low) < 1e-10
            assert abs(got[1] - high) < 1e-10

    def test_sum_is_trace_product_is_determinant(self):
        rng = np.random.default_rng(13)
        for n in (2, 3):
            for _ in range(50):
                m = random_hermitian(rng, n)
                vals = hermitian_eigenvalues(m).eigenvalues
                assert abs(vals.sum() - np.trace(m).real) < 1e-10
                assert abs(np.prod(vals) - np.linalg.det(m).real) < 1e-8

    def test_ascending_order_and_read_only(self):
        rng = np.random.default_rng(17)
        result = hermitian_eigenvalues(random_hermitian(rng, 8))
        assert np.all(np.diff(result.eigenvalues) >= 0)
        assert not result.eigenvalues.flags.writeable
        assert 0 < result.sweeps_used <= JACOBI_MAX_SWEEPS

    def test_tiny_offdiagonal_against_split_diagonal(self):
        # A rotation angle computed naively from this matrix overflows in
        # the cotangent square; the solver must take the asymptotic branch.
        m = np.array([[0.0, 1e-200], [1e-200, 1.0]], dtype=complex)
        with warnings.catch_warnings():
            warnings.simplefilter("error")
            result = hermitian_eigenvalues(m)
        np.testing.assert_allclose(result.eigenvalues, [0.0, 1.0], atol=1e-12)

    def test_agrees_with_numpy_on_larger_matrices(self):
        rng = np.random.default_rng(23)
        for n in (4, 8, 16):
            m = random_hermitian(rng, n)
            got = hermitian_eigenvalues(m).eigenvalues
            np.testing.assert_allclose(got, np.linalg.eigvalsh(m), atol=1e-10)

    @settings(max_examples=60, deadline=None)
    @given(
        entries=st.lists(
            st.floats(min_value=-10.0, max_value=10.0, allow_nan=False),
            min_size=9,
            max_size=9,
        )
    )
    def test_hypothesis_3x3_matches_numpy(self, entries):
        raw = np.array(entries[:9], dtype=float)
        m = raw.reshape(3, 3) + 1j * np.diag([0.0, 0.0, 0.0])
        m = (m + m.conj().T) / 2.0
        got = hermitian_eigenvalues(m).eigenvalues
        np.testing.assert_allclose(got, np.linalg.eigvalsh(m), atol=1e-9)

    def test_lambda_min_shortcut(self):
        assert lambda_min(np.diag([0.4, -0.1, 0.7])) == pytest.approx(-0.1, abs=1e-14)


class TestNorms:
    def test_half_projector_norm(self):
        assert frobenius_norm_sq(np.diag([0.5, 0.0])) == pytest.approx(0.25, abs=1e-15)

    def test_zero_matrix(self):
        assert frobenius_norm_sq(np.zeros((3, 3))) == 0.0

    def test_matches_trace_form(self):
        rng = np.random.default_rng(19)
        m = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
        direct = frobenius_norm_sq(m)
        assert abs(direct - np.trace(m.conj().T @ m).real) < 1e-12


class TestTraceProduct:
    def test_identity_pair(self):
        assert trace_product(np.eye(2), np.eye(2)) == 2.0

    def test_disjoint_diagonals(self):
        assert trace_product(np.diag([1.0, 0, 0]), np.diag([0, 0, 2.0])) == 0.0

    def test_balanced_diagonal_blocks(self):
        block = np.diag([0.25, 0.25]).astype(complex)
        assert trace_product(block, block).real == pytest.approx(0.125, abs=1e-15)

    def test_matches_full_product(self):
        rng = np.random.default_rng(29)
        a = rng.standard_normal((5, 5)) + 1j * rng.standard_normal((5, 5))
        b = rng.standard_normal((5, 5)) + 1j * rng.standard_normal((5, 5))
        assert abs(trace_product(a, b) - np.trace(a @ b)) < 1e-12

    def test_shape_mismatch(self):
        with pytest.raises(ShapeError):
            trace_product(np.eye(2), np.eye(3))


class TestAsMatrix:
    def test_accepts_nested_lists(self):
        m = as_matrix([[1, 0], [0, 1]])
        assert m.dtype == complex
        assert np.array_equal(m, np.eye(2))

    def test_rejects_non_matrix_shapes(self):
        with pytest.raises(ShapeError):
            as_matrix(np.zeros(4))
        with pytest.raises(ShapeError):
            as_matrix(np.zeros((2, 2, 2)))

    def test_rejects_non_finite(self):
        with pytest.raises(ShapeError):
            as_matrix(np.array([[np.inf, 0], [0, 1]]))
        with pytest.raises(ShapeError):
            as_matrix(np.array([[np.nan, 0], [0, 1]]))
