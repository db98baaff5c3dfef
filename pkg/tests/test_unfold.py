"""Matricization bridge and the one-sided Jacobi SVD."""

from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose

import golden
from tenrol import (
    KERNEL_BACKEND,
    ModeShape,
    SvdConvergenceError,
    as_tensor,
    dematricize,
    identity,
    matricize,
    matrix_svd,
    zeros,
)
from tenrol import _jacobi_py


def bareiss_det(mat: list[list[int]]) -> int:
    """Fraction-free determinant, exact for integer matrices."""
    m = [[Fraction(x) for x in row] for row in mat]
    n = len(m)
    sign = 1
    prev = Fraction(1)
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if m[r][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev
        prev = m[k][k]
    det = sign * m[n - 1][n - 1]
    assert det.denominator == 1
    return int(det)


def loop_matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Naive triple loop, independent of BLAS."""
    n, k = a.shape
    k2, m = b.shape
    assert k == k2
    out = np.zeros((n, m), dtype=np.complex128)
    for i in range(n):
        for j in range(m):
            acc = 0.0 + 0.0j
            for p in range(k):
                acc += a[i, p] * b[p, j]
            out[i, j] = acc
    return out


class TestMatricize:
    def test_matrix_tensor_is_unchanged(self, rng):
        a = golden.random_tensor(rng, ModeShape((3,), (2,)))
        assert np.array_equal(matricize(a), a.array)

    def test_row_major_tuple_order(self):
        # Entry (i, j; k, l) lands at row 2(i-1)+(j-1), column 2(k-1)+(l-1).
        arr = np.zeros((2, 2, 2, 2))
        arr[1, 0, 0, 1] = 7.0
        m = matricize(as_tensor(arr, (2, 2), (2, 2)))
        assert m[2, 1] == 7.0
        assert np.count_nonzero(m) == 1

    def test_golden_matricization_is_the_expected_integer_matrix(self):
        m = matricize(golden.golden_a())
        want = np.array([
            [0, 0, 1, 1],
            [0, 1, -1, 0],
            [0, 0, 0, -1],
            [1, 0, 0, 0],
        ], dtype=np.complex128)
        assert np.array_equal(m, want)

    def test_golden_matricization_is_invertible(self):
        m = matricize(golden.golden_a()).real.astype(int)
        assert bareiss_det(m.tolist()) == -1

    def test_identity_matricizes_to_eye(self):
        assert np.array_equal(matricize(identity((2, 2))), np.eye(4))
        assert np.array_equal(
            dematricize(np.eye(4, dtype=np.complex128), golden.SQ22).array,
            identity((2, 2)).array,
        )

    def test_roundtrip_is_bit_exact_on_golden(self):
        a = golden.golden_a()
        back = dematricize(matricize(a), a.shape)
        assert np.array_equal(back.array, a.array)

    @given(st.integers(0, 2**32 - 1))
    @settings(max_examples=25, deadline=None)
    def test_roundtrip_is_bit_exact(self, seed):
        r = np.random.default_rng(seed)
        shape = ModeShape((2, 3), (2, 2))
        a = golden.random_tensor(r, shape)
        back = dematricize(matricize(a), shape)
        assert np.array_equal(back.array, a.array)

    def test_dematricize_validates_matrix_shape(self):
        with pytest.raises(ValueError, match="does not match mode split"):
            dematricize(np.zeros((3, 4), dtype=np.complex128), golden.SQ22)

    def test_adjoint_commutes_with_matricization(self, rng):
        a = golden.random_tensor(rng, ModeShape((2, 2), (3,)))
        assert np.array_equal(matricize(a.H), matricize(a).conj().T)

    def test_product_homomorphism_against_loop_oracle(self):
        a, b, c = golden.trace_triple()
        ma, mb, mc = matricize(a), matricize(b), matricize(c)
        assert_allclose(matricize(a @ b), loop_matmul(ma, mb), atol=1e-13)
        two_step = loop_matmul(loop_matmul(mc, mb), ma)
        assert_allclose(matricize(c @ b @ a), two_step, atol=1e-13)

    def test_product_homomorphism_random_pairs(self, rng):
        shapes = [
            (ModeShape((2,), (3,)), ModeShape((3,), (2,))),
            (ModeShape((2, 2), (2,)), ModeShape((2,), (3,))),
            (ModeShape((2, 2), (2, 2)), ModeShape((2, 2), (2,))),
        ]
        for sa, sb in shapes:
            for _ in range(10):
                a = golden.random_tensor(rng, sa)
                b = golden.random_tensor(rng, sb)
                lhs = matricize(a @ b)
                rhs = matricize(a) @ matricize(b)
                scale = max(1.0, a.norm * b.norm)
                assert np.linalg.norm(lhs - rhs) <= 1e-13 * scale


class TestMatrixSvd:
    def test_diagonal_two_by_two(self):
        u, s, v = matrix_svd(np.diag([3.0, 2.0]).astype(np.complex128))
        assert_allclose(s, [3.0, 2.0], atol=1e-14)
        assert_allclose((u * s) @ v.conj().T, np.diag([3.0, 2.0]), atol=1e-13)

    def test_zero_matrix(self):
        u, s, v = matrix_svd(np.zeros((3, 2), dtype=np.complex128))
        assert_allclose(s, 0.0, atol=0)
        assert_allclose(u @ u.conj().T, np.eye(3), atol=1e-13)
        assert_allclose(v @ v.conj().T, np.eye(2), atol=1e-13)

    def test_one_by_one(self):
        u, s, v = matrix_svd(np.array([[-2.0j]], dtype=np.complex128))
        assert_allclose(s, [2.0], atol=1e-15)
        assert_allclose((u * s) @ v.conj().T, [[-2.0j]], atol=1e-14)

    @pytest.mark.parametrize("shape", [(4, 3), (3, 5), (4, 4), (6, 2)])
    def test_factor_invariants_random(self, rng, shape):
        for _ in range(5):
            m = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
            u, s, v = matrix_svd(m)
            assert u.shape == (shape[0], shape[0])
            assert v.shape == (shape[1], shape[1])
            assert s.shape == (min(shape),)
            assert np.all(np.diff(s) <= 1e-13)
            assert np.all(s >= 0.0)
            assert_allclose(u.conj().T @ u, np.eye(shape[0]), atol=1e-12)
            assert_allclose(v.conj().T @ v, np.eye(shape[1]), atol=1e-12)
            k = min(shape)
            recon = (u[:, :k] * s) @ v[:, :k].conj().T
            assert np.linalg.norm(recon - m) <= 1e-12 * max(1.0, np.linalg.norm(m))

    def test_rank_deficient_repeated_columns(self):
        col = np.array([1.0, 2.0, 2.0], dtype=np.complex128)
        m = np.stack([col, col, 3.0 * col], axis=1)
        u, s, v = matrix_svd(m)
        assert np.sum(s > 1e-12) == 1
        recon = (u[:, :3] * s) @ v[:, :3].conj().T
        assert np.linalg.norm(recon - m) <= 1e-12 * np.linalg.norm(m)

    def test_singular_values_match_reference(self, rng):
        for _ in range(10):
            m = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
            _, s, _ = matrix_svd(m)
            assert_allclose(s, np.linalg.svd(m, compute_uv=False), atol=1e-11)

    def test_singular_values_invariant_under_unitary_factors(self, rng):
        m = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
        q = golden.random_unitary_matrix(rng, 4)
        w = golden.random_unitary_matrix(rng, 4)
        _, s0, _ = matrix_svd(m)
        _, s1, _ = matrix_svd(q @ m @ w)
        assert_allclose(s1, s0, atol=1e-10 * max(1.0, s0[0]))

    def test_convergence_error_carries_sweep_count(self):
        err = SvdConvergenceError(30)
        assert err.sweeps == 30
        assert "30" in str(err)


class TestKernelParity:
    def test_backend_marker(self):
        assert KERNEL_BACKEND in {"compiled", "python"}
        assert _jacobi_py.BACKEND == "python"

    def test_pure_python_kernel_direct(self, rng):
        m = rng.standard_normal((4, 3)) + 1j * rng.standard_normal((4, 3))
        cols = np.ascontiguousarray(m.T.copy())
        vrows = np.eye(3, dtype=np.complex128)
        sweeps = _jacobi_py.jacobi_sweeps(cols, vrows, 1e-14, 30)
        assert sweeps > 0
        s = np.linalg.norm(cols, axis=1)
        # Rotations preserve the factorization m = (cols^T stacked) with V.
        recon = cols.T @ vrows.conj()
        assert np.linalg.norm(recon - m) <= 1e-12 * np.linalg.norm(m)
        assert_allclose(np.sort(s)[::-1], np.linalg.svd(m, compute_uv=False), atol=1e-11)

    def test_single_column_returns_immediately(self):
        cols = np.ones((1, 3), dtype=np.complex128)
        vrows = np.eye(1, dtype=np.complex128)
        assert _jacobi_py.jacobi_sweeps(cols, vrows, 1e-14, 30) == 0

    def test_compiled_and_python_lanes_agree(self, rng, monkeypatch):
        from tenrol import unfold as unfold_mod
        try:
            from tenrol import _jacobi_cy
        except ImportError:
            pytest.skip("compiled kernel not built")
        assert _jacobi_cy.BACKEND == "compiled"
        for shape in [(4, 4), (5, 3), (3, 5)]:
            m = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
            monkeypatch.setattr(unfold_mod, "_kernel", _jacobi_py)
            up, sp, vp = unfold_mod.matrix_svd(m)
            monkeypatch.setattr(unfold_mod, "_kernel", _jacobi_cy)
            uc, sc, vc = unfold_mod.matrix_svd(m)
            assert_allclose(sp, sc, atol=1e-12 * max(1.0, sp[0]))
            k = min(shape)
            rp = (up[:, :k] * sp) @ vp[:, :k].conj().T
            rc = (uc[:, :k] * sc) @ vc[:, :k].conj().T
            assert np.linalg.norm(rp - m) <= 1e-12 * max(1.0, np.linalg.norm(m))
            assert np.linalg.norm(rc - m) <= 1e-12 * max(1.0, np.linalg.norm(m))

    def test_orthogonal_input_needs_no_rotations(self):
        cols = np.ascontiguousarray(np.eye(3, dtype=np.complex128))
        vrows = np.eye(3, dtype=np.complex128)
        assert _jacobi_py.jacobi_sweeps(cols, vrows, 1e-14, 30) == 1
        assert np.array_equal(vrows, np.eye(3))
