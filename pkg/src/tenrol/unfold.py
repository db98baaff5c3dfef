"""Matricization and the singular value decomposition built on it.

``matricize`` maps a tensor to the matrix whose rows enumerate the row
index tuples and whose columns enumerate the column index tuples, both in
row-major order with the last index varying fastest.  The map is a ring
isomorphism: it sends the Einstein product to matrix multiplication and
the conjugate transpose to the matrix conjugate transpose.  Everything
spectral in this package (SVD, pseudoinverse, rank) is computed through
this matrix image and mapped back.

The SVD itself is a one-sided Jacobi: plane rotations orthogonalize the
columns of the matrix, chosen for its simplicity, its reliable convergence
at these sizes, and its high relative accuracy.  The rotation loop is the
hot kernel of the package and exists in two interchangeable lanes, a
Cython extension and a pure numpy fallback, selected at import time.
"""

from __future__ import annotations

import numpy as np

from .core import DenseTensor, ModeShape, NumericPolicy

try:  # pragma: no cover - exercised indirectly by the backend parity tests
    from . import _jacobi_cy as _kernel
except ImportError:  # pragma: no cover
    from . import _jacobi_py as _kernel

#: Name of the selected rotation kernel: "compiled" or "python".
KERNEL_BACKEND: str = _kernel.BACKEND

#: Sweep cap and pairwise orthogonality threshold of the Jacobi iteration.
MAX_SWEEPS: int = 30
JACOBI_EPS: float = 1e-14

__all__ = [
    "SvdConvergenceError",
    "KERNEL_BACKEND",
    "MAX_SWEEPS",
    "JACOBI_EPS",
    "matricize",
    "dematricize",
    "matrix_svd",
]


class SvdConvergenceError(RuntimeError):
    """Raised when the Jacobi iteration hits the sweep cap."""

    def __init__(self, sweeps: int):
        self.sweeps = sweeps
        super().__init__(f"one-sided Jacobi did not converge within {sweeps} sweeps")


def matricize(t: DenseTensor) -> np.ndarray:
    """Matrix image of ``t``: shape ``(row_count, col_count)``, writable copy."""
    return np.array(t.array.reshape(t.shape.row_count, t.shape.col_count))


def dematricize(mat: np.ndarray, shape: ModeShape) -> DenseTensor:
    """Inverse of :func:`matricize` for the given mode split.

    Raises
    ------
    ValueError
        If ``mat`` is not ``(row_count, col_count)`` for ``shape``.
    """
    arr = np.asarray(mat, dtype=np.complex128)
    expected = (shape.row_count, shape.col_count)
    if arr.shape != expected:
        raise ValueError(f"matrix shape {arr.shape} does not match mode split {shape} {expected}")
    return DenseTensor(shape, arr.reshape(-1))


def _complete_basis(u: np.ndarray, have: int) -> None:
    """Fill columns ``have:`` of the square matrix ``u`` with an orthonormal
    completion of its first ``have`` columns, using standard basis vectors."""
    dim = u.shape[0]
    k = have
    for j in range(dim):
        if k == dim:
            return
        cand = np.zeros(dim, dtype=np.complex128)
        cand[j] = 1.0
        # two Gram-Schmidt passes keep the completion orthonormal to working precision
        for _ in range(2):
            cand -= u[:, :k] @ (u[:, :k].conj().T @ cand)
        nrm = np.linalg.norm(cand)
        if nrm > 0.5:
            u[:, k] = cand / nrm
            k += 1
    if k != dim:  # pragma: no cover - standard basis always completes
        raise RuntimeError("orthonormal completion failed")


def matrix_svd(
    m: np.ndarray, policy: NumericPolicy | None = None
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Full SVD ``m = u @ diag(s) @ v.conj().T`` by one-sided Jacobi.

    Parameters
    ----------
    m : (rows, cols) array_like of complex
        Matrix to decompose.
    policy : NumericPolicy, optional
        Accepted for interface symmetry; the iteration thresholds are
        fixed (``JACOBI_EPS``, ``MAX_SWEEPS``) and no rank truncation
        happens here.

    Returns
    -------
    u : (rows, rows) ndarray
        Unitary left factor.
    s : (min(rows, cols),) ndarray
        Nonincreasing nonnegative singular values.
    v : (cols, cols) ndarray
        Unitary right factor.

    Raises
    ------
    SvdConvergenceError
        If the rotation sweeps do not converge within ``MAX_SWEEPS``.
    """
    mat = np.asarray(m, dtype=np.complex128)
    if mat.ndim != 2:
        raise ValueError(f"expected a matrix, got ndim {mat.ndim}")
    rows, cols = mat.shape
    if rows < cols:
        # orthogonalize the smaller column set and swap the factors back
        u, s, v = matrix_svd(mat.conj().T, policy)
        return v, s, u

    colrows = np.ascontiguousarray(mat.T)  # row k holds column k
    vrows = np.eye(cols, dtype=np.complex128)
    sweeps = _kernel.jacobi_sweeps(colrows, vrows, JACOBI_EPS, MAX_SWEEPS)
    if sweeps < 0:
        raise SvdConvergenceError(MAX_SWEEPS)

    s = np.linalg.norm(colrows, axis=1)
    order = np.argsort(-s, kind="stable")
    s = s[order]
    colrows = colrows[order]
    vrows = vrows[order]

    u = np.zeros((rows, rows), dtype=np.complex128)
    have = 0
    for k in range(cols):
        if s[k] > 0.0:
            u[:, have] = colrows[k] / s[k]
            have += 1
    if have < cols:
        # exactly-zero columns contribute nothing; shift their sigmas to the tail
        s = np.concatenate([s[:have], np.zeros(cols - have)])
    _complete_basis(u, have)
    return u, s, vrows.T
