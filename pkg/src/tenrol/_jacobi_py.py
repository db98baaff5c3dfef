"""Pure numpy lane of the one-sided Jacobi kernel.

Shares its contract with the compiled module ``tenrol._jacobi_cy``;
``tenrol.unfold`` picks whichever is importable, preferring the compiled
one.
"""

from __future__ import annotations

import numpy as np

BACKEND = "python"


def jacobi_sweeps(
    cols: np.ndarray, vrows: np.ndarray, eps: float, max_sweeps: int
) -> int:
    """Orthogonalize the rows of ``cols`` in place by plane rotations.

    Parameters
    ----------
    cols : (n, m) complex128 ndarray
        Row k holds column k of the matrix being decomposed.
    vrows : (n, n) complex128 ndarray
        Row k holds column k of the accumulated right factor; receives
        the same rotations.
    eps : float
        Pairwise convergence threshold: the pair (p, q) is considered
        orthogonal when ``|cols[p]^H cols[q]| <= eps * |cols[p]| * |cols[q]|``.
    max_sweeps : int
        Cap on the number of full sweeps.

    Returns
    -------
    int
        Sweeps performed until a rotation-free sweep, or -1 if the cap
        was reached first.
    """
    n = cols.shape[0]
    if n < 2:
        return 0
    for sweep in range(max_sweeps):
        rotated = False
        for p in range(n - 1):
            for q in range(p + 1, n):
                app = np.vdot(cols[p], cols[p]).real
                aqq = np.vdot(cols[q], cols[q]).real
                apq = np.vdot(cols[p], cols[q])
                g = abs(apq)
                if g == 0.0 or g <= eps * np.sqrt(app * aqq):
                    continue
                rotated = True
                zeta = (aqq - app) / (2.0 * g)
                if zeta == 0.0:
                    t = 1.0
                else:
                    t = np.sign(zeta) / (abs(zeta) + np.hypot(1.0, zeta))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = c * t
                dc = np.conj(apq) / g
                qd = dc * cols[q]
                cols[p], cols[q] = c * cols[p] - s * qd, s * cols[p] + c * qd
                qv = dc * vrows[q]
                vrows[p], vrows[q] = c * vrows[p] - s * qv, s * vrows[p] + c * qv
        if not rotated:
            return sweep + 1
    return -1
