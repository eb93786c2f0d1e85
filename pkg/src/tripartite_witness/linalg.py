"""Dense complex linear algebra used by every other module.

Matrices are plain ``numpy`` arrays of dtype ``complex128``.  Singular values
come from a one-sided (Hestenes) Jacobi iteration; the Hermitian eigensolver
delegates to LAPACK through ``numpy.linalg.eigvalsh``.
"""

import numpy as np

from .errors import ConvergenceError, NotHermitian

HERMITIAN_TOL = 1e-10
JACOBI_TOL = 1e-13
CLAMP_RATIO = 1e-12


def as_matrix(a):
    """Return ``a`` as a 2-D complex array, rejecting non-finite entries."""
    m = np.asarray(a, dtype=complex)
    if m.ndim == 1:
        m = m.reshape(1, -1)
    if m.ndim != 2:
        raise ValueError(f"expected a matrix, got an array with {m.ndim} dimensions")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix has non-finite entries")
    return m


def kron(a, b):
    """Kronecker product; entry ``(i*rb + k, j*cb + l)`` is ``a[i, j] * b[k, l]``."""
    a = as_matrix(a)
    b = as_matrix(b)
    ra, ca = a.shape
    rb, cb = b.shape
    out = a[:, None, :, None] * b[None, :, None, :]
    return out.reshape(ra * rb, ca * cb)


def dagger(a):
    return as_matrix(a).conj().T


def _jacobi_column_norms(g, max_sweeps):
    # Hestenes iteration: rotate column pairs until they are mutually orthogonal.
    n = g.shape[1]
    # columns this small relative to the whole matrix are numerically zero
    floor = 1e-30 * np.vdot(g, g).real
    for _ in range(max_sweeps):
        rotated = False
        for p in range(n - 1):
            for q in range(p + 1, n):
                gp = g[:, p]
                gq = g[:, q]
                alpha = np.vdot(gp, gp).real
                beta = np.vdot(gq, gq).real
                gamma = np.vdot(gp, gq)
                mod = abs(gamma)
                if mod == 0.0 or mod <= JACOBI_TOL * np.sqrt(alpha * beta) or min(alpha, beta) <= floor:
                    continue
                rotated = True
                phase = gamma / mod
                zeta = (beta - alpha) / (2.0 * mod)
                t = np.copysign(1.0, zeta) / (abs(zeta) + np.hypot(1.0, zeta))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = c * t
                gq_aligned = gq / phase
                g[:, p], g[:, q] = c * gp - s * gq_aligned, s * gp + c * gq_aligned
        if not rotated:
            return np.linalg.norm(g, axis=0)
    raise ConvergenceError(f"Jacobi SVD did not converge after {max_sweeps} sweeps")


def singular_values(a):
    """Singular values of ``a`` in descending order.

    Values below ``1e-12 * sigma_max`` are set to exactly zero so that trace
    norms of sparse structured matrices carry no rank noise.
    """
    m = as_matrix(a)
    rows, cols = m.shape
    k = min(rows, cols)
    if k == 0:
        return np.zeros(0)
    scale = np.max(np.abs(m))
    if scale == 0:
        return np.zeros(k)
    m = m / scale
    if rows < cols:
        m = m.conj().T
    # a QR step leaves a square factor with the same singular values
    g = np.linalg.qr(m, mode="r") if m.shape[0] > m.shape[1] else m.copy()
    g = np.array(g, dtype=complex, order="F")
    sv = _jacobi_column_norms(g, max_sweeps=100 * max(k, 1))
    sv = np.sort(sv)[::-1] * scale
    if sv[0] > 0:
        sv[sv < CLAMP_RATIO * sv[0]] = 0.0
    return sv


def trace_norm(a):
    """Sum of singular values, ``tr sqrt(a^dagger a)``."""
    return float(np.sum(singular_values(a)))


def hermiticity_error(a):
    m = as_matrix(a)
    if m.shape[0] != m.shape[1]:
        return np.inf
    return float(np.max(np.abs(m - m.conj().T), initial=0.0))


def is_hermitian(a, tol=HERMITIAN_TOL):
    return hermiticity_error(a) <= tol


def hermitian_eigenvalues(a, tol=HERMITIAN_TOL):
    """Real spectrum of a Hermitian matrix, descending.

    Raises
    ------
    NotHermitian
        If ``a`` deviates from its adjoint by more than ``tol`` entrywise.
    """
    m = as_matrix(a)
    err = hermiticity_error(m)
    if err > tol:
        raise NotHermitian(f"matrix deviates from its adjoint by {err:.3g}")
    m = (m + m.conj().T) / 2
    return np.linalg.eigvalsh(m)[::-1]


def is_unitary(u, tol=1e-10):
    u = as_matrix(u)
    if u.shape[0] != u.shape[1]:
        return False
    return np.max(np.abs(u @ u.conj().T - np.eye(u.shape[0]))) <= tol
