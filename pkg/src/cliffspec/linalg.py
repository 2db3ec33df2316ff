"""
Small dense kernels: cyclic Jacobi for Hermitian matrices and an LU determinant.

Both functions work on a single ``(n, n)`` matrix or a stack ``(..., n, n)``;
the stacked form is what makes grid-wide localizer diagnostics cheap.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import InternalConsistencyError

JACOBI_TOL = 1e-14
MAX_SWEEPS = 60


def jacobi_eigh(M, tol: float = JACOBI_TOL, max_sweeps: int = MAX_SWEEPS):
    """Eigen-decomposition of Hermitian (or real symmetric) matrices by cyclic Jacobi.

    Parameters
    ----------
    M : array_like, shape (..., n, n)
        Hermitian matrices. Real input stays real throughout.
    tol : float
        Sweeps stop once every off-diagonal magnitude is at most
        ``tol * ||M||_F`` (per matrix).
    max_sweeps : int
        Upper bound on cyclic sweeps before giving up.

    Returns
    -------
    w : ndarray, shape (..., n)
        Eigenvalues in ascending order.
    V : ndarray, shape (..., n, n)
        Unitary matrix whose columns are the matching eigenvectors.
    """
    A = np.array(M, copy=True)
    if not np.iscomplexobj(A):
        A = A.astype(np.float64)
    if A.ndim == 2:
        return _jacobi_single(A, tol, max_sweeps)
    batch_shape = A.shape[:-2]
    n = A.shape[-1]
    A = A.reshape((-1, n, n))
    complex_case = np.iscomplexobj(A)

    V = np.zeros_like(A)
    V[:, np.arange(n), np.arange(n)] = 1.0

    thresh = tol * np.sqrt(np.sum(np.abs(A) ** 2, axis=(1, 2)))
    pairs = [(p, q) for p in range(n - 1) for q in range(p + 1, n)]
    offdiag = ~np.eye(n, dtype=bool)

    for _ in range(max_sweeps):
        active = np.any(np.abs(A[:, offdiag]) > thresh[:, None], axis=1)
        if not active.any():
            break
        for p, q in pairs:
            b = A[:, p, q]
            mag = np.abs(b)
            rot = active & (mag > thresh) & (mag > 0.0)
            if not rot.any():
                continue
            safe = np.where(rot, mag, 1.0)
            app = A[:, p, p].real
            aqq = A[:, q, q].real
            theta = (aqq - app) / (2.0 * safe)
            t = np.sign(theta) / (np.abs(theta) + np.sqrt(theta * theta + 1.0))
            t = np.where(theta == 0.0, 1.0, t)
            c = 1.0 / np.sqrt(t * t + 1.0)
            s = t * c
            c = np.where(rot, c, 1.0)
            s = np.where(rot, s, 0.0)
            if complex_case:
                # phase that makes the (p, q) entry real before the real rotation
                ph = np.where(rot, b / safe, 1.0)
                eq = np.conj(ph)
            else:
                ph = np.where(rot, np.sign(b), 1.0)
                eq = ph

            # G = [[c, s], [-s*eq, c*eq]] acting on columns p, q; A <- G^H A G
            cp = A[:, :, p].copy()
            cq = A[:, :, q].copy()
            A[:, :, p] = c[:, None] * cp - (s * eq)[:, None] * cq
            A[:, :, q] = s[:, None] * cp + (c * eq)[:, None] * cq
            rp = A[:, p, :].copy()
            rq = A[:, q, :].copy()
            A[:, p, :] = c[:, None] * rp - (s * np.conj(eq))[:, None] * rq
            A[:, q, :] = s[:, None] * rp + (c * np.conj(eq))[:, None] * rq
            A[rot, p, q] = 0.0
            A[rot, q, p] = 0.0

            vp = V[:, :, p].copy()
            vq = V[:, :, q].copy()
            V[:, :, p] = c[:, None] * vp - (s * eq)[:, None] * vq
            V[:, :, q] = s[:, None] * vp + (c * eq)[:, None] * vq
    else:
        if np.any(np.abs(A[:, offdiag]) > thresh[:, None]):
            raise InternalConsistencyError(
                f"Jacobi iteration did not converge in {max_sweeps} sweeps")

    w = np.real(A[:, np.arange(n), np.arange(n)])
    order = np.argsort(w, axis=1, kind="stable")
    w = np.take_along_axis(w, order, axis=1)
    V = np.take_along_axis(V, order[:, None, :], axis=2)
    return w.reshape(batch_shape + (n,)), V.reshape(batch_shape + (n, n))


def _jacobi_single(M: np.ndarray, tol: float, max_sweeps: int):
    """Same rotations as the stacked kernel, on Python scalars (much lower overhead)."""
    n = M.shape[0]
    is_complex = np.iscomplexobj(M)
    A = M.tolist()
    V = [[1.0 if i == j else 0.0 for j in range(n)] for i in range(n)]
    thresh = tol * math.sqrt(sum(abs(v) ** 2 for row in A for v in row))

    for _ in range(max_sweeps):
        if all(abs(A[p][q]) <= thresh for p in range(n) for q in range(n) if p != q):
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                b = A[p][q]
                mag = abs(b)
                if mag <= thresh or mag == 0.0:
                    continue
                theta = (A[q][q].real - A[p][p].real) / (2.0 * mag)
                if theta == 0.0:
                    t = 1.0
                else:
                    t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                eq = (b / mag).conjugate() if is_complex else math.copysign(1.0, b)
                eqc = eq.conjugate() if is_complex else eq
                for i in range(n):
                    aip, aiq = A[i][p], A[i][q]
                    A[i][p] = c * aip - s * eq * aiq
                    A[i][q] = s * aip + c * eq * aiq
                rp, rq = A[p], A[q]
                A[p] = [c * x - s * eqc * y for x, y in zip(rp, rq)]
                A[q] = [s * x + c * eqc * y for x, y in zip(rp, rq)]
                A[p][q] = A[q][p] = 0.0
                for i in range(n):
                    vip, viq = V[i][p], V[i][q]
                    V[i][p] = c * vip - s * eq * viq
                    V[i][q] = s * vip + c * eq * viq
    else:
        if any(abs(A[p][q]) > thresh for p in range(n) for q in range(n) if p != q):
            raise InternalConsistencyError(
                f"Jacobi iteration did not converge in {max_sweeps} sweeps")

    w = np.array([A[i][i].real for i in range(n)])
    order = np.argsort(w, kind="stable")
    Vm = np.array(V, dtype=complex if is_complex else float)
    return w[order], Vm[:, order]


def jacobi_eigvalsh(M, tol: float = JACOBI_TOL):
    """Eigenvalues only, ascending."""
    return jacobi_eigh(M, tol=tol)[0]


def lu_det(M):
    """Determinant by Gaussian elimination with partial pivoting.

    Accepts ``(n, n)`` or ``(..., n, n)``; returns a scalar or an array of the
    batch shape, in the input's dtype family.
    """
    A = np.array(M, copy=True)
    if not np.iscomplexobj(A):
        A = A.astype(np.float64)
    batch_shape = A.shape[:-2]
    n = A.shape[-1]
    A = A.reshape((-1, n, n))
    m = A.shape[0]
    rows = np.arange(m)
    det = np.ones(m, dtype=A.dtype)

    for k in range(n):
        piv = k + np.argmax(np.abs(A[:, k:, k]), axis=1)
        swap = piv != k
        if swap.any():
            idx = rows[swap]
            tmp = A[idx, k, :].copy()
            A[idx, k, :] = A[idx, piv[swap], :]
            A[idx, piv[swap], :] = tmp
            det[swap] = -det[swap]
        pivot = A[:, k, k]
        zero = pivot == 0
        det = det * pivot
        if k + 1 < n:
            # scale by 1/|pivot| per real component, then undo the unit phase;
            # numpy's complex division overflows on subnormal divisors
            mag = np.where(zero, 1.0, np.abs(pivot))
            factors = _real_scale(A[:, k + 1:, k], mag[:, None])
            phase = np.where(zero, 1.0, _real_scale(pivot, mag))
            factors = factors * np.conj(phase)[:, None]
            factors[zero] = 0.0
            A[:, k + 1:, k:] -= factors[:, :, None] * A[:, None, k, k:]

    det = det.reshape(batch_shape)
    return det[()] if det.ndim == 0 else det


def _real_scale(z, r):
    """``z / r`` for real positive ``r`` without going through complex division."""
    if np.iscomplexobj(z):
        return (z.real / r) + 1j * (z.imag / r)
    return z / r
