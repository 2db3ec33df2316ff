"""
Direct construction of the 4x4 spectral localizer and its diagnostics.

``L_x = sum_j (A_j - x_j I) (x) sigma_j``. Everything here is computed from
the matrix itself (LU determinant, Jacobi eigenvalues), which makes this
module the brute-force reference for the closed-form quartic.

All functions accept a single point of shape ``(3,)`` or a stack ``(..., 3)``.
"""

from __future__ import annotations

import numpy as np

from .errors import InternalConsistencyError
from .linalg import jacobi_eigvalsh, lu_det
from .pauli import PAULI, HermitianTriple

IMAG_TOL = 1e-9


def _points(x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.shape[-1:] != (3,):
        raise ValueError(f"points must have trailing dimension 3, got shape {x.shape}")
    return x


def build_localizer(t: HermitianTriple, x) -> np.ndarray:
    x = _points(x)
    L = np.zeros(x.shape[:-1] + (4, 4), dtype=complex)
    for j, A in enumerate(t.matrices):
        L += np.kron(A, PAULI[j + 1])
        L -= x[..., j, None, None] * np.kron(PAULI[0], PAULI[j + 1])
    return L


def det_localizer(t: HermitianTriple, x):
    """Determinant of the localizer via complex LU; real part returned."""
    d = lu_det(build_localizer(t, x))
    bad = np.abs(d.imag) > IMAG_TOL * (1.0 + np.abs(d))
    if np.any(bad):
        raise InternalConsistencyError(
            f"localizer determinant has imaginary part {np.max(np.abs(d.imag)):.3e}")
    return d.real


def localizer_eigenvalues(t: HermitianTriple, x) -> np.ndarray:
    return jacobi_eigvalsh(build_localizer(t, x))


def localizer_gap(t: HermitianTriple, x):
    """Smallest singular value of the localizer (= smallest |eigenvalue|)."""
    return np.min(np.abs(localizer_eigenvalues(t, x)), axis=-1)


def quadratic_form(t: HermitianTriple, x) -> np.ndarray:
    x = _points(x)
    Q = np.zeros(x.shape[:-1] + (2, 2), dtype=complex)
    for j, A in enumerate(t.matrices):
        S = A - x[..., j, None, None] * PAULI[0]
        Q += S @ S
    return Q


def quadratic_form_gap(t: HermitianTriple, x):
    """Smallest eigenvalue of ``sum_j (A_j - x_j I)^2`` (closed form for 2x2)."""
    Q = quadratic_form(t, x)
    mean = (Q[..., 0, 0].real + Q[..., 1, 1].real) / 2
    half = (Q[..., 0, 0].real - Q[..., 1, 1].real) / 2
    return mean - np.hypot(half, np.abs(Q[..., 1, 0]))
