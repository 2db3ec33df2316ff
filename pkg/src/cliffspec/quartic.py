"""
Closed-form determinant ``D(x)`` of the localizer and its scalar invariants.

Two evaluations are provided:

* :func:`D_full` works in any frame and keeps the trace centers, written as
  products of sums exactly as derived.
* :func:`D_reduced` is the centered quadratic-form version
  ``|x|^4 + 2|x|^2 beta - 4 <Ax, x> + c`` used by the witness and mesher.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import InternalConsistencyError, PreconditionError
from .linalg import jacobi_eigh
from .pauli import CanonicalParams

CROSSCHECK_RTOL = 1e-9


@dataclass(frozen=True)
class QuarticInvariants:
    """Scalars derived from the canonical parameters.

    ``coupling`` is the 3x3 symmetric matrix whose top eigenpair
    ``(lambda0, x0)`` locates the witness point. ``a``, ``alpha2``,
    ``alpha3`` and ``center`` are carried along so that evaluations need
    nothing else.
    """

    norm_a_sq: float
    alpha_sq: float
    beta: float
    delta: float
    c: float
    d: float
    e: float
    f: float
    coupling: np.ndarray
    lambda0: float
    x0: np.ndarray
    a: np.ndarray
    alpha2: complex
    alpha3: complex
    center: np.ndarray

    @property
    def scale(self) -> float:
        """Natural magnitude of D values for this instance, ``(1 + beta)^2``."""
        return (1.0 + self.beta) ** 2

    @property
    def is_centered(self) -> bool:
        return not np.any(self.center)

    def centered(self) -> "QuarticInvariants":
        if self.is_centered:
            return self
        return replace(self, center=np.zeros(3))


def coupling_matrix(a, alpha2: complex, alpha3: complex) -> np.ndarray:
    a1, a2, a3 = (float(v) for v in a)
    im = (alpha2 * alpha3).imag
    return np.array([
        [a1 * a1, a1 * a2, a1 * a3],
        [a1 * a2, a2 * a2 + abs(alpha2) ** 2, a2 * a3 + im],
        [a1 * a3, a2 * a3 + im, a3 * a3 + abs(alpha3) ** 2],
    ])


def _e_value(a, alpha2: complex, alpha3: complex) -> float:
    a1, a2, a3 = (float(v) for v in a)
    im = (alpha2 * alpha3).imag
    w = abs(alpha2 ** 2 - alpha3.conjugate() ** 2) ** 2
    return (2 * abs(alpha2) ** 2 * (a1 * a1 - a2 * a2 + a3 * a3)
            + 2 * abs(alpha3) ** 2 * (a1 * a1 + a2 * a2 - a3 * a3)
            - 8 * im * a2 * a3 - w)


def invariants(p: CanonicalParams) -> QuarticInvariants:
    a = np.asarray(p.a, dtype=float)
    al2, al3 = p.alpha2, p.alpha3
    norm_a_sq = float(a @ a)
    alpha_sq = abs(al2) ** 2 + abs(al3) ** 2
    beta = norm_a_sq + alpha_sq
    delta = abs(al2 * a[1] + 1j * al3.conjugate() * a[2])
    w = abs(al2 ** 2 - al3.conjugate() ** 2) ** 2
    c = norm_a_sq ** 2 - 2 * alpha_sq * norm_a_sq + 4 * delta ** 2 + w
    re23 = (al2 * al3).real
    im23 = (al2 * al3).imag
    d = norm_a_sq * alpha_sq - delta ** 2 + re23 ** 2
    e = _e_value(a, al2, al3)
    f = math.sqrt((abs(al2) ** 2 - abs(al3) ** 2) ** 2 + 4 * im23 ** 2)

    ref = max(1.0, norm_a_sq ** 2, abs(e), abs(c))
    if abs(c - (norm_a_sq ** 2 - e)) > CROSSCHECK_RTOL * ref:
        raise InternalConsistencyError(
            f"c = {c!r} disagrees with |a|^4 - e = {norm_a_sq ** 2 - e!r}")

    A = coupling_matrix(a, al2, al3)
    evals, evecs = jacobi_eigh(A)
    lambda0 = float(evals[-1])
    x0 = evecs[:, -1].copy()
    lead = np.flatnonzero(np.abs(x0) > 1e-12)
    if lead.size and x0[lead[0]] < 0:
        x0 = -x0

    return QuarticInvariants(
        norm_a_sq=norm_a_sq, alpha_sq=alpha_sq, beta=beta, delta=float(delta),
        c=float(c), d=float(d), e=float(e), f=f, coupling=A,
        lambda0=lambda0, x0=x0, a=a.copy(), alpha2=al2, alpha3=al3,
        center=np.asarray(p.center, dtype=float).copy(),
    )


def D_full(p: CanonicalParams, x):
    """Determinant of the localizer from the canonical parameters, any frame."""
    x = np.asarray(x, dtype=float)
    y1 = p.center[0] - x[..., 0]
    y2 = p.center[1] - x[..., 1]
    y3 = p.center[2] - x[..., 2]
    a1, a2, a3 = p.a
    n2 = abs(p.alpha2) ** 2
    n3 = abs(p.alpha3) ** 2
    im = (p.alpha2 * p.alpha3).imag
    w = abs(p.alpha2 ** 2 - p.alpha3.conjugate() ** 2) ** 2

    minus = (y1 - a1) ** 2 + (y2 - a2) ** 2 + (y3 - a3) ** 2
    plus = (y1 + a1) ** 2 + (y2 + a2) ** 2 + (y3 + a3) ** 2
    q1 = y1 ** 2 - a1 ** 2
    q2 = y2 ** 2 - a2 ** 2
    q3 = y3 ** 2 - a3 ** 2
    return (minus * plus
            + 2 * n2 * (q1 - q2 + q3)
            + 2 * n3 * (q1 + q2 - q3)
            - 4 * im * ((y2 + a2) * (y3 - a3) + (y2 - a2) * (y3 + a3))
            + w)


def D_reduced(inv: QuarticInvariants, x):
    """``|x|^4 + 2|x|^2 beta - 4 <A x, x> + c`` for centered invariants."""
    if not inv.is_centered:
        raise PreconditionError(
            "D_reduced needs trace-centered invariants; use inv.centered() and shift x by the center")
    x = np.asarray(x, dtype=float)
    x1, x2, x3 = x[..., 0], x[..., 1], x[..., 2]
    A = inv.coupling
    # elementwise only, so every point's value is independent of batch layout
    r2 = x1 * x1 + x2 * x2 + x3 * x3
    xAx = (A[0, 0] * x1 * x1 + A[1, 1] * x2 * x2 + A[2, 2] * x3 * x3
           + 2.0 * (A[0, 1] * x1 * x2 + A[0, 2] * x1 * x3 + A[1, 2] * x2 * x3))
    return r2 * r2 + 2.0 * r2 * inv.beta - 4.0 * xAx + inv.c


def symmetry_center(p: CanonicalParams) -> np.ndarray:
    return np.array(p.center, dtype=float)


def growth_radius(inv: QuarticInvariants) -> float:
    """Radius beyond which ``D_reduced > 0`` is guaranteed."""
    return math.sqrt(2 * inv.lambda0 + math.sqrt(max(0.0, -inv.c)) + 1.0)
