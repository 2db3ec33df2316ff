"""
Constructive non-emptiness of the Clifford spectrum.

``witness_point`` returns a point where ``D <= 0``: the center itself when
``c <= 0``, otherwise ``center + sqrt(2*lambda0 - beta) * x0``. Since ``D``
grows like ``|x|^4``, a sign change (or a touching zero) lies on the ray
through ``x0``; ``refine_spectrum_point`` locates it.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import InternalConsistencyError, PreconditionError
from .localizer import localizer_gap
from .pauli import CanonicalParams
from .quartic import D_reduced, QuarticInvariants

WITNESS_TOL = 1e-9
REFINE_TOL = 1e-12
FALLBACK_TOL = 1e-10
MAX_BISECTIONS = 200
MAX_DOUBLINGS = 60
GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


class Branch(str, enum.Enum):
    NONPOSITIVE_C = "NonpositiveC"
    EIGENVECTOR_SCALED = "EigenvectorScaled"


@dataclass(frozen=True)
class WitnessResult:
    witness: np.ndarray
    d_value: float
    branch: Branch
    spectrum_point: np.ndarray | None = None
    gap_at_point: float | None = None
    center: np.ndarray | None = None

    def to_obj(self) -> dict:
        return {
            "witness": [float(v) for v in self.witness],
            "d_value": float(self.d_value),
            "branch": self.branch.value,
            "spectrum_point": None if self.spectrum_point is None
            else [float(v) for v in self.spectrum_point],
            "gap_at_point": None if self.gap_at_point is None else float(self.gap_at_point),
        }


def canonical_triple(inv: QuarticInvariants):
    """Centered canonical triple with the same localizer spectrum (up to the center shift)."""
    return CanonicalParams(np.zeros(3), inv.a, inv.alpha2, inv.alpha3).canonical_triple()


def witness_point(inv: QuarticInvariants, center=None, conjugator=None,
                  *, refine: bool = True) -> WitnessResult:
    """Point with ``D <= 0``, in the original coordinates.

    ``conjugator`` is accepted for completeness only: unitary conjugation
    leaves the spectrum in place, so just the center shift matters.
    With ``refine`` the result also carries a refined zero of ``D`` and the
    localizer gap there.
    """
    center = np.asarray(inv.center if center is None else center, dtype=float)
    cinv = inv.centered()
    scale = inv.scale

    if inv.c <= 0.0:
        branch = Branch.NONPOSITIVE_C
        local = np.zeros(3)
    else:
        branch = Branch.EIGENVECTOR_SCALED
        radicand = 2.0 * inv.lambda0 - inv.beta
        if radicand < -WITNESS_TOL * (1.0 + inv.beta):
            raise InternalConsistencyError(
                f"2*lambda0 - beta = {radicand:.3e} is negative; eigen-solve is inconsistent")
        local = math.sqrt(max(radicand, 0.0)) * np.asarray(inv.x0, dtype=float)

    d_value = float(D_reduced(cinv, local))
    if d_value > WITNESS_TOL * scale:
        raise InternalConsistencyError(f"D at witness is {d_value:.3e} > 0")

    result = WitnessResult(witness=center + local, d_value=d_value, branch=branch, center=center)
    if not refine:
        return result
    point = refine_spectrum_point(inv, result)
    gap = float(localizer_gap(canonical_triple(inv), point - center))
    return WitnessResult(result.witness, d_value, branch, point, gap, center)


def _ray_quartic(inv: QuarticInvariants, w: np.ndarray, u: np.ndarray):
    """``t -> D_reduced(w + t u)`` for unit ``u``, as a cheap scalar closure."""
    A = inv.coupling
    ww, wu = float(w @ w), float(w @ u)
    wAw, wAu, uAu = float(w @ A @ w), float(w @ A @ u), float(u @ A @ u)
    beta, c = inv.beta, inv.c

    def g(t: float) -> float:
        q = ww + 2.0 * t * wu + t * t
        return q * q + 2.0 * beta * q - 4.0 * (wAw + 2.0 * t * wAu + t * t * uAu) + c

    return g


def _golden_min(g, lo: float, hi: float, iters: int = 200) -> float:
    a, b = lo, hi
    x1 = b - GOLDEN * (b - a)
    x2 = a + GOLDEN * (b - a)
    g1, g2 = g(x1), g(x2)
    for _ in range(iters):
        if g1 <= g2:
            b, x2, g2 = x2, x1, g1
            x1 = b - GOLDEN * (b - a)
            g1 = g(x1)
        else:
            a, x1, g1 = x1, x2, g2
            x2 = a + GOLDEN * (b - a)
            g2 = g(x2)
        if b - a <= 1e-15 * max(1.0, abs(a), abs(b)):
            break
    return x1 if g1 <= g2 else x2


def refine_spectrum_point(inv: QuarticInvariants, start: WitnessResult) -> np.ndarray:
    """Zero of ``D`` on the ray from the witness along ``x0``, original coordinates."""
    center = np.asarray(start.center if start.center is not None else inv.center, dtype=float)
    scale = inv.scale
    w = np.asarray(start.witness, dtype=float) - center
    u = np.asarray(inv.x0, dtype=float)
    norm_u = float(np.linalg.norm(u))
    u = u / norm_u if norm_u > 0 else np.array([1.0, 0.0, 0.0])
    g = _ray_quartic(inv, w, u)

    g0 = g(0.0)
    if g0 > WITNESS_TOL * scale:
        raise PreconditionError(f"D at the starting point is {g0:.3e} > 0")
    if abs(g0) <= REFINE_TOL * scale:
        return center + w

    R = 1.0
    for _ in range(MAX_DOUBLINGS):
        if g(R) > 0.0:
            break
        R *= 2.0
    else:
        raise InternalConsistencyError("D stayed nonpositive along the ray; quartic growth violated")

    if g0 < 0.0:
        return center + w + _bisect(g, 0.0, g0, R, REFINE_TOL * scale) * u

    # no sign change: the witness sits at (or next to) a touching zero
    t = _golden_min(g, -R, R)
    gt = g(t)
    if gt < -REFINE_TOL * scale:
        t = _bisect(g, t, gt, R, REFINE_TOL * scale)
    elif gt > FALLBACK_TOL * scale:
        raise InternalConsistencyError(f"line minimum of D is {gt:.3e}; no zero located")
    return center + w + t * u


def _bisect(g, lo: float, glo: float, hi: float, tol: float) -> float:
    """Root of ``g`` in ``[lo, hi]`` given ``g(lo) < 0 < g(hi)``."""
    ghi = g(hi)
    for _ in range(MAX_BISECTIONS):
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break
        gm = g(mid)
        if abs(gm) <= tol:
            return mid
        if gm < 0.0:
            lo, glo = mid, gm
        else:
            hi, ghi = mid, gm
    return lo if abs(glo) <= abs(ghi) else hi
