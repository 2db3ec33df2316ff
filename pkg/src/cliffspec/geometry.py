"""
Geometric classification of the Clifford spectrum (centered frame).

``D(x) = (d(x, F+) d(x, F-))^2 - H(x)`` with foci ``F+- = +-a``: the zero set
is where a Cassini surface of level ``r`` meets the quadric ``H = r``. A
rotation about the ``x1`` axis diagonalizes ``H``; its invariants ``e`` and
``f`` and the constant ``c`` drive the case split below.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import PreconditionError
from .quartic import QuarticInvariants

ZERO_TOL = 1e-12


class SpectrumKind(str, enum.Enum):
    TWO_FOCI_POINTS = "TwoFociPoints"
    SINGLE_FOCUS_POINT = "SingleFocusPoint"
    DEGENERATE_DIAGONAL_FAMILY = "DegenerateDiagonalFamily"
    CASSINI_HYPERBOLOID = "CassiniHyperboloid"


class Situation(str, enum.Enum):
    E_POSITIVE = "EPositive"
    E_ZERO = "EZero"
    E_NEGATIVE = "ENegative"


class ComponentsHint(str, enum.Enum):
    CONNECTED = "Connected"
    TWO_COMPONENTS = "TwoComponents"
    UNKNOWN = "Unknown"


class CassiniPhase(str, enum.Enum):
    FOCI_ONLY = "FociOnly"
    TWO_LOOPS = "TwoLoops"
    LEMNISCATE = "Lemniscate"
    ONE_LOOP = "OneLoop"
    SPHERE_LIKE = "SphereLike"
    POINT = "Point"


@dataclass(frozen=True)
class SpectrumClassification:
    kind: SpectrumKind
    foci: tuple[np.ndarray, np.ndarray]
    f_value: float
    e_value: float
    situation: Situation
    theta: float
    components_hint: ComponentsHint

    def to_obj(self) -> dict:
        return {
            "kind": self.kind.value,
            "foci": [[float(v) for v in F] for F in self.foci],
            "f_value": float(self.f_value),
            "e_value": float(self.e_value),
            "situation": self.situation.value,
            "theta": float(self.theta),
            "components_hint": self.components_hint.value,
        }


class GCoefficients(NamedTuple):
    """Coefficients of ``H`` in the rotated coordinates ``y``."""

    y1y1: float
    y2y2: float
    y3y3: float
    y2y3: float
    const: float


def _abs_sq(z: complex) -> float:
    return z.real * z.real + z.imag * z.imag


def situation_of(inv: QuarticInvariants) -> Situation:
    tol = ZERO_TOL * (1.0 + inv.norm_a_sq ** 2)
    if inv.e > tol:
        return Situation.E_POSITIVE
    if inv.e < -tol:
        return Situation.E_NEGATIVE
    return Situation.E_ZERO


def classify(inv: QuarticInvariants) -> SpectrumClassification:
    Fp = np.array(inv.a, dtype=float)
    foci = (Fp, -Fp)
    f_zero = inv.f <= ZERO_TOL * (1.0 + inv.alpha_sq)
    situation = situation_of(inv)
    theta = 0.0

    if f_zero and math.sqrt(inv.alpha_sq) <= ZERO_TOL:
        if math.sqrt(inv.norm_a_sq) <= ZERO_TOL:
            kind, hint = SpectrumKind.SINGLE_FOCUS_POINT, ComponentsHint.CONNECTED
        else:
            kind, hint = SpectrumKind.TWO_FOCI_POINTS, ComponentsHint.TWO_COMPONENTS
    elif f_zero:
        kind, hint = SpectrumKind.DEGENERATE_DIAGONAL_FAMILY, ComponentsHint.UNKNOWN
    else:
        kind = SpectrumKind.CASSINI_HYPERBOLOID
        theta = rotated_frame(inv)[0]
        c_tol = ZERO_TOL * (1.0 + inv.norm_a_sq ** 2)
        hint = ComponentsHint.CONNECTED if inv.c <= c_tol else ComponentsHint.TWO_COMPONENTS
    return SpectrumClassification(kind, foci, inv.f, inv.e, situation, theta, hint)


def focal_product_sq(inv: QuarticInvariants, x):
    """``(d(x, F+) d(x, F-))^2`` in the centered frame."""
    x = np.asarray(x, dtype=float)
    a = np.asarray(inv.a, dtype=float)
    return np.sum((x - a) ** 2, axis=-1) * np.sum((x + a) ** 2, axis=-1)


def H_eval(inv: QuarticInvariants, x):
    """The quadric part: ``D = focal_product_sq - H`` in the centered frame."""
    x = np.asarray(x, dtype=float)
    x1, x2, x3 = x[..., 0], x[..., 1], x[..., 2]
    a1, a2, a3 = inv.a
    n2, n3 = _abs_sq(inv.alpha2), _abs_sq(inv.alpha3)
    im = (inv.alpha2 * inv.alpha3).imag
    w = _abs_sq(inv.alpha2 ** 2 - inv.alpha3.conjugate() ** 2)
    q1, q2, q3 = x1 ** 2 - a1 ** 2, x2 ** 2 - a2 ** 2, x3 ** 2 - a3 ** 2
    return (-2 * n2 * (q1 - q2 + q3)
            - 2 * n3 * (q1 + q2 - q3)
            + 4 * im * ((x2 - a2) * (x3 + a3) + (x2 + a2) * (x3 - a3))
            - w)


def h_quadratic_matrix(inv: QuarticInvariants) -> np.ndarray:
    """Symmetric ``Q`` with ``H(x) = x^T Q x + e``."""
    n2, n3 = _abs_sq(inv.alpha2), _abs_sq(inv.alpha3)
    im = (inv.alpha2 * inv.alpha3).imag
    return np.array([
        [-2 * (n2 + n3), 0.0, 0.0],
        [0.0, 2 * (n2 - n3), 4 * im],
        [0.0, 4 * im, -2 * (n2 - n3)],
    ])


def rotation_about_x1(theta: float) -> np.ndarray:
    """``R`` with ``x = R y``: x1 fixed, (x2, x3) rotated by ``theta``."""
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[1.0, 0.0, 0.0], [0.0, c, s], [0.0, -s, c]])


def rotated_frame(inv: QuarticInvariants) -> tuple[float, np.ndarray]:
    """Angle ``theta`` in (-pi, 0] that removes the ``y2 y3`` term of ``H``, and its rotation."""
    if inv.f <= ZERO_TOL * (1.0 + inv.alpha_sq):
        raise PreconditionError("rotated_frame requires f > 0")
    diff = _abs_sq(inv.alpha2) - _abs_sq(inv.alpha3)
    im = (inv.alpha2 * inv.alpha3).imag
    theta0 = math.atan2(2 * im / inv.f, diff / inv.f) % (2 * math.pi)
    theta = -theta0 / 2
    return theta, rotation_about_x1(theta)


def g_coefficients(inv: QuarticInvariants, theta: float) -> GCoefficients:
    """Closed-form coefficients of ``H(R(theta) y)``."""
    n2, n3 = _abs_sq(inv.alpha2), _abs_sq(inv.alpha3)
    im = (inv.alpha2 * inv.alpha3).imag
    c2, s2 = math.cos(2 * theta), math.sin(2 * theta)
    diag = 2 * ((n2 - n3) * c2 - 2 * im * s2)
    return GCoefficients(
        y1y1=-2 * (n2 + n3),
        y2y2=diag,
        y3y3=-diag,
        y2y3=4 * ((n2 - n3) * s2 + 2 * im * c2),
        const=inv.e,
    )


def cassini_phase(m: float, r: float) -> CassiniPhase:
    """Shape of ``(d(P, F+) d(P, F-))^2 = r`` for foci at distance ``m`` from the midpoint."""
    if r < 0:
        raise PreconditionError(f"Cassini level must be nonnegative, got {r}")
    if m <= ZERO_TOL:
        return CassiniPhase.POINT if r == 0 else CassiniPhase.SPHERE_LIKE
    if r == 0:
        return CassiniPhase.FOCI_ONLY
    b, m2 = math.sqrt(r), m * m
    if abs(b - m2) <= ZERO_TOL * max(b, m2):
        return CassiniPhase.LEMNISCATE
    return CassiniPhase.TWO_LOOPS if b < m2 else CassiniPhase.ONE_LOOP


def classify_cassini_level(inv: QuarticInvariants, r: float) -> CassiniPhase:
    return cassini_phase(math.sqrt(inv.norm_a_sq), r)
