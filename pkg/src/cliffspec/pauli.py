"""
Pauli-basis algebra for 2x2 Hermitian matrices and the canonical form of a triple.

A Hermitian 2x2 matrix is ``a0*s0 + a1*s1 + a2*s2 + a3*s3`` with real
coefficients. A triple is brought to canonical form by a single unitary that
diagonalizes ``A1`` (larger eigenvalue first) and by splitting off the trace
centers ``(a10, a20, a30)``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .errors import ValidationError

SIGMA0 = np.eye(2, dtype=complex)
SIGMA1 = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA2 = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA3 = np.array([[1, 0], [0, -1]], dtype=complex)
PAULI = (SIGMA0, SIGMA1, SIGMA2, SIGMA3)

HERMITIAN_TOL = 1e-12
PHASE_TOL = 1e-12


class PauliCoeffs(NamedTuple):
    a0: float
    a1: float
    a2: float
    a3: float


def _frozen(a):
    a = np.array(a)
    a.flags.writeable = False
    return a


def as_hermitian(M, name: str = "M") -> np.ndarray:
    """Validate a 2x2 Hermitian matrix and return its symmetrized copy.

    Raises :class:`ValidationError` naming the first offending entry.
    """
    try:
        M = np.asarray(M, dtype=complex)
    except (TypeError, ValueError) as exc:
        raise ValidationError(f"{name}: not a numeric 2x2 matrix ({exc})") from None
    if M.shape != (2, 2):
        raise ValidationError(f"{name}: expected shape (2, 2), got {M.shape}")
    if not np.all(np.isfinite(M)):
        i, j = np.argwhere(~np.isfinite(M))[0]
        raise ValidationError(f"{name}: entry ({i + 1},{j + 1}) is not finite")
    for i in range(2):
        if abs(M[i, i].imag) > HERMITIAN_TOL:
            raise ValidationError(
                f"{name}: entry ({i + 1},{i + 1}) has imaginary part {M[i, i].imag:.3g}; "
                "diagonal must be real")
    if abs(M[0, 1] - np.conj(M[1, 0])) > HERMITIAN_TOL:
        raise ValidationError(
            f"{name}: entry (1,2) = {M[0, 1]} is not the conjugate of entry (2,1) = {M[1, 0]}")
    return (M + M.conj().T) / 2


def pauli_decompose(M) -> PauliCoeffs:
    M = as_hermitian(M)
    return PauliCoeffs(
        float((M[0, 0].real + M[1, 1].real) / 2),
        float(M[1, 0].real),
        float(M[1, 0].imag),
        float((M[0, 0].real - M[1, 1].real) / 2),
    )


def pauli_compose(c) -> np.ndarray:
    a0, a1, a2, a3 = (float(v) for v in c)
    return np.array([[a0 + a3, a1 - 1j * a2],
                     [a1 + 1j * a2, a0 - a3]], dtype=complex)


@dataclass(frozen=True)
class HermitianTriple:
    """Three validated 2x2 Hermitian matrices (stored symmetrized, read-only)."""

    A1: np.ndarray
    A2: np.ndarray
    A3: np.ndarray

    def __post_init__(self):
        for name in ("A1", "A2", "A3"):
            object.__setattr__(self, name, _frozen(as_hermitian(getattr(self, name), name)))

    @property
    def matrices(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        return (self.A1, self.A2, self.A3)

    def conjugated(self, U) -> "HermitianTriple":
        """Return ``(U A1 U*, U A2 U*, U A3 U*)``."""
        U = np.asarray(U, dtype=complex)
        return HermitianTriple(*(U @ A @ U.conj().T for A in self.matrices))

    def shifted(self, y) -> "HermitianTriple":
        """Return ``(A1 + y1 I, A2 + y2 I, A3 + y3 I)``."""
        return HermitianTriple(*(A + float(yj) * SIGMA0 for A, yj in zip(self.matrices, y)))

    @classmethod
    def from_pauli(cls, coeffs) -> "HermitianTriple":
        """Build from a 3x4 array of Pauli coefficients ``a_jk``."""
        return cls(*(pauli_compose(row) for row in np.asarray(coeffs, dtype=float)))


@dataclass(frozen=True)
class CanonicalParams:
    """Canonical data of a triple.

    ``center`` holds the trace parts ``(a10, a20, a30)``, ``a`` the
    ``s3``-coefficients ``(a13, a23, a33)``, ``alpha2 = a22 + i a21`` and
    ``alpha3 = a31 + i a32``. The input triple equals ``U B U*`` where ``B``
    is :meth:`canonical_triple` and ``U`` is ``conjugator``.
    """

    center: np.ndarray
    a: np.ndarray
    alpha2: complex
    alpha3: complex
    conjugator: np.ndarray = field(default_factory=lambda: np.eye(2, dtype=complex))

    def __post_init__(self):
        center = np.asarray(self.center, dtype=float).reshape(3)
        a = np.asarray(self.a, dtype=float).reshape(3)
        alpha2, alpha3 = complex(self.alpha2), complex(self.alpha3)
        U = np.asarray(self.conjugator, dtype=complex).reshape(2, 2)
        values = np.concatenate([center, a, [alpha2.real, alpha2.imag, alpha3.real, alpha3.imag]])
        if not np.all(np.isfinite(values)) or not np.all(np.isfinite(U)):
            raise ValidationError("canonical parameters must be finite")
        if np.abs(U @ U.conj().T - np.eye(2)).max() > 1e-12:
            raise ValidationError("conjugator is not unitary")
        object.__setattr__(self, "center", _frozen(center))
        object.__setattr__(self, "a", _frozen(a))
        object.__setattr__(self, "alpha2", alpha2)
        object.__setattr__(self, "alpha3", alpha3)
        object.__setattr__(self, "conjugator", _frozen(U))

    def pauli_coefficients(self) -> np.ndarray:
        """3x4 array ``a_jk`` of the canonical (conjugated) triple, centers included."""
        a2, a3 = self.alpha2, self.alpha3
        return np.array([
            [self.center[0], 0.0, 0.0, self.a[0]],
            [self.center[1], a2.imag, a2.real, self.a[1]],
            [self.center[2], a3.real, a3.imag, self.a[2]],
        ])

    def canonical_triple(self) -> HermitianTriple:
        return HermitianTriple.from_pauli(self.pauli_coefficients())

    def reconstruct(self) -> HermitianTriple:
        """The triple these parameters were read from (original frame)."""
        return self.canonical_triple().conjugated(self.conjugator)

    def centered(self) -> "CanonicalParams":
        return CanonicalParams(np.zeros(3), self.a, self.alpha2, self.alpha3, self.conjugator)


def _fix_phase(v: np.ndarray) -> np.ndarray:
    for comp in v:
        if abs(comp) > PHASE_TOL:
            return v * (abs(comp) / comp)
    return v


def _diagonalizer(a1: float, a2: float, a3: float) -> tuple[np.ndarray, float]:
    """Unitary U with ``U* (a1 s1 + a2 s2 + a3 s3) U = r s3``, ``r >= 0``."""
    if a1 == 0.0 and a2 == 0.0:
        if a3 >= 0.0:
            return np.eye(2, dtype=complex), a3
        return SIGMA1.copy(), -a3
    r = math.sqrt(a1 * a1 + a2 * a2 + a3 * a3)
    # eigenvector for +r; pick the algebraically stable one of two equivalent forms
    if a3 >= 0.0:
        u = np.array([a3 + r, a1 + 1j * a2])
    else:
        u = np.array([a1 - 1j * a2, r - a3])
    u = _fix_phase(u / np.linalg.norm(u))
    w = _fix_phase(np.array([-np.conj(u[1]), np.conj(u[0])]))
    return np.column_stack([u, w]), r


def canonicalize(t: HermitianTriple) -> CanonicalParams:
    """Conjugate ``t`` so that ``A1`` is diagonal with ``a13 >= 0`` and read off parameters."""
    c1 = pauli_decompose(t.A1)
    U, r = _diagonalizer(c1.a1, c1.a2, c1.a3)
    B2 = pauli_decompose(U.conj().T @ t.A2 @ U)
    B3 = pauli_decompose(U.conj().T @ t.A3 @ U)
    center = [c1.a0, B2.a0, B3.a0]
    return CanonicalParams(
        center=center,
        a=[r, B2.a3, B3.a3],
        alpha2=complex(B2.a2, B2.a1),
        alpha3=complex(B3.a1, B3.a2),
        conjugator=U,
    )


# --- JSON triple format ------------------------------------------------------

_TRIPLE_KEYS = ("A1", "A2", "A3")


def _reject_constant(name):
    raise ValidationError(f"non-finite number {name!r} is not allowed")


def _number(v, where: str) -> float:
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ValidationError(f"{where}: expected a number, got {type(v).__name__}")
    v = float(v)
    if not math.isfinite(v):
        raise ValidationError(f"{where}: number is not finite")
    return v


def triple_from_obj(obj) -> HermitianTriple:
    """Strictly parse the ``{"A1": [[{"re":..,"im":..}, ..], ..], ..}`` object."""
    if not isinstance(obj, dict):
        raise ValidationError("top level must be an object with keys A1, A2, A3")
    keys = set(obj)
    if keys != set(_TRIPLE_KEYS):
        extra = sorted(keys - set(_TRIPLE_KEYS))
        missing = sorted(set(_TRIPLE_KEYS) - keys)
        raise ValidationError(f"bad keys: extra={extra} missing={missing}")
    mats = []
    for name in _TRIPLE_KEYS:
        rows = obj[name]
        if not (isinstance(rows, list) and len(rows) == 2
                and all(isinstance(r, list) and len(r) == 2 for r in rows)):
            raise ValidationError(f"{name}: expected a 2x2 array")
        M = np.empty((2, 2), dtype=complex)
        for i in range(2):
            for j in range(2):
                entry = rows[i][j]
                where = f"{name}[{i}][{j}]"
                if not isinstance(entry, dict) or set(entry) != {"re", "im"}:
                    raise ValidationError(f"{where}: expected an object with exactly keys re, im")
                M[i, j] = complex(_number(entry["re"], where + ".re"),
                                  _number(entry["im"], where + ".im"))
        mats.append(as_hermitian(M, name))
    return HermitianTriple(*mats)


def loads_triple(text: str) -> HermitianTriple:
    """Parse JSON text. ``json.JSONDecodeError`` propagates with line/column intact."""
    return triple_from_obj(json.loads(text, parse_constant=_reject_constant))


def triple_to_obj(t: HermitianTriple) -> dict:
    return {name: [[{"re": float(M[i, j].real), "im": float(M[i, j].imag)} for j in range(2)]
                   for i in range(2)]
            for name, M in zip(_TRIPLE_KEYS, t.matrices)}


def complex_to_obj(z: complex) -> dict:
    return {"re": float(z.real), "im": float(z.imag)}


def params_to_obj(p: CanonicalParams) -> dict:
    return {
        "center": [float(v) for v in p.center],
        "a": [float(v) for v in p.a],
        "alpha2": complex_to_obj(p.alpha2),
        "alpha3": complex_to_obj(p.alpha3),
        "conjugator": [[complex_to_obj(p.conjugator[i, j]) for j in range(2)] for i in range(2)],
    }
